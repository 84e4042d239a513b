#include "sfmp/matrix_io.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>

namespace sfmp {

static_assert(std::endian::native == std::endian::little,
              "file I/O assumes a little-endian host");

namespace {

void write_raw(std::ostream& os, const void* p, size_t n) {
    os.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
    if (!os) throw FormatError(FormatErrorKind::io, "write failed");
}

void read_raw(std::istream& is, void* p, size_t n, const char* what) {
    is.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
    if (static_cast<size_t>(is.gcount()) != n)
        throw FormatError(FormatErrorKind::truncated,
                          std::string("truncated while reading ") + what);
}

void write_u64(std::ostream& os, uint64_t v) { write_raw(os, &v, 8); }

uint64_t read_u64(std::istream& is, const char* what) {
    uint64_t v = 0;
    read_raw(is, &v, 8, what);
    return v;
}

}  // namespace

void write_matrix(std::ostream& os, const Matrix& m) {
    write_raw(os, kMatrixMagic, 8);
    write_u64(os, m.rows);
    write_u64(os, m.cols);
    write_raw(os, m.data.data(), m.data.size() * sizeof(float));
}

Matrix read_matrix(std::istream& is) {
    char magic[8];
    read_raw(is, magic, 8, "matrix magic");
    if (std::memcmp(magic, kMatrixMagic, 8) != 0)
        throw FormatError(FormatErrorKind::bad_magic, "not an SFMPMAT0 file");
    uint64_t rows = read_u64(is, "matrix rows");
    uint64_t cols = read_u64(is, "matrix cols");
    if (rows < 1 || cols < 1 || rows > (1ull << 32) || cols > (1ull << 32))
        throw FormatError(FormatErrorKind::invariant, "implausible matrix shape");
    Matrix m(static_cast<size_t>(rows), static_cast<size_t>(cols));
    read_raw(is, m.data.data(), m.data.size() * sizeof(float), "matrix data");
    return m;
}

void write_matrix_file(const std::string& path, const Matrix& m) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw FormatError(FormatErrorKind::io, "cannot open for write: " + path);
    write_matrix(os, m);
}

Matrix read_matrix_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw FormatError(FormatErrorKind::io, "cannot open: " + path);
    return read_matrix(is);
}

void write_matrix_stream_file(const std::string& path, const std::vector<Matrix>& ms) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw FormatError(FormatErrorKind::io, "cannot open for write: " + path);
    write_u64(os, ms.size());
    for (const Matrix& m : ms) write_matrix(os, m);
}

std::vector<Matrix> read_matrix_stream_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw FormatError(FormatErrorKind::io, "cannot open: " + path);
    uint64_t count = read_u64(is, "stream count");
    if (count > (1ull << 24))
        throw FormatError(FormatErrorKind::invariant, "implausible sample count");
    std::vector<Matrix> out;
    out.reserve(static_cast<size_t>(count));
    for (uint64_t i = 0; i < count; ++i) out.push_back(read_matrix(is));
    return out;
}

std::vector<Matrix> load_gradient_samples(const std::string& path) {
    namespace fs = std::filesystem;
    if (fs::is_directory(path)) {
        std::vector<std::string> names;
        for (const auto& e : fs::directory_iterator(path))
            if (e.is_regular_file()) names.push_back(e.path().string());
        std::sort(names.begin(), names.end());
        std::vector<Matrix> out;
        out.reserve(names.size());
        for (const auto& n : names) out.push_back(read_matrix_file(n));
        return out;
    }
    // Sniff: a single-matrix file starts with the magic, a stream with a count.
    std::ifstream is(path, std::ios::binary);
    if (!is) throw FormatError(FormatErrorKind::io, "cannot open: " + path);
    char head[8] = {};
    is.read(head, 8);
    if (static_cast<size_t>(is.gcount()) != 8)
        throw FormatError(FormatErrorKind::truncated, "gradient file shorter than 8 bytes");
    if (std::memcmp(head, kMatrixMagic, 8) == 0) {
        return {read_matrix_file(path)};
    }
    return read_matrix_stream_file(path);
}

}  // namespace sfmp
