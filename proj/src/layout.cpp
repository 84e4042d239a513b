#include "sfmp/layout.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "sfmp/fp16.hpp"

namespace sfmp {

std::vector<std::vector<uint8_t>> decompose_bitplanes(std::span<const uint8_t> codes,
                                                      int bits) {
    if (bits < 1 || bits > 8)
        throw ConfigError("decompose_bitplanes: bits must be in [1,8]");
    const unsigned limit = 1u << bits;
    for (uint8_t c : codes)
        if (c >= limit)
            throw ShapeError("decompose_bitplanes: code out of range for bit-width");

    std::vector<std::vector<uint8_t>> planes(static_cast<size_t>(bits));
    for (int i = 0; i < bits; ++i) {
        planes[i].resize(codes.size());
        for (size_t k = 0; k < codes.size(); ++k)
            planes[i][k] = static_cast<uint8_t>((codes[k] >> i) & 1u);
    }
    return planes;
}

PackedBlock pack_block(std::span<const QuantGroup> groups, size_t n_b) {
    if (groups.empty()) throw ShapeError("pack_block: no groups");
    if (n_b % 8 != 0) throw ConfigError("pack_block: n_b must be a multiple of 8");

    const int bits = groups.front().bits;
    const size_t m_b = groups.size();
    for (const QuantGroup& g : groups) {
        if (g.bits != bits)
            throw ShapeError("pack_block: groups disagree on bit-width");
        if (g.codes.size() != n_b)
            throw ShapeError("pack_block: group length != n_b");
    }

    PackedBlock block;
    block.bits = bits;
    block.scales.resize(m_b);
    block.zeros.resize(m_b);
    block.planes.assign(static_cast<size_t>(bits),
                        std::vector<uint8_t>(m_b * n_b / 8, 0));

    const size_t row_bytes = n_b / 8;
    for (size_t r = 0; r < m_b; ++r) {
        const QuantGroup& g = groups[r];
        block.scales[r] = fp16_from_float(g.scale);
        block.zeros[r] = fp16_from_float(g.zero);
        for (size_t k = 0; k < n_b; ++k) {
            const uint8_t code = g.codes[k];
            if (code >= (1u << bits))
                throw ShapeError("pack_block: code out of range");
            for (int i = 0; i < bits; ++i)
                if ((code >> i) & 1u)
                    block.planes[i][r * row_bytes + k / 8] |=
                        static_cast<uint8_t>(1u << (k % 8));
        }
    }
    return block;
}

std::vector<QuantGroup> unpack_block(const PackedBlock& block, size_t m_b, size_t n_b) {
    if (block.planes.size() != static_cast<size_t>(block.bits))
        throw FormatError(FormatErrorKind::invariant, "unpack_block: plane count != bits");
    const size_t row_bytes = n_b / 8;
    std::vector<QuantGroup> groups(m_b);
    for (size_t r = 0; r < m_b; ++r) {
        QuantGroup& g = groups[r];
        g.bits = block.bits;
        g.scale = fp16_to_float(block.scales[r]);
        g.zero = fp16_to_float(block.zeros[r]);
        g.codes.assign(n_b, 0);
        for (int i = 0; i < block.bits; ++i) {
            const uint8_t* plane_row = block.planes[i].data() + r * row_bytes;
            for (size_t k = 0; k < n_b; ++k)
                g.codes[k] |= static_cast<uint8_t>(((plane_row[k / 8] >> (k % 8)) & 1u)
                                                   << i);
        }
    }
    return groups;
}

void PackedModel::validate() const {
    auto fail = [](const std::string& msg) {
        throw FormatError(FormatErrorKind::invariant, "packed model: " + msg);
    };
    if (rows < 1 || cols < 1) fail("empty shape");
    if (block_rows < 1 || group_size < 1) fail("empty block dims");
    if (group_size % 8 != 0) fail("group size not a multiple of 8");
    if (rows % block_rows != 0 || cols % group_size != 0)
        fail("shape not divisible by block dims");
    if (floor_bits < 1 || ceil_bits < floor_bits || ceil_bits - floor_bits > 1 ||
        ceil_bits > 8)
        fail("bad candidate bit-widths");
    const size_t k = block_grid_rows() * block_grid_cols();
    if (block_bits.size() != k || blocks.size() != k)
        fail("block count does not cover the shape");
    if (reorder_has_row(reorder.mode) && reorder.row_perm.size() != rows)
        fail("row permutation length != rows");
    if (!reorder_has_row(reorder.mode) && reorder.row_perm.size() != 0)
        fail("row permutation present but mode excludes it");
    if (reorder_has_col(reorder.mode) && reorder.col_perm.size() != cols)
        fail("col permutation length != cols");
    if (!reorder_has_col(reorder.mode) && reorder.col_perm.size() != 0)
        fail("col permutation present but mode excludes it");

    const size_t plane_bytes = block_rows * group_size / 8;
    for (size_t i = 0; i < blocks.size(); ++i) {
        const PackedBlock& b = blocks[i];
        if (b.bits != block_bits[i]) fail("block bits disagree with bit map");
        if (b.bits != floor_bits && b.bits != ceil_bits)
            fail("block bit-width outside candidate set");
        if (b.scales.size() != block_rows || b.zeros.size() != block_rows)
            fail("scale/zero count != m_b");
        if (b.planes.size() != static_cast<size_t>(b.bits)) fail("plane count != bits");
        for (const auto& p : b.planes)
            if (p.size() != plane_bytes) fail("plane byte count != m_b*n_b/8");
    }
}

namespace {

struct ByteWriter {
    std::vector<uint8_t> out;

    void raw(const void* p, size_t n) {
        const auto* b = static_cast<const uint8_t*>(p);
        out.insert(out.end(), b, b + n);
    }
    void u8(uint8_t v) { out.push_back(v); }
    void u16(uint16_t v) { raw(&v, 2); }
    void u32(uint32_t v) { raw(&v, 4); }
    void u64(uint64_t v) { raw(&v, 8); }
};

struct ByteReader {
    std::span<const uint8_t> in;
    size_t pos = 0;

    void raw(void* p, size_t n, const char* what) {
        if (pos + n > in.size())
            throw FormatError(FormatErrorKind::truncated,
                              std::string("truncated while reading ") + what);
        std::memcpy(p, in.data() + pos, n);
        pos += n;
    }
    uint8_t u8(const char* what) {
        uint8_t v;
        raw(&v, 1, what);
        return v;
    }
    uint16_t u16(const char* what) {
        uint16_t v;
        raw(&v, 2, what);
        return v;
    }
    uint32_t u32(const char* what) {
        uint32_t v;
        raw(&v, 4, what);
        return v;
    }
    uint64_t u64(const char* what) {
        uint64_t v;
        raw(&v, 8, what);
        return v;
    }
};

static_assert(std::endian::native == std::endian::little,
              "packed format assumes a little-endian host");

}  // namespace

std::vector<uint8_t> serialize(const PackedModel& model) {
    model.validate();

    ByteWriter w;
    w.raw(kPackedMagic, 8);
    w.u16(model.version);
    w.u64(model.rows);
    w.u64(model.cols);
    w.u32(static_cast<uint32_t>(model.block_rows));
    w.u32(static_cast<uint32_t>(model.group_size));
    w.u8(static_cast<uint8_t>(model.floor_bits));
    w.u8(static_cast<uint8_t>(model.ceil_bits));
    w.u8(static_cast<uint8_t>(model.reorder.mode));
    w.u8(0);  // reserved

    if (reorder_has_row(model.reorder.mode))
        w.raw(model.reorder.row_perm.forward.data(), model.rows * 4);
    if (reorder_has_col(model.reorder.mode))
        w.raw(model.reorder.col_perm.forward.data(), model.cols * 4);

    w.u64(model.block_count());
    w.raw(model.block_bits.data(), model.block_bits.size());

    for (const PackedBlock& b : model.blocks) {
        w.raw(b.scales.data(), b.scales.size() * 2);
        w.raw(b.zeros.data(), b.zeros.size() * 2);
        for (const auto& plane : b.planes) w.raw(plane.data(), plane.size());
    }
    return std::move(w.out);
}

PackedModel deserialize(std::span<const uint8_t> bytes) {
    ByteReader r{bytes};

    char magic[8];
    r.raw(magic, 8, "magic");
    if (std::memcmp(magic, kPackedMagic, 8) != 0)
        throw FormatError(FormatErrorKind::bad_magic, "not an SFMPPKD1 file");

    PackedModel m;
    m.version = r.u16("version");
    if (m.version != kPackedVersion)
        throw FormatError(FormatErrorKind::bad_version,
                          "unsupported packed model version " + std::to_string(m.version));
    m.rows = static_cast<size_t>(r.u64("rows"));
    m.cols = static_cast<size_t>(r.u64("cols"));
    m.block_rows = r.u32("m_b");
    m.group_size = r.u32("n_b");
    m.floor_bits = r.u8("floor_bits");
    m.ceil_bits = r.u8("ceil_bits");
    const uint8_t mode = r.u8("reorder mode");
    r.u8("reserved");
    if (mode > 3)
        throw FormatError(FormatErrorKind::invariant, "unknown reorder mode byte");
    m.reorder.mode = static_cast<ReorderMode>(mode);

    if (m.rows < 1 || m.cols < 1 || m.block_rows < 1 || m.group_size < 1 ||
        m.rows % m.block_rows != 0 || m.cols % m.group_size != 0 ||
        m.group_size % 8 != 0)
        throw FormatError(FormatErrorKind::invariant, "bad shape/block header fields");

    auto read_perm = [&](size_t n, const char* what) {
        std::vector<uint32_t> fwd(n);
        r.raw(fwd.data(), n * 4, what);
        try {
            return Permutation(std::move(fwd));
        } catch (const ShapeError& e) {
            throw FormatError(FormatErrorKind::invariant, e.what());
        }
    };
    if (reorder_has_row(m.reorder.mode))
        m.reorder.row_perm = read_perm(m.rows, "row permutation");
    if (reorder_has_col(m.reorder.mode))
        m.reorder.col_perm = read_perm(m.cols, "col permutation");

    const uint64_t k = r.u64("block count");
    const size_t expected = (m.rows / m.block_rows) * (m.cols / m.group_size);
    if (k != expected)
        throw FormatError(FormatErrorKind::invariant,
                          "block count does not match shape/block dims");
    m.block_bits.resize(static_cast<size_t>(k));
    r.raw(m.block_bits.data(), m.block_bits.size(), "block bit map");

    const size_t plane_bytes = m.block_rows * m.group_size / 8;
    m.blocks.resize(static_cast<size_t>(k));
    for (size_t i = 0; i < m.blocks.size(); ++i) {
        PackedBlock& b = m.blocks[i];
        b.bits = m.block_bits[i];
        b.scales.resize(m.block_rows);
        b.zeros.resize(m.block_rows);
        r.raw(b.scales.data(), b.scales.size() * 2, "block scales");
        r.raw(b.zeros.data(), b.zeros.size() * 2, "block zeros");
        b.planes.assign(static_cast<size_t>(b.bits), std::vector<uint8_t>(plane_bytes));
        for (auto& plane : b.planes) r.raw(plane.data(), plane.size(), "plane data");
    }
    if (r.pos != bytes.size())
        throw FormatError(FormatErrorKind::invariant, "trailing bytes after model");

    m.validate();
    return m;
}

void write_packed_file(const std::string& path, const PackedModel& model) {
    const std::vector<uint8_t> bytes = serialize(model);
    std::ofstream os(path, std::ios::binary);
    if (!os) throw FormatError(FormatErrorKind::io, "cannot open for write: " + path);
    os.write(reinterpret_cast<const char*>(bytes.data()),
             static_cast<std::streamsize>(bytes.size()));
    if (!os) throw FormatError(FormatErrorKind::io, "write failed: " + path);
}

PackedModel read_packed_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary | std::ios::ate);
    if (!is) throw FormatError(FormatErrorKind::io, "cannot open: " + path);
    const std::streamsize size = is.tellg();
    is.seekg(0);
    std::vector<uint8_t> bytes(static_cast<size_t>(size));
    is.read(reinterpret_cast<char*>(bytes.data()), size);
    if (!is) throw FormatError(FormatErrorKind::io, "read failed: " + path);
    return deserialize(bytes);
}

std::vector<size_t> compute_block_offsets(const PackedModel& model) {
    size_t offset = 8 + 2 + 8 + 8 + 4 + 4 + 4;  // magic..reserved
    if (reorder_has_row(model.reorder.mode)) offset += model.rows * 4;
    if (reorder_has_col(model.reorder.mode)) offset += model.cols * 4;
    offset += 8 + model.block_count();  // K + bit map

    const size_t plane_bytes = model.block_rows * model.group_size / 8;
    std::vector<size_t> offsets(model.block_count());
    for (size_t i = 0; i < model.block_count(); ++i) {
        offsets[i] = offset;
        offset += 4 * model.block_rows + model.block_bits[i] * plane_bytes;
    }
    return offsets;
}

Matrix dequantize_model(const PackedModel& model) {
    Matrix reordered(model.rows, model.cols);
    const size_t grid_cols = model.block_grid_cols();
    for (size_t k = 0; k < model.block_count(); ++k) {
        const size_t br = k / grid_cols;
        const size_t bc = k % grid_cols;
        const std::vector<QuantGroup> groups =
            unpack_block(model.blocks[k], model.block_rows, model.group_size);
        for (size_t r = 0; r < model.block_rows; ++r) {
            const std::vector<float> vals = dequantize_group(groups[r]);
            float* dst = reordered.row(br * model.block_rows + r) +
                         bc * model.group_size;
            std::copy(vals.begin(), vals.end(), dst);
        }
    }
    return apply_reorder_inverse(reordered, model.reorder);
}

}  // namespace sfmp
