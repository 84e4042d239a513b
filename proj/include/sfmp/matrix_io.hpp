#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sfmp/matrix.hpp"

namespace sfmp {

// Binary matrix file, all integers little-endian:
//   magic "SFMPMAT0" (8B) | rows u64 | cols u64 | rows*cols float32
inline constexpr char kMatrixMagic[8] = {'S', 'F', 'M', 'P', 'M', 'A', 'T', '0'};

void write_matrix(std::ostream& os, const Matrix& m);
Matrix read_matrix(std::istream& is);

void write_matrix_file(const std::string& path, const Matrix& m);
Matrix read_matrix_file(const std::string& path);

// Gradient-sample stream: u64 sample count followed by that many complete
// SFMPMAT0 records back to back.
void write_matrix_stream_file(const std::string& path, const std::vector<Matrix>& ms);
std::vector<Matrix> read_matrix_stream_file(const std::string& path);

// Accepts a single matrix file, a concatenated stream file, or a directory
// of SFMPMAT0 files (loaded in lexicographic name order).
std::vector<Matrix> load_gradient_samples(const std::string& path);

}  // namespace sfmp
