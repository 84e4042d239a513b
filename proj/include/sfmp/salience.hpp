#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "sfmp/matrix.hpp"

namespace sfmp {

// One calibration gradient, same shape as the weight matrix it concerns.
using GradientSample = Matrix;

// Per-weight global salience: the Fisher diagonal estimated as the mean
// of squared gradients over the calibration samples.
struct FisherDiagonal {
    Matrix values;          // non-negative, same shape as the weight
    size_t sample_count = 0;
};

struct BlockSalience {
    size_t block_index = 0;  // block-row-major
    double value = 0.0;      // sum of member salience entries
};

// F[i][j] = (1/N) * sum_n grad_n[i][j]^2. Accumulates in float64,
// emits float32.
FisherDiagonal accumulate_fisher(const std::vector<GradientSample>& samples);

// Row sums and column sums of the salience matrix.
std::pair<Vector, Vector> row_col_salience(const FisherDiagonal& s);

// Sum salience over each m_b x n_b block, block-row-major. Non-divisible
// shapes are rejected unless pad is set, in which case the matrix is
// treated as zero-padded up to the next block multiple.
std::vector<BlockSalience> block_salience(const Matrix& s, size_t m_b, size_t n_b,
                                          bool pad = false);

inline std::vector<BlockSalience> block_salience(const FisherDiagonal& s,
                                                 size_t m_b, size_t n_b,
                                                 bool pad = false) {
    return block_salience(s.values, m_b, n_b, pad);
}

// Closed-form gradients of the toy loss 0.5*||W x - t||^2 with respect to
// W: grad = (W x - t) x^T. Analytic stand-in for model backprop so the
// Fisher path can be tested end to end.
std::vector<GradientSample> toy_linear_gradients(const Matrix& w,
                                                 const std::vector<Vector>& inputs,
                                                 const std::vector<Vector>& targets);

}  // namespace sfmp
