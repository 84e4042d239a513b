#include "sfmp/salience.hpp"

#include <algorithm>

namespace sfmp {

FisherDiagonal accumulate_fisher(const std::vector<GradientSample>& samples) {
    if (samples.empty())
        throw ShapeError("accumulate_fisher: need at least one gradient sample");
    const Matrix& first = samples.front();
    for (const Matrix& g : samples)
        if (!g.same_shape(first))
            throw ShapeError("accumulate_fisher: gradient samples differ in shape");

    std::vector<double> acc(first.data.size(), 0.0);
    for (const Matrix& g : samples)
        for (size_t i = 0; i < acc.size(); ++i) {
            double v = g.data[i];
            acc[i] += v * v;
        }

    FisherDiagonal f;
    f.values = Matrix(first.rows, first.cols);
    f.sample_count = samples.size();
    const double inv_n = 1.0 / static_cast<double>(samples.size());
    for (size_t i = 0; i < acc.size(); ++i)
        f.values.data[i] = static_cast<float>(acc[i] * inv_n);
    return f;
}

std::pair<Vector, Vector> row_col_salience(const FisherDiagonal& s) {
    const Matrix& m = s.values;
    Vector rows(m.rows);
    Vector cols(m.cols);
    for (size_t i = 0; i < m.rows; ++i) {
        const float* r = m.row(i);
        double rsum = 0.0;
        for (size_t j = 0; j < m.cols; ++j) {
            rsum += r[j];
            cols[j] += r[j];
        }
        rows[i] = static_cast<float>(rsum);
    }
    return {std::move(rows), std::move(cols)};
}

std::vector<BlockSalience> block_salience(const Matrix& s, size_t m_b, size_t n_b,
                                          bool pad) {
    if (m_b < 1 || n_b < 1)
        throw ConfigError("block_salience: block dims must be >= 1");
    if (!pad && (s.rows % m_b != 0 || s.cols % n_b != 0))
        throw ShapeError("block_salience: shape not divisible by block dims (pad disabled)");

    const size_t block_rows = (s.rows + m_b - 1) / m_b;
    const size_t block_cols = (s.cols + n_b - 1) / n_b;

    std::vector<BlockSalience> out(block_rows * block_cols);
    for (size_t br = 0; br < block_rows; ++br) {
        const size_t r0 = br * m_b;
        const size_t r1 = std::min(r0 + m_b, s.rows);
        for (size_t bc = 0; bc < block_cols; ++bc) {
            const size_t c0 = bc * n_b;
            const size_t c1 = std::min(c0 + n_b, s.cols);
            double sum = 0.0;
            for (size_t i = r0; i < r1; ++i) {
                const float* row = s.row(i);
                for (size_t j = c0; j < c1; ++j) sum += row[j];
            }
            const size_t k = br * block_cols + bc;
            out[k].block_index = k;
            out[k].value = sum;
        }
    }
    return out;
}

std::vector<GradientSample> toy_linear_gradients(const Matrix& w,
                                                 const std::vector<Vector>& inputs,
                                                 const std::vector<Vector>& targets) {
    if (inputs.size() != targets.size())
        throw ShapeError("toy_linear_gradients: inputs/targets count mismatch");
    std::vector<GradientSample> grads;
    grads.reserve(inputs.size());
    for (size_t n = 0; n < inputs.size(); ++n) {
        const Vector& x = inputs[n];
        const Vector& t = targets[n];
        if (x.len() != w.cols || t.len() != w.rows)
            throw ShapeError("toy_linear_gradients: sample shape mismatch");
        Vector residual = matmul_reference(x, w);
        for (size_t i = 0; i < residual.len(); ++i) residual[i] -= t[i];
        Matrix g(w.rows, w.cols);
        for (size_t i = 0; i < w.rows; ++i) {
            float* gr = g.row(i);
            const float ri = residual[i];
            for (size_t j = 0; j < w.cols; ++j) gr[j] = ri * x[j];
        }
        grads.push_back(std::move(g));
    }
    return grads;
}

}  // namespace sfmp
