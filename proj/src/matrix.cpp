#include "sfmp/matrix.hpp"

namespace sfmp {

Vector matmul_reference(const Vector& x, const Matrix& w) {
    if (x.len() != w.cols)
        throw ShapeError("matmul_reference: x.len != w.cols");
    Vector out(w.rows);
    for (size_t i = 0; i < w.rows; ++i) {
        const float* wr = w.row(i);
        float acc = 0.0f;
        for (size_t k = 0; k < w.cols; ++k)
            acc += x[k] * wr[k];
        out[i] = acc;
    }
    return out;
}

Matrix transpose(const Matrix& w) {
    Matrix out(w.cols, w.rows);
    for (size_t i = 0; i < w.rows; ++i)
        for (size_t j = 0; j < w.cols; ++j)
            out.at(j, i) = w.at(i, j);
    return out;
}

}  // namespace sfmp
