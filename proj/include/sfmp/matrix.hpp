#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sfmp/errors.hpp"

namespace sfmp {

// Dense row-major float32 matrix. Carrier for weights, salience,
// activations and gradients throughout the engine.
struct Matrix {
    size_t rows = 0;
    size_t cols = 0;
    std::vector<float> data;  // rows * cols, row-major

    Matrix() = default;
    Matrix(size_t r, size_t c) : rows(r), cols(c), data(r * c, 0.0f) {
        if (r < 1 || c < 1) throw ShapeError("matrix dimensions must be >= 1");
    }
    Matrix(size_t r, size_t c, std::vector<float> d)
        : rows(r), cols(c), data(std::move(d)) {
        if (r < 1 || c < 1) throw ShapeError("matrix dimensions must be >= 1");
        if (data.size() != r * c)
            throw ShapeError("matrix data length does not match rows*cols");
    }

    float& at(size_t i, size_t j) { return data[i * cols + j]; }
    float at(size_t i, size_t j) const { return data[i * cols + j]; }

    const float* row(size_t i) const { return data.data() + i * cols; }
    float* row(size_t i) { return data.data() + i * cols; }

    bool same_shape(const Matrix& o) const {
        return rows == o.rows && cols == o.cols;
    }
};

struct Vector {
    std::vector<float> data;

    Vector() = default;
    explicit Vector(size_t n) : data(n, 0.0f) {}
    explicit Vector(std::vector<float> d) : data(std::move(d)) {}

    size_t len() const { return data.size(); }
    float& operator[](size_t i) { return data[i]; }
    float operator[](size_t i) const { return data[i]; }
};

// out[i] = sum_k x[k] * w[i][k], float32 accumulation in ascending k.
// This is the reference GEMV every quantized path is validated against.
Vector matmul_reference(const Vector& x, const Matrix& w);

Matrix transpose(const Matrix& w);

}  // namespace sfmp
