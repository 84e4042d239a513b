#include "sfmp/reorder.hpp"

#include <algorithm>
#include <numeric>

#include "sfmp/salience.hpp"

namespace sfmp {

Permutation::Permutation(std::vector<uint32_t> fwd) : forward(std::move(fwd)) {
    std::vector<bool> seen(forward.size(), false);
    for (uint32_t idx : forward) {
        if (idx >= forward.size() || seen[idx])
            throw ShapeError("permutation is not a bijection on 0..n-1");
        seen[idx] = true;
    }
}

Permutation Permutation::identity(size_t n) {
    Permutation p;
    p.forward.resize(n);
    std::iota(p.forward.begin(), p.forward.end(), 0u);
    return p;
}

bool Permutation::is_identity() const {
    for (size_t i = 0; i < forward.size(); ++i)
        if (forward[i] != i) return false;
    return true;
}

Permutation Permutation::inverse() const {
    Permutation inv;
    inv.forward.resize(forward.size());
    for (size_t i = 0; i < forward.size(); ++i)
        inv.forward[forward[i]] = static_cast<uint32_t>(i);
    return inv;
}

Permutation argsort_desc(const Vector& v) {
    std::vector<uint32_t> idx(v.len());
    std::iota(idx.begin(), idx.end(), 0u);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](uint32_t a, uint32_t b) { return v[a] > v[b]; });
    Permutation p;
    p.forward = std::move(idx);
    return p;
}

ReorderSpec make_reorder_spec(const Matrix& salience, ReorderMode mode) {
    ReorderSpec spec;
    spec.mode = mode;
    if (mode == ReorderMode::none) return spec;

    FisherDiagonal s;
    s.values = salience;
    s.sample_count = 1;
    auto [row_sums, col_sums] = row_col_salience(s);
    if (reorder_has_row(mode)) spec.row_perm = argsort_desc(row_sums);
    if (reorder_has_col(mode)) spec.col_perm = argsort_desc(col_sums);
    return spec;
}

namespace {

void check_spec(const Matrix& w, const ReorderSpec& spec) {
    if (reorder_has_row(spec.mode) && spec.row_perm.size() != w.rows)
        throw ShapeError("reorder: row permutation length != rows");
    if (reorder_has_col(spec.mode) && spec.col_perm.size() != w.cols)
        throw ShapeError("reorder: col permutation length != cols");
}

}  // namespace

Matrix apply_reorder(const Matrix& w, const ReorderSpec& spec) {
    check_spec(w, spec);
    const bool has_row = reorder_has_row(spec.mode);
    const bool has_col = reorder_has_col(spec.mode);
    if (!has_row && !has_col) return w;

    Matrix out(w.rows, w.cols);
    for (size_t i = 0; i < w.rows; ++i) {
        const float* src = w.row(has_row ? spec.row_perm.forward[i] : i);
        float* dst = out.row(i);
        if (has_col) {
            for (size_t j = 0; j < w.cols; ++j)
                dst[j] = src[spec.col_perm.forward[j]];
        } else {
            std::copy(src, src + w.cols, dst);
        }
    }
    return out;
}

Matrix apply_reorder_inverse(const Matrix& w, const ReorderSpec& spec) {
    ReorderSpec inv;
    inv.mode = spec.mode;
    if (reorder_has_row(spec.mode)) inv.row_perm = spec.row_perm.inverse();
    if (reorder_has_col(spec.mode)) inv.col_perm = spec.col_perm.inverse();
    return apply_reorder(w, inv);
}

Vector reorder_activation_in(const Vector& x, const ReorderSpec& spec) {
    if (!reorder_has_col(spec.mode)) return x;
    if (spec.col_perm.size() != x.len())
        throw ShapeError("reorder_activation_in: x.len != col permutation length");
    Vector out(x.len());
    for (size_t j = 0; j < x.len(); ++j)
        out[j] = x[spec.col_perm.forward[j]];
    return out;
}

Vector reorder_activation_out(const Vector& y, const ReorderSpec& spec) {
    if (!reorder_has_row(spec.mode)) return y;
    if (spec.row_perm.size() != y.len())
        throw ShapeError("reorder_activation_out: y.len != row permutation length");
    Vector out(y.len());
    for (size_t i = 0; i < y.len(); ++i)
        out[spec.row_perm.forward[i]] = y[i];
    return out;
}

}  // namespace sfmp
