#pragma once

#include <cstdint>
#include <vector>

#include "sfmp/matrix.hpp"

namespace sfmp {

// Index-array permutation: forward[i] holds the source index that moves to
// position i. Applied as a gather, never materialized as a dense matrix.
struct Permutation {
    std::vector<uint32_t> forward;

    Permutation() = default;
    explicit Permutation(std::vector<uint32_t> fwd);

    static Permutation identity(size_t n);

    size_t size() const { return forward.size(); }
    bool is_identity() const;
    Permutation inverse() const;
};

enum class ReorderMode : uint8_t {
    none = 0,
    row = 1,
    col = 2,
    rowcol = 3,
};

inline bool reorder_has_row(ReorderMode m) {
    return m == ReorderMode::row || m == ReorderMode::rowcol;
}
inline bool reorder_has_col(ReorderMode m) {
    return m == ReorderMode::col || m == ReorderMode::rowcol;
}

// Row/column permutations sorting salience descending; perms are present
// iff the mode requires them.
struct ReorderSpec {
    ReorderMode mode = ReorderMode::none;
    Permutation row_perm;
    Permutation col_perm;

    static ReorderSpec none_spec() { return ReorderSpec{}; }
};

// Stable descending argsort; equal values keep ascending original order.
Permutation argsort_desc(const Vector& v);

// Build the spec for one salience matrix: rows sorted by row-sum salience,
// columns by column-sum salience, restricted to what the mode asks for.
ReorderSpec make_reorder_spec(const Matrix& salience, ReorderMode mode);

// out[i][j] = w[row_perm[i]][col_perm[j]]
Matrix apply_reorder(const Matrix& w, const ReorderSpec& spec);

// Inverse-permuted application (recovers the original matrix bit-exactly).
Matrix apply_reorder_inverse(const Matrix& w, const ReorderSpec& spec);

// Activation-side counterpart of the weight reorder: gather on the way in,
// scatter back to original row order on the way out.
Vector reorder_activation_in(const Vector& x, const ReorderSpec& spec);
Vector reorder_activation_out(const Vector& y, const ReorderSpec& spec);

}  // namespace sfmp
