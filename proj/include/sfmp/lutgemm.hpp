#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "sfmp/layout.hpp"
#include "sfmp/matrix.hpp"

namespace sfmp {

// Per-group table of signed dot products against all 2^8 sign patterns,
// mirror-compressed: only the 128 patterns with the high bit set are
// stored; the other half is the exact negation. Pattern bit k corresponds
// to activation k of the group, bit value 1 meaning sign +1.
struct LookupTable {
    float entries[128];

    // lookup(p) = sum_k (2*bit_k(p)-1) * x_k, served from the stored half
    // or its mirrored negation (sign-bit flip, so negation stays exact).
    float lookup(uint8_t p) const {
        const uint32_t neg = ((static_cast<uint32_t>(p) >> 7) ^ 1u);
        const uint32_t idx = (static_cast<uint32_t>(p) ^ (0x7Fu * neg)) & 0x7Fu;
        const uint32_t v = std::bit_cast<uint32_t>(entries[idx]) ^ (neg << 31);
        return std::bit_cast<float>(v);
    }
};

inline constexpr size_t kLutGroupSize = 8;

// One table per consecutive 8-activation group. x.len must divide by 8.
std::vector<LookupTable> build_luts(const Vector& x);

// Activation-dependent state reused across all blocks of one GEMV.
struct GemvWorkspace {
    std::vector<LookupTable> luts;
    std::vector<float> x;  // the (already reordered) activation
    uint64_t lookups = 0;  // instrumented table-access count

    explicit GemvWorkspace(const Vector& x_reordered);
};

// Contribution of one packed block to its m_b output rows.
std::vector<float> gemv_block(GemvWorkspace& ws, const PackedBlock& block,
                              size_t block_col_offset, size_t m_b, size_t n_b);

struct GemvStats {
    uint64_t lookups = 0;
    double lut_build_us = 0.0;
    double accumulate_us = 0.0;
    double reorder_us = 0.0;
};

// Mixed-precision GEMV through the unified LUT path: activation reorder in,
// one LUT build, every block accumulated at its own bit-width, output
// unpermute. Matches matmul_reference(x, dequantize_model(model)).
Vector gemv(const PackedModel& model, const Vector& x, GemvStats* stats = nullptr);

struct BenchResult {
    size_t rows = 0;
    size_t cols = 0;
    size_t reps = 0;
    double median_us = 0.0;
    double p10_us = 0.0;  // NaN when reps == 1
    double p90_us = 0.0;  // NaN when reps == 1
    double lut_build_us = 0.0;
    double reorder_us = 0.0;
    uint64_t lookups = 0;  // per GEMV
};

BenchResult bench_gemv(const PackedModel& model, const Vector& x, size_t reps);

}  // namespace sfmp
