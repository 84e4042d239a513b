#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "sfmp/salience.hpp"

namespace sfmp {

// The fractional-bit decision for one budget: candidate widths, the high
// fraction alpha and the block geometry the budget was computed against.
struct BitPlan {
    double target_bpw = 0.0;  // total stored bits per weight (codes + metadata)
    double effective_bits = 0.0;  // target minus metadata overhead
    int floor_bits = 0;
    int ceil_bits = 0;
    double alpha = 0.0;  // fraction of blocks at ceil_bits, in [0,1)
    size_t group_size = 0;   // n_b
    size_t block_rows = 0;   // m_b
    int scale_bits = 16;
    int zero_bits = 16;
};

struct CandidateBits {
    int floor_bits;
    int ceil_bits;
    double alpha;
};

// b -> (floor(b), ceil(b), b - floor(b)); integral b collapses both
// candidates and alpha to zero.
CandidateBits candidate_bits(double effective_bits);

// Effective weight bits = target BPW minus per-weight metadata overhead
// (scale_bits + zero_bits)/group_size.
double effective_weight_bits(double target_bpw, size_t group_size,
                             int scale_bits, int zero_bits);

// Convenience: budget arithmetic + candidate selection in one step.
BitPlan make_bit_plan(double target_bpw, size_t group_size, size_t block_rows,
                      int scale_bits = 16, int zero_bits = 16);

// Number of blocks promoted to ceil_bits: round-half-up of alpha*K.
size_t high_block_count(double alpha, size_t block_count);

struct QuantileResult {
    double threshold = std::numeric_limits<double>::infinity();
    std::vector<size_t> selected;     // indices of the top round(alpha*K) blocks
    uint64_t sort_comparisons = 0;    // instrumentation for the single-pass bound
};

// Rank-based alpha-quantile selection: the round(alpha*K) highest-salience
// entries win; ties at the cut break toward the lower index. Membership is
// decided by rank, never by comparing against the returned threshold.
QuantileResult quantile_threshold(const std::vector<double>& block_saliences,
                                  double alpha);

// Per-block bit assignment induced by a plan over one matrix.
struct BlockBitMap {
    std::vector<uint8_t> bits;  // block-row-major, each floor_bits or ceil_bits
    double threshold = std::numeric_limits<double>::infinity();
    uint64_t sort_comparisons = 0;
};

BlockBitMap allocate_block_bits(const BitPlan& plan,
                                const std::vector<BlockSalience>& block_saliences);

struct BpwReport {
    uint64_t weight_bits = 0;
    uint64_t metadata_bits = 0;
    uint64_t weight_count = 0;
    double achieved_bpw = 0.0;
    size_t blocks_total = 0;
    size_t blocks_high = 0;
    bool low_bit_warning = false;  // floor_bits == 1
};

// Exact storage accounting: weight bits summed per block, one scale and one
// zero per row-group of length n_b.
BpwReport bpw_report(const BlockBitMap& bitmap, const BitPlan& plan,
                     size_t rows, size_t cols);

}  // namespace sfmp
