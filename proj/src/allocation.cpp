#include "sfmp/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sfmp {

CandidateBits candidate_bits(double effective_bits) {
    if (!(effective_bits >= 1.0))
        throw ConfigError("candidate_bits: effective bits must be >= 1");
    const int floor_b = static_cast<int>(std::floor(effective_bits));
    const double alpha = effective_bits - floor_b;
    const int ceil_b = (alpha == 0.0) ? floor_b : floor_b + 1;
    return {floor_b, ceil_b, alpha};
}

double effective_weight_bits(double target_bpw, size_t group_size,
                             int scale_bits, int zero_bits) {
    if (group_size < 1)
        throw ConfigError("effective_weight_bits: group size must be >= 1");
    if (scale_bits < 0 || zero_bits < 0)
        throw ConfigError("effective_weight_bits: negative metadata widths");
    const double overhead =
        static_cast<double>(scale_bits + zero_bits) / static_cast<double>(group_size);
    if (!(target_bpw > overhead))
        throw ConfigError("effective_weight_bits: budget does not exceed metadata overhead");
    return target_bpw - overhead;
}

BitPlan make_bit_plan(double target_bpw, size_t group_size, size_t block_rows,
                      int scale_bits, int zero_bits) {
    if (block_rows < 1) throw ConfigError("make_bit_plan: block_rows must be >= 1");
    BitPlan plan;
    plan.target_bpw = target_bpw;
    plan.group_size = group_size;
    plan.block_rows = block_rows;
    plan.scale_bits = scale_bits;
    plan.zero_bits = zero_bits;
    plan.effective_bits =
        effective_weight_bits(target_bpw, group_size, scale_bits, zero_bits);
    CandidateBits cb = candidate_bits(plan.effective_bits);
    plan.floor_bits = cb.floor_bits;
    plan.ceil_bits = cb.ceil_bits;
    plan.alpha = cb.alpha;
    if (plan.ceil_bits > 8)
        throw ConfigError("make_bit_plan: bit-widths above 8 are not supported");
    return plan;
}

size_t high_block_count(double alpha, size_t block_count) {
    if (alpha < 0.0 || alpha > 1.0)
        throw ConfigError("high_block_count: alpha outside [0,1]");
    // Round half up so the achieved average stays closest to the target.
    const double k = std::floor(alpha * static_cast<double>(block_count) + 0.5);
    return static_cast<size_t>(k);
}

QuantileResult quantile_threshold(const std::vector<double>& block_saliences,
                                  double alpha) {
    if (block_saliences.empty())
        throw ConfigError("quantile_threshold: empty block list");

    QuantileResult res;
    const size_t k = high_block_count(alpha, block_saliences.size());
    if (k == 0) return res;

    std::vector<size_t> order(block_saliences.size());
    std::iota(order.begin(), order.end(), size_t{0});
    uint64_t comparisons = 0;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        ++comparisons;
        if (block_saliences[a] != block_saliences[b])
            return block_saliences[a] > block_saliences[b];
        return a < b;  // deterministic cut on duplicates
    });
    res.sort_comparisons = comparisons;

    res.selected.assign(order.begin(), order.begin() + static_cast<long>(k));
    res.threshold = block_saliences[res.selected.back()];  // smallest selected value
    std::sort(res.selected.begin(), res.selected.end());
    return res;
}

BlockBitMap allocate_block_bits(const BitPlan& plan,
                                const std::vector<BlockSalience>& block_saliences) {
    if (block_saliences.empty())
        throw ConfigError("allocate_block_bits: empty block list");

    std::vector<double> values(block_saliences.size());
    for (size_t i = 0; i < block_saliences.size(); ++i)
        values[i] = block_saliences[i].value;

    QuantileResult q = quantile_threshold(values, plan.alpha);

    BlockBitMap map;
    map.threshold = q.threshold;
    map.sort_comparisons = q.sort_comparisons;
    map.bits.assign(block_saliences.size(), static_cast<uint8_t>(plan.floor_bits));
    for (size_t idx : q.selected)
        map.bits[idx] = static_cast<uint8_t>(plan.ceil_bits);
    return map;
}

BpwReport bpw_report(const BlockBitMap& bitmap, const BitPlan& plan,
                     size_t rows, size_t cols) {
    const size_t m_b = plan.block_rows;
    const size_t n_b = plan.group_size;
    if (rows % m_b != 0 || cols % n_b != 0)
        throw ShapeError("bpw_report: shape not divisible by block dims");
    const size_t expected_blocks = (rows / m_b) * (cols / n_b);
    if (bitmap.bits.size() != expected_blocks)
        throw ShapeError("bpw_report: bitmap does not cover the shape");

    BpwReport rep;
    rep.blocks_total = bitmap.bits.size();
    const uint64_t block_area = static_cast<uint64_t>(m_b) * n_b;
    for (uint8_t b : bitmap.bits) {
        rep.weight_bits += static_cast<uint64_t>(b) * block_area;
        if (b == plan.ceil_bits && plan.ceil_bits != plan.floor_bits)
            ++rep.blocks_high;
    }
    // One scale + one zero per row-group of length n_b: m_b groups per block.
    rep.metadata_bits = static_cast<uint64_t>(bitmap.bits.size()) * m_b *
                        static_cast<uint64_t>(plan.scale_bits + plan.zero_bits);
    rep.weight_count = static_cast<uint64_t>(rows) * cols;
    rep.achieved_bpw = static_cast<double>(rep.weight_bits + rep.metadata_bits) /
                       static_cast<double>(rep.weight_count);
    rep.low_bit_warning = plan.floor_bits == 1;
    return rep;
}

}  // namespace sfmp
