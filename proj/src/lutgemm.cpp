#include "sfmp/lutgemm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "sfmp/fp16.hpp"

namespace sfmp {

std::vector<LookupTable> build_luts(const Vector& x) {
    if (x.len() % kLutGroupSize != 0)
        throw ShapeError("build_luts: activation length not divisible by 8");

    std::vector<LookupTable> tables(x.len() / kLutGroupSize);
    for (size_t t = 0; t < tables.size(); ++t) {
        const float* xs = x.data.data() + t * kLutGroupSize;
        float* a = tables[t].entries;
        // Recursive doubling over sign bits 0..6; accumulation order per
        // entry is ascending k, identical to a direct signed dot product.
        a[0] = -xs[0];
        a[1] = xs[0];
        for (int k = 1; k < 7; ++k) {
            const float xv = xs[k];
            const int half = 1 << k;
            for (int j = 0; j < half; ++j) {
                const float base = a[j];
                a[j + half] = base + xv;
                a[j] = base - xv;
            }
        }
        // Stored half fixes sign bit 7 to +1.
        for (int j = 0; j < 128; ++j) a[j] += xs[7];
    }
    return tables;
}

GemvWorkspace::GemvWorkspace(const Vector& x_reordered)
    : luts(build_luts(x_reordered)), x(x_reordered.data) {}

namespace {

// Shared inner accumulation; xsum_range is the activation sum over the
// block's column range (for the zero-point term).
void accumulate_block(GemvWorkspace& ws, const PackedBlock& block,
                      size_t block_col_offset, size_t m_b, size_t n_b,
                      float xsum_range, float* out) {
    if (block_col_offset % kLutGroupSize != 0)
        throw ShapeError("gemv_block: column offset not aligned to LUT groups");
    if (block_col_offset + n_b > ws.x.size())
        throw ShapeError("gemv_block: block columns exceed activation length");

    const size_t row_bytes = n_b / 8;
    const LookupTable* luts = ws.luts.data() + block_col_offset / 8;
    const int bits = block.bits;
    const float levels = static_cast<float>((1 << bits) - 1);

    for (size_t r = 0; r < m_b; ++r) {
        float planes_acc = 0.0f;  // sum_i 2^i * (sum of group lookups)
        for (int i = 0; i < bits; ++i) {
            const uint8_t* pb = block.planes[i].data() + r * row_bytes;
            float s = 0.0f;
            for (size_t g = 0; g < row_bytes; ++g) s += luts[g].lookup(pb[g]);
            planes_acc += static_cast<float>(1 << i) * s;
        }
        const float scale_hat = 0.5f * fp16_to_float(block.scales[r]);
        const float zero_hat = fp16_to_float(block.zeros[r]) + scale_hat * levels;
        out[r] += scale_hat * planes_acc + zero_hat * xsum_range;
    }
    ws.lookups += static_cast<uint64_t>(bits) * m_b * row_bytes;
}

float range_sum(const std::vector<float>& x, size_t offset, size_t len) {
    float s = 0.0f;
    for (size_t i = 0; i < len; ++i) s += x[offset + i];
    return s;
}

double percentile(std::vector<double> sorted, double q) {
    const size_t idx = static_cast<size_t>(
        std::llround(q * static_cast<double>(sorted.size() - 1)));
    return sorted[idx];
}

}  // namespace

std::vector<float> gemv_block(GemvWorkspace& ws, const PackedBlock& block,
                              size_t block_col_offset, size_t m_b, size_t n_b) {
    std::vector<float> out(m_b, 0.0f);
    const float xsum = range_sum(ws.x, block_col_offset, n_b);
    accumulate_block(ws, block, block_col_offset, m_b, n_b, xsum, out.data());
    return out;
}

Vector gemv(const PackedModel& model, const Vector& x, GemvStats* stats) {
    if (x.len() != model.cols) throw ShapeError("gemv: x.len != model cols");

    using clock = std::chrono::steady_clock;
    auto us_between = [](clock::time_point a, clock::time_point b) {
        return std::chrono::duration<double, std::micro>(b - a).count();
    };

    const auto t0 = clock::now();
    const Vector xr = reorder_activation_in(x, model.reorder);
    const auto t1 = clock::now();
    GemvWorkspace ws(xr);
    const auto t2 = clock::now();

    const size_t m_b = model.block_rows;
    const size_t n_b = model.group_size;
    const size_t grid_cols = model.block_grid_cols();

    std::vector<float> col_sums(grid_cols);
    for (size_t bc = 0; bc < grid_cols; ++bc)
        col_sums[bc] = range_sum(ws.x, bc * n_b, n_b);

    Vector y(model.rows);
    for (size_t k = 0; k < model.block_count(); ++k) {
        const size_t br = k / grid_cols;
        const size_t bc = k % grid_cols;
        accumulate_block(ws, model.blocks[k], bc * n_b, m_b, n_b, col_sums[bc],
                         y.data.data() + br * m_b);
    }
    const auto t3 = clock::now();
    Vector out = reorder_activation_out(y, model.reorder);
    const auto t4 = clock::now();

    if (stats) {
        stats->lookups = ws.lookups;
        stats->lut_build_us = us_between(t1, t2);
        stats->accumulate_us = us_between(t2, t3);
        stats->reorder_us = us_between(t0, t1) + us_between(t3, t4);
    }
    return out;
}

BenchResult bench_gemv(const PackedModel& model, const Vector& x, size_t reps) {
    if (reps < 1) throw ConfigError("bench_gemv: repetitions must be >= 1");

    using clock = std::chrono::steady_clock;
    std::vector<double> totals, builds, reorders;
    totals.reserve(reps);
    uint64_t lookups = 0;

    volatile float sink = 0.0f;  // keep the kernel from being optimized out
    for (size_t rep = 0; rep < reps; ++rep) {
        GemvStats stats;
        const auto t0 = clock::now();
        Vector y = gemv(model, x, &stats);
        const auto t1 = clock::now();
        sink = sink + y[0];
        totals.push_back(std::chrono::duration<double, std::micro>(t1 - t0).count());
        builds.push_back(stats.lut_build_us);
        reorders.push_back(stats.reorder_us);
        lookups = stats.lookups;
    }
    (void)sink;

    std::sort(totals.begin(), totals.end());
    std::sort(builds.begin(), builds.end());
    std::sort(reorders.begin(), reorders.end());

    BenchResult res;
    res.rows = model.rows;
    res.cols = model.cols;
    res.reps = reps;
    res.median_us = percentile(totals, 0.5);
    res.lut_build_us = percentile(builds, 0.5);
    res.reorder_us = percentile(reorders, 0.5);
    if (reps > 1) {
        res.p10_us = percentile(totals, 0.10);
        res.p90_us = percentile(totals, 0.90);
    } else {
        res.p10_us = std::nan("");
        res.p90_us = std::nan("");
    }
    res.lookups = lookups;
    return res;
}

}  // namespace sfmp
