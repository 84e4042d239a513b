#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sfmp/allocation.hpp"
#include "sfmp/layout.hpp"
#include "sfmp/lutgemm.hpp"
#include "sfmp/quantizer.hpp"

namespace sfmp {

enum class ReorderChoice { auto_select, none, row, col, rowcol };
enum class QuantileScope { global, per_matrix };

struct PipelineConfig {
    double target_bpw = 4.0;
    size_t group_size = 128;  // n_b, multiple of 8
    size_t block_rows = 512;  // m_b
    ReorderChoice reorder = ReorderChoice::auto_select;
    QuantileScope quantile_scope = QuantileScope::global;
    int scale_bits = 16;
    int zero_bits = 16;
    bool pad = false;  // zero-pad non-divisible shapes instead of rejecting
    GroupQuantizerFn quantizer;  // empty -> round-to-nearest min-max

    void validate() const;  // throws ConfigError
};

// auto_select resolves to none at effective bits >= 4, rowcol below.
ReorderMode resolve_reorder_mode(ReorderChoice choice, double effective_bits);

// A named weight matrix plus its calibration gradients. Loaders may be
// invoked more than once; the pipeline streams matrices instead of holding
// the whole manifest in memory.
struct MatrixSource {
    std::string name;
    std::function<Matrix()> load_weights;
    std::function<std::vector<GradientSample>()> load_gradients;
};

struct MatrixReport {
    std::string name;
    size_t rows = 0;
    size_t cols = 0;
    size_t blocks_total = 0;
    size_t blocks_high = 0;
    double average_weight_bits = 0.0;
    double achieved_bpw = 0.0;
    ReorderMode reorder_mode = ReorderMode::none;
};

struct PipelineReport {
    double target_bpw = 0.0;
    double effective_bits = 0.0;
    double alpha = 0.0;
    int floor_bits = 0;
    int ceil_bits = 0;
    size_t group_size = 0;
    size_t block_rows = 0;
    size_t blocks_total = 0;
    size_t blocks_high = 0;
    double achieved_bpw = 0.0;
    bool low_bit_warning = false;
    int allocation_passes = 0;     // single-pass invariant: always 1
    uint64_t sort_comparisons = 0;
    std::vector<MatrixReport> matrices;
};

// Full quantization pipeline over a manifest: salience -> reorder ->
// partition -> one allocation pass -> quantize -> pack. The sink receives
// each packed model in manifest order.
PipelineReport quantize_matrices(
    const std::vector<MatrixSource>& sources, const PipelineConfig& config,
    const std::function<void(size_t, const PackedModel&)>& sink);

// Single-matrix convenience wrapper.
struct QuantizeResult {
    PackedModel model;
    PipelineReport report;
};
QuantizeResult quantize_matrix(const Matrix& weights,
                               const std::vector<GradientSample>& gradients,
                               const PipelineConfig& config);

struct VerifyResult {
    size_t probes = 0;
    double max_rel_l2 = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

// Random-activation equivalence check: LUT gemv vs dequantized reference.
VerifyResult verify_model(const PackedModel& model, size_t probes, uint64_t seed,
                          double tolerance);

// Seeded synthetic fixtures (normal weights, toy-linear gradient samples).
Matrix gen_weights(size_t rows, size_t cols, uint64_t seed);
std::vector<GradientSample> gen_gradients(const Matrix& w, uint64_t seed,
                                          size_t sample_count);
Vector gen_activation(size_t n, uint64_t seed);

}  // namespace sfmp
