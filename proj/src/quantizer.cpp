#include "sfmp/quantizer.hpp"

#include <algorithm>
#include <cmath>

#include "sfmp/errors.hpp"
#include "sfmp/fp16.hpp"

namespace sfmp {

QuantGroup quantize_group(std::span<const float> values, int bits) {
    if (bits < 1) throw ConfigError("quantize_group: bits must be >= 1");
    if (bits > 8) throw ConfigError("quantize_group: bits above 8 not supported");
    if (values.empty()) throw ShapeError("quantize_group: empty group");

    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const float vmin = *lo_it;
    const float vmax = *hi_it;
    const int levels = (1 << bits) - 1;

    QuantGroup g;
    g.bits = bits;
    g.codes.resize(values.size());

    float scale = (vmax > vmin) ? (vmax - vmin) / static_cast<float>(levels) : 1.0f;
    float zero = vmin;
    // Parameters go through fp16 before codes are computed so that the
    // stored payloads describe exactly the affine model that was used.
    scale = fp16_round(scale);
    zero = fp16_round(zero);
    if (!(scale > 0.0f)) {
        // Degenerate range (constant group, or a spread that underflows
        // fp16): every value collapses onto the zero-point.
        g.scale = 1.0f;
        g.zero = zero;
        std::fill(g.codes.begin(), g.codes.end(), uint8_t{0});
        return g;
    }

    g.scale = scale;
    g.zero = zero;
    for (size_t i = 0; i < values.size(); ++i) {
        const float q = std::round((values[i] - zero) / scale);
        const float clamped = std::clamp(q, 0.0f, static_cast<float>(levels));
        g.codes[i] = static_cast<uint8_t>(clamped);
    }
    return g;
}

std::vector<float> dequantize_group(const QuantGroup& g) {
    std::vector<float> out(g.codes.size());
    for (size_t i = 0; i < g.codes.size(); ++i)
        out[i] = g.scale * static_cast<float>(g.codes[i]) + g.zero;
    return out;
}

MirrorGroup mirror_transform(const QuantGroup& g) {
    MirrorGroup m;
    m.bits = g.bits;
    m.scale_hat = 0.5f * g.scale;
    m.zero_hat = g.zero + m.scale_hat * static_cast<float>((1 << g.bits) - 1);
    return m;
}

float mirror_dequant_code(const MirrorGroup& m, uint8_t code) {
    float acc = m.zero_hat;
    for (int i = 0; i < m.bits; ++i) {
        const float sign = ((code >> i) & 1u) ? 1.0f : -1.0f;
        acc += static_cast<float>(1 << i) * m.scale_hat * sign;
    }
    return acc;
}

}  // namespace sfmp
