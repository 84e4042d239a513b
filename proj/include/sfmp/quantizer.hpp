#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace sfmp {

// One quantized row-group: affine model v ~= scale*code + zero. Scale and
// zero have already been rounded through 16-bit float so the stored and
// used parameters agree.
struct QuantGroup {
    float scale = 1.0f;
    float zero = 0.0f;
    int bits = 0;
    std::vector<uint8_t> codes;  // each < 2^bits
};

// Lossless reparameterization for sign-based LUT execution:
//   scale_hat = scale/2, zero_hat = zero + scale/2 * (2^bits - 1)
// so that sum_i 2^i*scale_hat*(2*bit_i - 1) + zero_hat == scale*code + zero.
struct MirrorGroup {
    float scale_hat = 0.0f;
    float zero_hat = 0.0f;
    int bits = 0;
};

// Round-to-nearest min-max asymmetric quantization of one group.
QuantGroup quantize_group(std::span<const float> values, int bits);

std::vector<float> dequantize_group(const QuantGroup& g);

MirrorGroup mirror_transform(const QuantGroup& g);

// Dequantize one code through the mirror parameters (bit i of the code is
// interpreted as the sign +-1 of plane i).
float mirror_dequant_code(const MirrorGroup& m, uint8_t code);

// Seam for plugging a different per-group quantizer into the pipeline.
using GroupQuantizerFn = std::function<QuantGroup(std::span<const float>, int)>;

}  // namespace sfmp
