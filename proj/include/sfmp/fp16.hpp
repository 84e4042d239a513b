#pragma once

#include <bit>
#include <cstdint>

namespace sfmp {

// IEEE 754 binary16 conversions. Quantization scales and zero-points are
// stored as raw 16-bit payloads, so the round trip float -> half -> float
// must be deterministic: round-to-nearest-even on narrowing, exact on
// widening. Out-of-range magnitudes saturate to +-65504 instead of
// producing infinities, which keeps downstream arithmetic finite.

inline uint16_t fp16_from_float(float f) {
    uint32_t x = std::bit_cast<uint32_t>(f);
    uint16_t sign = static_cast<uint16_t>((x >> 16) & 0x8000u);
    uint32_t abs = x & 0x7FFFFFFFu;

    if (abs >= 0x7F800000u) {
        // Inf / NaN: keep NaN as a quiet NaN, map inf to max finite.
        if (abs > 0x7F800000u) return static_cast<uint16_t>(sign | 0x7E00u);
        return static_cast<uint16_t>(sign | 0x7BFFu);
    }
    if (abs >= 0x477FF000u) {
        // Anything rounding above 65504 saturates.
        return static_cast<uint16_t>(sign | 0x7BFFu);
    }
    if (abs < 0x33000001u) {
        // Rounds to zero (below half of the smallest subnormal).
        return sign;
    }

    int32_t exp = static_cast<int32_t>(abs >> 23) - 127;
    uint32_t mant = (abs & 0x007FFFFFu) | 0x00800000u;

    if (exp < -14) {
        // Subnormal half: shift the significand so the implicit bit lands
        // below the 10-bit field, then round to nearest even.
        int32_t shift = 13 + (-14 - exp);
        uint32_t half_mant = mant >> shift;
        uint32_t rem = mant & ((1u << shift) - 1u);
        uint32_t halfway = 1u << (shift - 1);
        if (rem > halfway || (rem == halfway && (half_mant & 1u)))
            half_mant += 1;
        return static_cast<uint16_t>(sign | half_mant);
    }

    uint32_t half_exp = static_cast<uint32_t>(exp + 15);
    uint32_t half_mant = mant >> 13;
    uint32_t rem = mant & 0x1FFFu;
    if (rem > 0x1000u || (rem == 0x1000u && (half_mant & 1u)))
        half_mant += 1;  // may carry into the exponent, which is correct
    uint32_t bits = (half_exp << 10) + half_mant - (1u << 10);
    if (bits >= 0x7C00u) bits = 0x7BFFu;  // saturate post-rounding overflow
    return static_cast<uint16_t>(sign | bits);
}

inline float fp16_to_float(uint16_t h) {
    uint32_t sign = static_cast<uint32_t>(h & 0x8000u) << 16;
    uint32_t exp = (h >> 10) & 0x1Fu;
    uint32_t mant = h & 0x3FFu;

    uint32_t bits;
    if (exp == 0) {
        if (mant == 0) {
            bits = sign;
        } else {
            // Normalize the subnormal.
            int e = -1;
            do {
                mant <<= 1;
                ++e;
            } while ((mant & 0x400u) == 0);
            bits = sign | (static_cast<uint32_t>(127 - 15 - e) << 23) |
                   ((mant & 0x3FFu) << 13);
        }
    } else if (exp == 0x1Fu) {
        bits = sign | 0x7F800000u | (mant << 13);
    } else {
        bits = sign | ((exp - 15 + 127) << 23) | (mant << 13);
    }
    return std::bit_cast<float>(bits);
}

// Round a float through the 16-bit representation.
inline float fp16_round(float f) { return fp16_to_float(fp16_from_float(f)); }

}  // namespace sfmp
