#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sfmp/matrix.hpp"
#include "sfmp/quantizer.hpp"
#include "sfmp/reorder.hpp"

namespace sfmp {

// Plane i holds bit i of every code. Returned unpacked (one 0/1 byte per
// weight); byte packing happens in pack_block.
std::vector<std::vector<uint8_t>> decompose_bitplanes(std::span<const uint8_t> codes,
                                                      int bits);

// One block in packed form: per-row scale/zero payloads and `bits` planes,
// least-significant first, each m_b*n_b/8 bytes. Within a byte, weight k of
// a row segment maps to bit (k mod 8), k counted along n_b.
struct PackedBlock {
    int bits = 0;
    std::vector<uint16_t> scales;  // m_b fp16 payloads
    std::vector<uint16_t> zeros;   // m_b fp16 payloads
    std::vector<std::vector<uint8_t>> planes;  // bits x (m_b*n_b/8)
};

// groups: the m_b row-groups of one block, all at the block's bit-width.
PackedBlock pack_block(std::span<const QuantGroup> groups, size_t n_b);

std::vector<QuantGroup> unpack_block(const PackedBlock& block, size_t m_b, size_t n_b);

// Block-major quantized model. Blocks in block-row-major order; every
// block is (block_rows x group_size).
struct PackedModel {
    uint16_t version = 1;
    size_t rows = 0;
    size_t cols = 0;
    size_t block_rows = 0;  // m_b
    size_t group_size = 0;  // n_b
    int floor_bits = 0;
    int ceil_bits = 0;
    ReorderSpec reorder;
    std::vector<uint8_t> block_bits;   // K entries
    std::vector<PackedBlock> blocks;   // K entries

    size_t block_grid_rows() const { return rows / block_rows; }
    size_t block_grid_cols() const { return cols / group_size; }
    size_t block_count() const { return block_bits.size(); }

    void validate() const;  // throws FormatError(invariant) on violation
};

inline constexpr char kPackedMagic[8] = {'S', 'F', 'M', 'P', 'P', 'K', 'D', '1'};
inline constexpr uint16_t kPackedVersion = 1;

std::vector<uint8_t> serialize(const PackedModel& model);
PackedModel deserialize(std::span<const uint8_t> bytes);

void write_packed_file(const std::string& path, const PackedModel& model);
PackedModel read_packed_file(const std::string& path);

// Byte offset of each block's payload within the serialized stream,
// computable from the header alone.
std::vector<size_t> compute_block_offsets(const PackedModel& model);

// Affine dequantization of the whole model back to a dense matrix in the
// ORIGINAL (un-reordered) row/column order. This is the reference route the
// LUT kernel is validated against.
Matrix dequantize_model(const PackedModel& model);

}  // namespace sfmp
