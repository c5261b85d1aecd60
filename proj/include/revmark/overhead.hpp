#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "revmark/layer1.hpp"

namespace revmark::overhead {

using Bits = std::vector<std::uint8_t>;  // one 0/1 entry per bit

// Wire layout, every field MSB-first:
//   length       32  bits that follow this field
//   threshold     8
//   count        32  number of shifted pixels
//   count x (row 16, col 16)
//   rle flag      1
//   location map     column-major, raw or run-length coded
struct OverheadBitstream {
  Bits bits;

  friend bool operator==(const OverheadBitstream&, const OverheadBitstream&) = default;
};

inline constexpr std::size_t kLengthFieldBits = 32;

OverheadBitstream encode_overhead(const layer1::BookKeeping& bk, const layer1::LocationMap& lmap);
std::pair<layer1::BookKeeping, layer1::LocationMap> decode_overhead(const OverheadBitstream& stream,
                                                                    layer1::GridShape grid);

// Runs of (value: 1 bit, length - 1: 8 bits); runs longer than 256 are split.
Bits rle_encode(std::span<const std::uint8_t> bits);
Bits rle_decode(std::span<const std::uint8_t> coded, std::size_t expected_len);

// MSB-first packing, zero padded to a whole byte.
std::vector<std::uint8_t> pack_bytes(std::span<const std::uint8_t> bits);
Bits unpack_bytes(std::span<const std::uint8_t> bytes, std::size_t bit_count);

}  // namespace revmark::overhead
