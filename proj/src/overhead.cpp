#include "revmark/overhead.hpp"

#include <string>

#include "revmark/error.hpp"

namespace revmark::overhead {

namespace {

constexpr std::size_t kRunLengthBits = 8;
constexpr std::size_t kRunBits = 1 + kRunLengthBits;
constexpr std::size_t kMaxRun = std::size_t{1} << kRunLengthBits;

void put(Bits& out, std::uint64_t value, int width) {
  for (int b = width - 1; b >= 0; --b) out.push_back(static_cast<std::uint8_t>((value >> b) & 1u));
}

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::MalformedOverhead, what);
}

class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> bits) : bits_(bits) {}

  std::uint64_t get(int width) {
    if (remaining() < static_cast<std::size_t>(width))
      malformed("stream ends inside a " + std::to_string(width) + "-bit field");
    std::uint64_t v = 0;
    for (int b = 0; b < width; ++b) v = (v << 1) | (bits_[pos_++] & 1u);
    return v;
  }

  std::size_t remaining() const noexcept { return bits_.size() - pos_; }
  std::span<const std::uint8_t> rest() const { return bits_.subspan(pos_); }

 private:
  std::span<const std::uint8_t> bits_;
  std::size_t pos_ = 0;
};

Bits lmap_column_major(const layer1::LocationMap& lmap) {
  Bits out;
  out.reserve(lmap.bits.size());
  for (int c = 0; c < lmap.cols; ++c)
    for (int r = 0; r < lmap.rows; ++r) out.push_back(lmap.at(r, c) ? 1 : 0);
  return out;
}

}  // namespace

Bits rle_encode(std::span<const std::uint8_t> bits) {
  Bits out;
  std::size_t i = 0;
  while (i < bits.size()) {
    const std::uint8_t value = bits[i] ? 1 : 0;
    std::size_t run = 1;
    while (i + run < bits.size() && (bits[i + run] ? 1 : 0) == value && run < kMaxRun) ++run;
    put(out, value, 1);
    put(out, run - 1, kRunLengthBits);
    i += run;
  }
  return out;
}

Bits rle_decode(std::span<const std::uint8_t> coded, std::size_t expected_len) {
  if (coded.size() % kRunBits != 0)
    malformed("run-length section of " + std::to_string(coded.size()) +
              " bits is not a whole number of runs");
  BitReader in(coded);
  Bits out;
  out.reserve(expected_len);
  while (in.remaining() > 0) {
    const auto value = static_cast<std::uint8_t>(in.get(1));
    const std::size_t run = in.get(kRunLengthBits) + 1;
    if (out.size() + run > expected_len)
      malformed("run-length data decodes past " + std::to_string(expected_len) + " bits");
    out.insert(out.end(), run, value);
  }
  if (out.size() != expected_len)
    malformed("run-length data decodes to " + std::to_string(out.size()) + " bits, expected " +
              std::to_string(expected_len));
  return out;
}

OverheadBitstream encode_overhead(const layer1::BookKeeping& bk, const layer1::LocationMap& lmap) {
  if (bk.threshold < 1 || bk.threshold > layer1::kMaxThreshold)
    throw Error(ErrorCode::ThresholdOutOfRange, "S = " + std::to_string(bk.threshold));
  if (bk.shifted.size() > 0xFFFFFFFFull)
    throw Error(ErrorCode::CoordinateOverflow, "too many shifted pixels");

  Bits body;
  put(body, static_cast<std::uint64_t>(bk.threshold), 8);
  put(body, bk.shifted.size(), 32);
  for (const layer1::PixelCoord& p : bk.shifted) {
    if (p.row > 0xFFFF || p.col > 0xFFFF)
      throw Error(ErrorCode::CoordinateOverflow, "(" + std::to_string(p.row) + ", " +
                                                     std::to_string(p.col) +
                                                     ") does not fit 16-bit fields");
    put(body, p.row, 16);
    put(body, p.col, 16);
  }
  const Bits raw = lmap_column_major(lmap);
  const Bits coded = rle_encode(raw);
  const bool use_rle = coded.size() < raw.size();
  put(body, use_rle ? 1 : 0, 1);
  const Bits& map_bits = use_rle ? coded : raw;
  body.insert(body.end(), map_bits.begin(), map_bits.end());

  if (body.size() > 0xFFFFFFFFull) throw Error(ErrorCode::CoordinateOverflow, "overhead too long");
  OverheadBitstream stream;
  stream.bits.reserve(kLengthFieldBits + body.size());
  put(stream.bits, body.size(), kLengthFieldBits);
  stream.bits.insert(stream.bits.end(), body.begin(), body.end());
  return stream;
}

std::pair<layer1::BookKeeping, layer1::LocationMap> decode_overhead(const OverheadBitstream& stream,
                                                                    layer1::GridShape grid) {
  BitReader in(stream.bits);
  const std::uint64_t length = in.get(kLengthFieldBits);
  if (in.remaining() != length)
    malformed("declared length " + std::to_string(length) + " but " +
              std::to_string(in.remaining()) + " bits follow");

  layer1::BookKeeping bk;
  bk.threshold = static_cast<int>(in.get(8));
  if (bk.threshold < 1 || bk.threshold > layer1::kMaxThreshold)
    malformed("threshold " + std::to_string(bk.threshold) + " outside [1, 63]");
  const std::uint64_t count = in.get(32);
  if (count > in.remaining() / 32) malformed("shift count exceeds stream length");
  bk.shifted.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    const auto row = static_cast<std::uint32_t>(in.get(16));
    const auto col = static_cast<std::uint32_t>(in.get(16));
    bk.shifted.push_back({row, col});
  }

  const bool use_rle = in.get(1) != 0;
  const std::size_t cells = static_cast<std::size_t>(grid.rows) * static_cast<std::size_t>(grid.cols);
  Bits raw;
  if (use_rle) {
    raw = rle_decode(in.rest(), cells);
  } else {
    if (in.remaining() != cells)
      malformed("location map has " + std::to_string(in.remaining()) + " bits, grid needs " +
                std::to_string(cells));
    raw.assign(in.rest().begin(), in.rest().end());
  }

  layer1::LocationMap lmap(grid.rows, grid.cols);
  std::size_t k = 0;
  for (int c = 0; c < grid.cols; ++c)
    for (int r = 0; r < grid.rows; ++r) lmap.at(r, c) = raw[k++] ? 1 : 0;
  return {std::move(bk), std::move(lmap)};
}

std::vector<std::uint8_t> pack_bytes(std::span<const std::uint8_t> bits) {
  std::vector<std::uint8_t> out((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
  return out;
}

Bits unpack_bytes(std::span<const std::uint8_t> bytes, std::size_t bit_count) {
  if (bit_count > bytes.size() * 8)
    throw Error(ErrorCode::LengthMismatch, "not enough bytes for " + std::to_string(bit_count) + " bits");
  Bits out(bit_count);
  for (std::size_t i = 0; i < bit_count; ++i) out[i] = (bytes[i / 8] >> (7 - i % 8)) & 1u;
  return out;
}

}  // namespace revmark::overhead
