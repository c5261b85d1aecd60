#include <fstream>
#include <iterator>

#include "doctest.h"
#include "revmark/error.hpp"
#include "revmark/overhead.hpp"
#include "test_support.hpp"

using namespace revmark;
using namespace revmark::overhead;
using layer1::BookKeeping;
using layer1::LocationMap;

namespace {

Bits field(std::uint64_t v, int width) {
  Bits b;
  for (int i = width - 1; i >= 0; --i) b.push_back((v >> i) & 1u);
  return b;
}

Bits cat(std::initializer_list<Bits> parts) {
  Bits out;
  for (const Bits& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

bool malformed(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == ErrorCode::MalformedOverhead;
  }
  return false;
}

std::pair<BookKeeping, LocationMap> random_overhead(std::mt19937_64& rng) {
  BookKeeping bk;
  bk.threshold = 1 + static_cast<int>(rng() % 63);
  const int n = static_cast<int>(rng() % 20);
  for (int i = 0; i < n; ++i)
    bk.shifted.push_back({static_cast<std::uint32_t>(rng() % 65536),
                          static_cast<std::uint32_t>(rng() % 65536)});
  const int rows = 1 + static_cast<int>(rng() % 60), cols = 1 + static_cast<int>(rng() % 60);
  LocationMap lmap(rows, cols);
  // Mix sparse/blocky maps (RLE wins) with dense random ones (raw wins).
  const bool sparse = rng() & 1;
  for (auto& b : lmap.bits) b = sparse ? (rng() % 50 == 0) : (rng() & 1);
  return {bk, lmap};
}

}  // namespace

TEST_CASE("45-bit worked example") {
  const OverheadBitstream s = encode_overhead(BookKeeping{2, {}}, LocationMap(2, 2));
  const Bits expected = cat({field(45, 32), field(0b00000010, 8), field(0, 32), {0}, {0, 0, 0, 0}});
  CHECK(s.bits == expected);

  const auto [bk, lmap] = decode_overhead(s, {2, 2});
  CHECK(bk == BookKeeping{2, {}});
  CHECK(lmap == LocationMap(2, 2));
}

TEST_CASE("golden bitstream file matches byte for byte") {
  std::ifstream in(revmark::testing::data_path("overhead_golden.bin"), std::ios::binary);
  REQUIRE(in);
  const std::vector<std::uint8_t> golden{std::istreambuf_iterator<char>(in),
                                         std::istreambuf_iterator<char>()};
  const OverheadBitstream s = encode_overhead(BookKeeping{2, {}}, LocationMap(2, 2));
  CHECK(pack_bytes(s.bits) == golden);

  const OverheadBitstream back{unpack_bytes(golden, 77)};
  CHECK(decode_overhead(back, {2, 2}).first.threshold == 2);
}

TEST_CASE("one shifted coordinate encodes as two 16-bit fields") {
  const OverheadBitstream s = encode_overhead(BookKeeping{5, {{3, 7}}}, LocationMap(1, 1));
  const Bits coord(s.bits.begin() + 32 + 8 + 32, s.bits.begin() + 32 + 8 + 32 + 32);
  CHECK(coord == cat({field(0x0003, 16), field(0x0007, 16)}));
  CHECK(std::vector<std::uint8_t>(s.bits.begin() + 40, s.bits.begin() + 72) == field(1, 32));
}

TEST_CASE("location map is read column-major") {
  LocationMap lmap(2, 3);
  lmap.at(0, 1) = 1;  // column-major index 2
  lmap.at(1, 2) = 1;  // column-major index 5
  const OverheadBitstream s = encode_overhead(BookKeeping{1, {}}, lmap);
  const Bits tail(s.bits.end() - 6, s.bits.end());
  CHECK(tail == Bits{0, 0, 1, 0, 0, 1});
  CHECK(s.bits[s.bits.size() - 7] == 0);  // raw
}

TEST_CASE("run-length coding hand examples") {
  const Bits zeros(300, 0);
  const Bits coded = rle_encode(zeros);
  CHECK(coded == cat({{0}, field(255, 8), {0}, field(43, 8)}));
  CHECK(coded.size() == 18);
  CHECK(rle_decode(coded, 300) == zeros);

  const Bits alt{0, 1, 0, 1};
  CHECK(rle_encode(alt).size() == 36);
  CHECK(rle_decode(rle_encode(alt), 4) == alt);

  CHECK(rle_encode(Bits{}).empty());
  CHECK(rle_decode(Bits{}, 0).empty());
}

TEST_CASE("run-length decode errors") {
  CHECK(malformed([] { rle_decode(rle_encode(Bits(10, 1)), 9); }));
  CHECK(malformed([] { rle_decode(rle_encode(Bits(10, 1)), 11); }));
  CHECK(malformed([] { rle_decode(Bits(8, 0), 1); }));
}

TEST_CASE("run-length round trip") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 500; ++t) {
    Bits x(rng() % 2000);
    const unsigned bias = 1 + rng() % 400;
    std::uint8_t cur = 0;
    for (auto& b : x) {
      if (rng() % bias == 0) cur ^= 1;
      b = cur;
    }
    REQUIRE(rle_decode(rle_encode(x), x.size()) == x);
  }
}

TEST_CASE("compression flag picks the shorter map encoding") {
  LocationMap sparse(40, 40);
  sparse.at(3, 3) = 1;
  const OverheadBitstream s = encode_overhead(BookKeeping{4, {}}, sparse);
  CHECK(s.bits[32 + 8 + 32] == 1);
  // Column-major index 123: runs 123 zeros, 1 one, 1476 zeros (5 x 256 + 196) = 8 runs.
  CHECK(s.bits.size() == 32 + 8 + 32 + 1 + 8 * 9);
  CHECK(decode_overhead(s, {40, 40}).second == sparse);
}

TEST_CASE("encode/decode round trip and never longer than raw + 1") {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 1000; ++t) {
    const auto [bk, lmap] = random_overhead(rng);
    const OverheadBitstream s = encode_overhead(bk, lmap);
    const std::size_t raw_len = 32 + 8 + 32 + 32 * bk.shifted.size() + 1 + lmap.bits.size();
    REQUIRE(s.bits.size() <= raw_len);
    const auto [bk2, lmap2] = decode_overhead(s, {lmap.rows, lmap.cols});
    REQUIRE(bk2 == bk);
    REQUIRE(lmap2 == lmap);
  }
}

TEST_CASE("decode rejects malformed streams") {
  const OverheadBitstream good = encode_overhead(BookKeeping{2, {{1, 1}}}, LocationMap(3, 3));

  OverheadBitstream truncated = good;
  truncated.bits.resize(truncated.bits.size() - 1);
  CHECK(malformed([&] { decode_overhead(truncated, {3, 3}); }));
  truncated.bits.resize(20);
  CHECK(malformed([&] { decode_overhead(truncated, {3, 3}); }));

  OverheadBitstream trailing = good;
  trailing.bits.push_back(0);
  CHECK(malformed([&] { decode_overhead(trailing, {3, 3}); }));

  CHECK(malformed([&] { decode_overhead(good, {3, 4}); }));

  OverheadBitstream zero_s = good;
  std::fill(zero_s.bits.begin() + 32, zero_s.bits.begin() + 40, 0);
  CHECK(malformed([&] { decode_overhead(zero_s, {3, 3}); }));

  // flag = 1 with runs that decode to 10 bits for a 9-cell grid
  const Bits runs = rle_encode(Bits(10, 0));
  const Bits body = cat({field(2, 8), field(0, 32), {1}, runs});
  const OverheadBitstream wrong_count{cat({field(body.size(), 32), body})};
  CHECK(malformed([&] { decode_overhead(wrong_count, {3, 3}); }));
}

TEST_CASE("encode validates its inputs") {
  const auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  CHECK(code_of([] { encode_overhead(BookKeeping{2, {{70000, 1}}}, LocationMap(1, 1)); }) ==
        ErrorCode::CoordinateOverflow);
  CHECK(code_of([] { encode_overhead(BookKeeping{0, {}}, LocationMap(1, 1)); }) ==
        ErrorCode::ThresholdOutOfRange);
}

TEST_CASE("byte packing is MSB first and zero padded") {
  const Bits b{1, 0, 1, 1, 0, 0, 0, 0, 1};
  CHECK(pack_bytes(b) == std::vector<std::uint8_t>{0xB0, 0x80});
  CHECK(unpack_bytes(pack_bytes(b), 9) == b);
}
