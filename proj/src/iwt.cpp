#include "revmark/iwt.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <thread>

#include "revmark/error.hpp"

namespace revmark::iwt {

namespace {

// Arithmetic shift rounds toward negative infinity for signed values (C++20).
constexpr std::int32_t floor_half(std::int32_t v) noexcept { return v >> 1; }

constexpr void lift_forward(std::int32_t even, std::int32_t odd, std::int32_t& approx,
                            std::int32_t& detail) noexcept {
  detail = odd - even;
  approx = even + floor_half(detail);
}

constexpr void lift_inverse(std::int32_t approx, std::int32_t detail, std::int32_t& even,
                            std::int32_t& odd) noexcept {
  even = approx - floor_half(detail);
  odd = even + detail;
}

// Runs body(begin, end) over [0, count) in contiguous chunks. Each index is
// written by exactly one worker, so output does not depend on scheduling.
void parallel_for(int count, int threads, const std::function<void(int, int)>& body) {
  threads = std::clamp(threads, 1, std::max(1, count));
  if (threads == 1) {
    body(0, count);
    return;
  }
  std::vector<std::jthread> workers;
  workers.reserve(static_cast<std::size_t>(threads));
  const int chunk = (count + threads - 1) / threads;
  for (int begin = 0; begin < count; begin += chunk)
    workers.emplace_back(body, begin, std::min(count, begin + chunk));
}

void check_bands(const Subbands& b) {
  const auto same = [&](const IntMatrix& m) { return m.rows == b.ll.rows && m.cols == b.ll.cols; };
  if (!same(b.hl) || !same(b.lh) || !same(b.hh))
    throw Error(ErrorCode::DimensionMismatch, "sub-bands differ in shape");
}

}  // namespace

PairTransform haar_forward_1d(std::span<const std::int32_t> seq) {
  if (seq.size() % 2 != 0)
    throw Error(ErrorCode::OddLength, "sequence length " + std::to_string(seq.size()));
  const std::size_t half = seq.size() / 2;
  PairTransform out{std::vector<std::int32_t>(half), std::vector<std::int32_t>(half)};
  for (std::size_t i = 0; i < half; ++i)
    lift_forward(seq[2 * i], seq[2 * i + 1], out.approx[i], out.detail[i]);
  return out;
}

std::vector<std::int32_t> haar_inverse_1d(std::span<const std::int32_t> approx,
                                          std::span<const std::int32_t> detail) {
  if (approx.size() != detail.size())
    throw Error(ErrorCode::LengthMismatch, std::to_string(approx.size()) + " approx vs " +
                                               std::to_string(detail.size()) + " detail");
  std::vector<std::int32_t> out(approx.size() * 2);
  for (std::size_t i = 0; i < approx.size(); ++i)
    lift_inverse(approx[i], detail[i], out[2 * i], out[2 * i + 1]);
  return out;
}

Subbands decompose_2d(const IntMatrix& region, int threads) {
  if (region.rows % 2 != 0 || region.cols % 2 != 0)
    throw Error(ErrorCode::OddDimensions,
                std::to_string(region.rows) + "x" + std::to_string(region.cols) + " region");
  const int half_rows = region.rows / 2;
  const int half_cols = region.cols / 2;

  IntMatrix low(region.rows, half_cols);
  IntMatrix high(region.rows, half_cols);
  parallel_for(region.rows, threads, [&](int begin, int end) {
    for (int r = begin; r < end; ++r)
      for (int c = 0; c < half_cols; ++c)
        lift_forward(region.at(r, 2 * c), region.at(r, 2 * c + 1), low.at(r, c), high.at(r, c));
  });

  Subbands out{IntMatrix(half_rows, half_cols), IntMatrix(half_rows, half_cols),
               IntMatrix(half_rows, half_cols), IntMatrix(half_rows, half_cols)};
  parallel_for(half_cols, threads, [&](int begin, int end) {
    for (int c = begin; c < end; ++c) {
      for (int r = 0; r < half_rows; ++r) {
        lift_forward(low.at(2 * r, c), low.at(2 * r + 1, c), out.ll.at(r, c), out.lh.at(r, c));
        lift_forward(high.at(2 * r, c), high.at(2 * r + 1, c), out.hl.at(r, c), out.hh.at(r, c));
      }
    }
  });
  return out;
}

Subbands decompose_2d(const GrayImage& img, int threads) {
  return decompose_2d(to_matrix(img), threads);
}

IntMatrix reconstruct_2d(const Subbands& bands, int threads) {
  check_bands(bands);
  const int half_rows = bands.ll.rows;
  const int half_cols = bands.ll.cols;

  IntMatrix low(half_rows * 2, half_cols);
  IntMatrix high(half_rows * 2, half_cols);
  parallel_for(half_cols, threads, [&](int begin, int end) {
    for (int c = begin; c < end; ++c) {
      for (int r = 0; r < half_rows; ++r) {
        lift_inverse(bands.ll.at(r, c), bands.lh.at(r, c), low.at(2 * r, c), low.at(2 * r + 1, c));
        lift_inverse(bands.hl.at(r, c), bands.hh.at(r, c), high.at(2 * r, c),
                     high.at(2 * r + 1, c));
      }
    }
  });

  IntMatrix out(half_rows * 2, half_cols * 2);
  parallel_for(out.rows, threads, [&](int begin, int end) {
    for (int r = begin; r < end; ++r)
      for (int c = 0; c < half_cols; ++c)
        lift_inverse(low.at(r, c), high.at(r, c), out.at(r, 2 * c), out.at(r, 2 * c + 1));
  });
  return out;
}

}  // namespace revmark::iwt
