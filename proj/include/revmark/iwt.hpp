#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "revmark/image.hpp"

namespace revmark::iwt {

// One level of the integer lifting Haar transform.
//   hl: row detail, column approximation
//   lh: row approximation, column detail
//   hh: detail in both directions
struct Subbands {
  IntMatrix ll;
  IntMatrix hl;
  IntMatrix lh;
  IntMatrix hh;

  friend bool operator==(const Subbands&, const Subbands&) = default;
};

struct PairTransform {
  std::vector<std::int32_t> approx;
  std::vector<std::int32_t> detail;
};

// detail = odd - even, approx = even + floor(detail / 2).
PairTransform haar_forward_1d(std::span<const std::int32_t> seq);
std::vector<std::int32_t> haar_inverse_1d(std::span<const std::int32_t> approx,
                                          std::span<const std::int32_t> detail);

// Rows first, then columns. `threads` > 1 splits the row and column passes
// across worker threads; the result is identical for every thread count.
Subbands decompose_2d(const IntMatrix& region, int threads = 1);
Subbands decompose_2d(const GrayImage& img, int threads = 1);

// Columns first, then rows. Output may leave [0, 255]; the caller range-checks.
IntMatrix reconstruct_2d(const Subbands& bands, int threads = 1);

}  // namespace revmark::iwt
