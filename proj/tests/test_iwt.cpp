#include <cmath>

#include "doctest.h"
#include "revmark/error.hpp"
#include "revmark/iwt.hpp"
#include "test_support.hpp"

using namespace revmark;
using namespace revmark::iwt;

namespace {

// Floor division evaluated through floating point: independent of the
// shift-based path in the library.
std::int32_t floor_div2(std::int32_t v) {
  return static_cast<std::int32_t>(std::floor(static_cast<double>(v) / 2.0));
}

// 2D forward by explicit 1D composition: rows, then columns of each half.
Subbands compose_oracle(const IntMatrix& x) {
  const int hr = x.rows / 2, hc = x.cols / 2;
  IntMatrix low(x.rows, hc), high(x.rows, hc);
  for (int r = 0; r < x.rows; ++r) {
    std::vector<std::int32_t> row(x.data.begin() + r * x.cols, x.data.begin() + (r + 1) * x.cols);
    const PairTransform t = haar_forward_1d(row);
    for (int c = 0; c < hc; ++c) {
      low.at(r, c) = t.approx[c];
      high.at(r, c) = t.detail[c];
    }
  }
  Subbands out{IntMatrix(hr, hc), IntMatrix(hr, hc), IntMatrix(hr, hc), IntMatrix(hr, hc)};
  for (int c = 0; c < hc; ++c) {
    std::vector<std::int32_t> lcol(x.rows), hcol(x.rows);
    for (int r = 0; r < x.rows; ++r) {
      lcol[r] = low.at(r, c);
      hcol[r] = high.at(r, c);
    }
    const PairTransform lt = haar_forward_1d(lcol);
    const PairTransform ht = haar_forward_1d(hcol);
    for (int r = 0; r < hr; ++r) {
      out.ll.at(r, c) = lt.approx[r];
      out.lh.at(r, c) = lt.detail[r];
      out.hl.at(r, c) = ht.approx[r];
      out.hh.at(r, c) = ht.detail[r];
    }
  }
  return out;
}

}  // namespace

TEST_CASE("haar_forward_1d hand examples") {
  const std::vector<std::int32_t> flat{7, 7, 7, 7};
  const PairTransform a = haar_forward_1d(flat);
  CHECK(a.approx == std::vector<std::int32_t>{7, 7});
  CHECK(a.detail == std::vector<std::int32_t>{0, 0});

  const std::vector<std::int32_t> seq{10, 6, 3, 9};
  const PairTransform b = haar_forward_1d(seq);
  CHECK(b.approx == std::vector<std::int32_t>{8, 6});
  CHECK(b.detail == std::vector<std::int32_t>{-4, 6});

  const std::vector<std::int32_t> odd{1, 2, 3};
  CHECK_THROWS_AS(haar_forward_1d(odd), Error);
}

TEST_CASE("haar_inverse_1d hand examples") {
  const std::vector<std::int32_t> approx{8, 6}, detail{-4, 6};
  CHECK(haar_inverse_1d(approx, detail) == std::vector<std::int32_t>{10, 6, 3, 9});

  const std::vector<std::int32_t> a2{4, -3}, zeros{0, 0};
  CHECK(haar_inverse_1d(a2, zeros) == std::vector<std::int32_t>{4, 4, -3, -3});

  const std::vector<std::int32_t> a3{0}, d3{-255};
  CHECK(haar_inverse_1d(a3, d3) == std::vector<std::int32_t>{128, -127});

  const std::vector<std::int32_t> one{1};
  CHECK_THROWS_AS(haar_inverse_1d(approx, one), Error);
}

TEST_CASE("1D transform agrees with the floor oracle and inverts") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> v(-2048, 2048);
  for (int t = 0; t < 10000; ++t) {
    std::vector<std::int32_t> x(2 * (1 + rng() % 16));
    for (auto& e : x) e = v(rng);
    const PairTransform f = haar_forward_1d(x);
    for (std::size_t i = 0; i < f.approx.size(); ++i) {
      const std::int32_t d = x[2 * i + 1] - x[2 * i];
      REQUIRE(f.detail[i] == d);
      REQUIRE(f.approx[i] == x[2 * i] + floor_div2(d));
    }
    REQUIRE(haar_inverse_1d(f.approx, f.detail) == x);
  }
}

TEST_CASE("decompose_2d of the 2x2 example") {
  IntMatrix x(2, 2);
  x.data = {10, 6, 3, 9};
  const Subbands b = decompose_2d(x);
  CHECK(b.ll.data == std::vector<std::int32_t>{7});
  CHECK(b.hh.data == std::vector<std::int32_t>{10});
  CHECK(b.hl.data == std::vector<std::int32_t>{1});
  CHECK(b.lh.data == std::vector<std::int32_t>{-2});
  CHECK(b == compose_oracle(x));
  CHECK(reconstruct_2d(b) == x);
}

TEST_CASE("decompose_2d matches the 1D composition oracle") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 200; ++t) {
    const int rows = 2 * (1 + static_cast<int>(rng() % 12));
    const int cols = 2 * (1 + static_cast<int>(rng() % 12));
    const IntMatrix x = revmark::testing::random_matrix(rng, rows, cols, -1024, 1024);
    REQUIRE(decompose_2d(x) == compose_oracle(x));
  }
}

TEST_CASE("constant image has zero detail") {
  const Subbands b = decompose_2d(GrayImage(6, 4, 93));
  for (auto v : b.ll.data) CHECK(v == 93);
  for (const IntMatrix* m : {&b.hl, &b.lh, &b.hh})
    for (auto v : m->data) CHECK(v == 0);

  Subbands flat{IntMatrix(2, 3, 40), IntMatrix(2, 3), IntMatrix(2, 3), IntMatrix(2, 3)};
  CHECK(reconstruct_2d(flat) == IntMatrix(4, 6, 40));
}

TEST_CASE("perfect reconstruction on random even matrices") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 1000; ++t) {
    const int rows = 2 * (1 + static_cast<int>(rng() % 20));
    const int cols = 2 * (1 + static_cast<int>(rng() % 20));
    const IntMatrix x = revmark::testing::random_matrix(rng, rows, cols, -1024, 1024);
    REQUIRE(reconstruct_2d(decompose_2d(x)) == x);
  }
}

TEST_CASE("a detail coefficient only affects its 2x2 block") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 200; ++t) {
    const IntMatrix x = revmark::testing::random_matrix(rng, 8, 10, 0, 255);
    Subbands b = decompose_2d(x);
    const int r = static_cast<int>(rng() % 4), c = static_cast<int>(rng() % 5);
    IntMatrix* bands[] = {&b.hh, &b.hl, &b.lh};
    bands[rng() % 3]->at(r, c) += (rng() & 1) ? 2 : -2;
    const IntMatrix y = reconstruct_2d(b);
    for (int i = 0; i < x.rows; ++i)
      for (int j = 0; j < x.cols; ++j)
        if (i / 2 != r || j / 2 != c) REQUIRE(y.at(i, j) == x.at(i, j));
  }
}

TEST_CASE("thread count does not change results") {
  std::mt19937_64 rng(5);
  const IntMatrix x = revmark::testing::random_matrix(rng, 64, 94, 0, 255);
  const Subbands one = decompose_2d(x, 1);
  for (int threads : {2, 3, 7, 64}) {
    CHECK(decompose_2d(x, threads) == one);
    CHECK(reconstruct_2d(one, threads) == x);
  }
}

TEST_CASE("shape errors") {
  CHECK_THROWS_AS(decompose_2d(IntMatrix(3, 4)), Error);
  Subbands bad{IntMatrix(2, 2), IntMatrix(2, 2), IntMatrix(2, 3), IntMatrix(2, 2)};
  CHECK_THROWS_AS(reconstruct_2d(bad), Error);
}
