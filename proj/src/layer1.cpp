#include "revmark/layer1.hpp"

#include <numeric>
#include <string>

#include "revmark/error.hpp"

namespace revmark::layer1 {

namespace {

void check_threshold(int threshold) {
  if (threshold < 1 || threshold > kMaxThreshold)
    throw Error(ErrorCode::ThresholdOutOfRange,
                "S = " + std::to_string(threshold) + " outside [1, 63]");
}

void check_grid(const BitGrid& grid, GridShape expected, const char* what) {
  if (grid.rows != expected.rows || grid.cols != expected.cols)
    throw Error(ErrorCode::GridMismatch,
                std::string(what) + " is " + std::to_string(grid.rows) + "x" +
                    std::to_string(grid.cols) + ", image needs " + std::to_string(expected.rows) +
                    "x" + std::to_string(expected.cols));
}

int block_parity(const GrayImage& img, int block_row, int block_col, int m) {
  unsigned sum = 0;
  for (int r = block_row * m; r < (block_row + 1) * m; ++r)
    for (int c = block_col * m; c < (block_col + 1) * m; ++c) sum += img.at(r, c);
  return static_cast<int>(sum & 1u);
}

// Column-major order of `n` cells, permuted in place by keyed Fisher-Yates.
std::vector<std::size_t> scramble_order(std::size_t n, ScrambleKey key) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::uint64_t state = key.seed;
  for (std::size_t i = n; i-- > 1;) {
    const PrngStep step = prng_next(state);
    state = step.state;
    const auto j = static_cast<std::size_t>(step.word % (static_cast<std::uint64_t>(i) + 1));
    std::swap(order[i], order[j]);
  }
  return order;
}

// Row-major storage offset of the k-th cell in column-major order.
std::size_t column_major(const BitGrid& g, std::size_t k) {
  const auto rows = static_cast<std::size_t>(g.rows);
  return (k % rows) * static_cast<std::size_t>(g.cols) + k / rows;
}

}  // namespace

void check_block_size(int block_size) {
  if (block_size < 3 || block_size % 2 == 0)
    throw Error(ErrorCode::InvalidArgument,
                "block size must be odd and >= 3, got " + std::to_string(block_size));
}

GridShape block_grid(int width, int height, int block_size) {
  check_block_size(block_size);
  return {height / block_size, width / block_size};
}

std::pair<GrayImage, BookKeeping> narrow_range(const GrayImage& img, int threshold) {
  check_threshold(threshold);
  GrayImage out = img;
  BookKeeping bk{threshold, {}};
  for (int r = 0; r < img.height(); ++r) {
    for (int c = 0; c < img.width(); ++c) {
      const int x = img.at(r, c);
      if (x <= threshold) {
        out.at(r, c) = static_cast<std::uint8_t>(x + threshold);
      } else if (x >= 255 - threshold) {
        out.at(r, c) = static_cast<std::uint8_t>(x - threshold);
      } else {
        continue;
      }
      bk.shifted.push_back({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c)});
    }
  }
  return {std::move(out), std::move(bk)};
}

GrayImage restore_range(const GrayImage& img, const BookKeeping& bk) {
  check_threshold(bk.threshold);
  const int s = bk.threshold;
  GrayImage out = img;
  for (const PixelCoord& p : bk.shifted) {
    if (p.row >= static_cast<std::uint32_t>(img.height()) ||
        p.col >= static_cast<std::uint32_t>(img.width()))
      throw Error(ErrorCode::MalformedOverhead, "shifted pixel (" + std::to_string(p.row) + ", " +
                                                    std::to_string(p.col) + ") outside image");
    std::uint8_t& v = out.at(static_cast<int>(p.row), static_cast<int>(p.col));
    if (v <= 2 * s) {
      v = static_cast<std::uint8_t>(v - s);
    } else if (v >= 255 - 2 * s) {
      v = static_cast<std::uint8_t>(v + s);
    } else {
      throw Error(ErrorCode::AmbiguousShiftDirection,
                  "pixel (" + std::to_string(p.row) + ", " + std::to_string(p.col) +
                      ") has value " + std::to_string(v) + " outside both shift bands");
    }
  }
  return out;
}

WatermarkPlane tile_logo(const BitGrid& logo, GridShape grid) {
  if (logo.rows <= 0 || logo.cols <= 0) throw Error(ErrorCode::EmptyLogo, "logo has no pixels");
  WatermarkPlane plane(grid.rows, grid.cols);
  for (int r = 0; r < grid.rows; ++r)
    for (int c = 0; c < grid.cols; ++c) plane.at(r, c) = logo.at(r % logo.rows, c % logo.cols);
  return plane;
}

PrngStep prng_next(std::uint64_t state) noexcept {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return {state, z ^ (z >> 31)};
}

WatermarkPlane scramble_plane(const WatermarkPlane& plane, ScrambleKey key) {
  const auto order = scramble_order(plane.bits.size(), key);
  WatermarkPlane out(plane.rows, plane.cols);
  for (std::size_t k = 0; k < order.size(); ++k)
    out.bits[column_major(out, k)] = plane.bits[column_major(plane, order[k])];
  return out;
}

WatermarkPlane unscramble_plane(const WatermarkPlane& plane, ScrambleKey key) {
  const auto order = scramble_order(plane.bits.size(), key);
  WatermarkPlane out(plane.rows, plane.cols);
  for (std::size_t k = 0; k < order.size(); ++k)
    out.bits[column_major(out, order[k])] = plane.bits[column_major(plane, k)];
  return out;
}

std::pair<GrayImage, LocationMap> embed_layer1(const GrayImage& img, const WatermarkPlane& plane,
                                               int block_size) {
  const GridShape grid = block_grid(img.width(), img.height(), block_size);
  check_grid(plane, grid, "watermark plane");
  const int centre = block_size / 2;
  GrayImage out = img;
  LocationMap lmap(grid.rows, grid.cols);
  for (int i = 0; i < grid.rows; ++i) {
    for (int j = 0; j < grid.cols; ++j) {
      const int inc = block_parity(img, i, j, block_size) ^ plane.at(i, j);
      if (inc == 0) continue;
      std::uint8_t& px = out.at(i * block_size + centre, j * block_size + centre);
      if (px == 255)
        throw Error(ErrorCode::InvalidArgument, "centre pixel at 255 has no headroom; narrow first");
      ++px;
      lmap.at(i, j) = 1;
    }
  }
  return {std::move(out), std::move(lmap)};
}

WatermarkPlane extract_plane(const GrayImage& img, int block_size) {
  const GridShape grid = block_grid(img.width(), img.height(), block_size);
  WatermarkPlane plane(grid.rows, grid.cols);
  for (int i = 0; i < grid.rows; ++i)
    for (int j = 0; j < grid.cols; ++j)
      plane.at(i, j) = static_cast<std::uint8_t>(block_parity(img, i, j, block_size));
  return plane;
}

GrayImage restore_lsbs(const GrayImage& img, const LocationMap& lmap, int block_size) {
  const GridShape grid = block_grid(img.width(), img.height(), block_size);
  check_grid(lmap, grid, "location map");
  const int centre = block_size / 2;
  GrayImage out = img;
  for (int i = 0; i < grid.rows; ++i) {
    for (int j = 0; j < grid.cols; ++j) {
      if (!lmap.at(i, j)) continue;
      std::uint8_t& px = out.at(i * block_size + centre, j * block_size + centre);
      if (px == 0)
        throw Error(ErrorCode::CentreUnderflow, "block (" + std::to_string(i) + ", " +
                                                    std::to_string(j) + ") centre is 0");
      --px;
    }
  }
  return out;
}

}  // namespace revmark::layer1
