#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "revmark/image.hpp"

namespace revmark::layer1 {

struct PixelCoord {
  std::uint32_t row = 0;
  std::uint32_t col = 0;

  friend bool operator==(const PixelCoord&, const PixelCoord&) = default;
};

// Shifting threshold plus the pixels moved by range narrowing, in raster order.
struct BookKeeping {
  int threshold = 0;
  std::vector<PixelCoord> shifted;

  friend bool operator==(const BookKeeping&, const BookKeeping&) = default;
};

// One watermark bit per full m x m block.
struct WatermarkPlane : BitGrid {
  using BitGrid::BitGrid;
  WatermarkPlane() = default;
  explicit WatermarkPlane(BitGrid g) : BitGrid(std::move(g)) {}
};

// One bit per full block: 1 where layer 1 incremented the centre pixel.
struct LocationMap : BitGrid {
  using BitGrid::BitGrid;
  LocationMap() = default;
  explicit LocationMap(BitGrid g) : BitGrid(std::move(g)) {}
};

struct ScrambleKey {
  std::uint64_t seed = 0;
};

struct GridShape {
  int rows = 0;
  int cols = 0;

  friend bool operator==(const GridShape&, const GridShape&) = default;
};

inline constexpr int kMaxThreshold = 63;

// Full-block grid: (floor(height / m), floor(width / m)). Throws unless m is odd and >= 3.
GridShape block_grid(int width, int height, int block_size);
void check_block_size(int block_size);

std::pair<GrayImage, BookKeeping> narrow_range(const GrayImage& img, int threshold);
GrayImage restore_range(const GrayImage& img, const BookKeeping& bk);

WatermarkPlane tile_logo(const BitGrid& logo, GridShape grid);

struct PrngStep {
  std::uint64_t state;
  std::uint64_t word;
};

// splitmix64 step.
PrngStep prng_next(std::uint64_t state) noexcept;

WatermarkPlane scramble_plane(const WatermarkPlane& plane, ScrambleKey key);
WatermarkPlane unscramble_plane(const WatermarkPlane& plane, ScrambleKey key);

std::pair<GrayImage, LocationMap> embed_layer1(const GrayImage& img, const WatermarkPlane& plane,
                                               int block_size);
WatermarkPlane extract_plane(const GrayImage& img, int block_size);
GrayImage restore_lsbs(const GrayImage& img, const LocationMap& lmap, int block_size);

}  // namespace revmark::layer1
