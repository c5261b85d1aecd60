#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

namespace revmark {

// 8-bit grayscale raster, row-major.
class GrayImage {
 public:
  GrayImage() = default;
  GrayImage(int width, int height, std::uint8_t fill = 0);
  GrayImage(int width, int height, std::vector<std::uint8_t> pixels);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return pixels_.size(); }

  std::uint8_t at(int row, int col) const { return pixels_[index(row, col)]; }
  std::uint8_t& at(int row, int col) { return pixels_[index(row, col)]; }

  const std::vector<std::uint8_t>& pixels() const noexcept { return pixels_; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(col);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

// Signed integer matrix used for wavelet coefficients and pre-clamp pixel data.
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::int32_t> data;

  IntMatrix() = default;
  IntMatrix(int r, int c, std::int32_t fill = 0)
      : rows(r), cols(c), data(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), fill) {}

  std::int32_t at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
  std::int32_t& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

// Binary matrix; every entry is 0 or 1.
struct BitGrid {
  int rows = 0;
  int cols = 0;
  std::vector<std::uint8_t> bits;

  BitGrid() = default;
  BitGrid(int r, int c, std::uint8_t fill = 0)
      : rows(r), cols(c), bits(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), fill) {}

  std::uint8_t at(int r, int c) const { return bits[static_cast<std::size_t>(r) * cols + c]; }
  std::uint8_t& at(int r, int c) { return bits[static_cast<std::size_t>(r) * cols + c]; }

  friend bool operator==(const BitGrid&, const BitGrid&) = default;
};

IntMatrix to_matrix(const GrayImage& img);

// Binary PGM (P5, maxval 255). Comments in the header are skipped on load.
GrayImage load_image(const std::filesystem::path& path);
void save_image(const GrayImage& img, const std::filesystem::path& path);

// Logo input: P5 thresholded at 128 (>= 128 -> 1), or P4 bits taken as stored.
BitGrid load_logo(const std::filesystem::path& path);
void save_pbm(const BitGrid& grid, const std::filesystem::path& path);

struct QualityReport {
  double mse = 0.0;
  double psnr = 0.0;  // +infinity when mse == 0

  bool infinite() const noexcept;
};

// 10 log10(255^2 / mse); +infinity for mse == 0.
double psnr_from_mse(double mse) noexcept;

double mse(const GrayImage& a, const GrayImage& b);
QualityReport psnr(const GrayImage& a, const GrayImage& b);

}  // namespace revmark
