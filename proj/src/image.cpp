#include "revmark/image.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>

#include "revmark/error.hpp"

namespace revmark {

namespace {

struct NetpbmHeader {
  std::string magic;
  int width = 0;
  int height = 0;
  int maxval = 1;
};

class HeaderReader {
 public:
  explicit HeaderReader(const std::vector<char>& buf) : buf_(buf) {}

  std::string magic() {
    if (buf_.size() < 2) fail("missing magic");
    pos_ = 2;
    return std::string(buf_.data(), 2);
  }

  int number() {
    skip_space_and_comments();
    if (pos_ >= buf_.size() || !std::isdigit(static_cast<unsigned char>(buf_[pos_])))
      fail("expected a decimal header field");
    long value = 0;
    while (pos_ < buf_.size() && std::isdigit(static_cast<unsigned char>(buf_[pos_]))) {
      value = value * 10 + (buf_[pos_] - '0');
      if (value > std::numeric_limits<int>::max()) fail("header field too large");
      ++pos_;
    }
    return static_cast<int>(value);
  }

  // Exactly one whitespace byte separates the header from the raster.
  std::size_t raster_offset() {
    if (pos_ >= buf_.size() || !std::isspace(static_cast<unsigned char>(buf_[pos_])))
      fail("missing separator before raster");
    return pos_ + 1;
  }

  [[noreturn]] static void fail(const std::string& what) {
    throw Error(ErrorCode::MalformedFile, what);
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < buf_.size()) {
      const char c = buf_[pos_];
      if (c == '#') {
        while (pos_ < buf_.size() && buf_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<char>& buf_;
  std::size_t pos_ = 0;
};

std::vector<char> read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_all(const std::filesystem::path& path, const std::string& header,
               const std::vector<std::uint8_t>& payload) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot open " + path.string() + " for writing");
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  out.write(reinterpret_cast<const char*>(payload.data()),
            static_cast<std::streamsize>(payload.size()));
  if (!out) throw Error(ErrorCode::IoFailure, "write failed for " + path.string());
}

void check_same_shape(const GrayImage& a, const GrayImage& b) {
  if (a.width() != b.width() || a.height() != b.height())
    throw Error(ErrorCode::DimensionMismatch,
                std::to_string(a.width()) + "x" + std::to_string(a.height()) + " vs " +
                    std::to_string(b.width()) + "x" + std::to_string(b.height()));
}

}  // namespace

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
    : GrayImage(width, height,
                std::vector<std::uint8_t>(static_cast<std::size_t>(width < 0 ? 0 : width) *
                                              static_cast<std::size_t>(height < 0 ? 0 : height),
                                          fill)) {}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width < 0 || height < 0)
    throw Error(ErrorCode::InvalidArgument, "negative image dimensions");
  if (pixels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
    throw Error(ErrorCode::DimensionMismatch, "pixel count does not match width*height");
}

IntMatrix to_matrix(const GrayImage& img) {
  IntMatrix m(img.height(), img.width());
  std::copy(img.pixels().begin(), img.pixels().end(), m.data.begin());
  return m;
}

GrayImage load_image(const std::filesystem::path& path) {
  const std::vector<char> buf = read_all(path);
  HeaderReader reader(buf);
  if (reader.magic() != "P5") HeaderReader::fail("not a binary PGM (P5)");
  const int width = reader.number();
  const int height = reader.number();
  const int maxval = reader.number();
  if (maxval != 255) HeaderReader::fail("maxval must be 255, got " + std::to_string(maxval));
  const std::size_t offset = reader.raster_offset();
  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (buf.size() < offset || buf.size() - offset < count)
    HeaderReader::fail("truncated raster: expected " + std::to_string(count) + " bytes");
  std::vector<std::uint8_t> pixels(buf.begin() + static_cast<std::ptrdiff_t>(offset),
                                   buf.begin() + static_cast<std::ptrdiff_t>(offset + count));
  return GrayImage(width, height, std::move(pixels));
}

void save_image(const GrayImage& img, const std::filesystem::path& path) {
  const std::string header =
      "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  write_all(path, header, img.pixels());
}

BitGrid load_logo(const std::filesystem::path& path) {
  const std::vector<char> buf = read_all(path);
  HeaderReader reader(buf);
  const std::string magic = reader.magic();
  if (magic == "P5") {
    GrayImage gray = load_image(path);
    BitGrid grid(gray.height(), gray.width());
    for (std::size_t i = 0; i < grid.bits.size(); ++i) grid.bits[i] = gray.pixels()[i] >= 128;
    return grid;
  }
  if (magic != "P4") HeaderReader::fail("logo must be P4 (PBM) or P5 (PGM)");
  const int width = reader.number();
  const int height = reader.number();
  const std::size_t offset = reader.raster_offset();
  const std::size_t stride = (static_cast<std::size_t>(width) + 7) / 8;
  if (buf.size() < offset || buf.size() - offset < stride * static_cast<std::size_t>(height))
    HeaderReader::fail("truncated PBM raster");
  BitGrid grid(height, width);
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      const auto byte = static_cast<std::uint8_t>(buf[offset + r * stride + c / 8]);
      grid.at(r, c) = (byte >> (7 - c % 8)) & 1u;
    }
  }
  return grid;
}

void save_pbm(const BitGrid& grid, const std::filesystem::path& path) {
  const std::size_t stride = (static_cast<std::size_t>(grid.cols) + 7) / 8;
  std::vector<std::uint8_t> raster(stride * static_cast<std::size_t>(grid.rows), 0);
  for (int r = 0; r < grid.rows; ++r)
    for (int c = 0; c < grid.cols; ++c)
      if (grid.at(r, c)) raster[r * stride + c / 8] |= static_cast<std::uint8_t>(0x80u >> (c % 8));
  write_all(path, "P4\n" + std::to_string(grid.cols) + " " + std::to_string(grid.rows) + "\n",
            raster);
}

bool QualityReport::infinite() const noexcept { return std::isinf(psnr); }

double mse(const GrayImage& a, const GrayImage& b) {
  check_same_shape(a, b);
  if (a.size() == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int diff = int{a.pixels()[i]} - int{b.pixels()[i]};
    sum += static_cast<double>(diff * diff);
  }
  return sum / static_cast<double>(a.size());
}

double psnr_from_mse(double mse) noexcept {
  return mse == 0.0 ? std::numeric_limits<double>::infinity()
                    : 10.0 * std::log10(255.0 * 255.0 / mse);
}

QualityReport psnr(const GrayImage& a, const GrayImage& b) {
  QualityReport report;
  report.mse = mse(a, b);
  report.psnr = psnr_from_mse(report.mse);
  return report;
}

}  // namespace revmark
