#include "revmark/pipeline.hpp"

#include <algorithm>
#include <string>

#include "revmark/error.hpp"
#include "revmark/iwt.hpp"
#include "revmark/layer2.hpp"
#include "revmark/overhead.hpp"

namespace revmark {

namespace {

// Largest top-left region with even dimensions; the odd trailing row/column
// bypasses the wavelet layer.
IntMatrix even_region(const GrayImage& img) {
  IntMatrix m(img.height() & ~1, img.width() & ~1);
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c) m.at(r, c) = img.at(r, c);
  return m;
}

// Writes `region` over the top-left of `base`. Returns false if any value
// leaves [0, 255]; out-of-range values are clamped in that case.
bool paste_region(GrayImage& base, const IntMatrix& region) {
  bool in_range = true;
  for (int r = 0; r < region.rows; ++r) {
    for (int c = 0; c < region.cols; ++c) {
      std::int32_t v = region.at(r, c);
      if (v < 0 || v > 255) {
        in_range = false;
        v = v < 0 ? 0 : 255;
      }
      base.at(r, c) = static_cast<std::uint8_t>(v);
    }
  }
  return in_range;
}

struct PixelRect {
  int row0, row1, col0, col1;  // inclusive
};

// Pixels whose values depend on the coefficient pair covering (row, col).
PixelRect pair_footprint(int row, int col, int region_rows, int region_cols) {
  if (row >= region_rows || col >= region_cols) return {row, row, col, col};
  const int r0 = row & ~1;
  const int c0 = col & ~3;
  return {r0, r0 + 1, c0, std::min(c0 + 3, region_cols - 1)};
}

void mark_blocks(BitGrid& map, const PixelRect& rect, int m) {
  for (int i = rect.row0 / m; i <= rect.row1 / m && i < map.rows; ++i)
    for (int j = rect.col0 / m; j <= rect.col1 / m && j < map.cols; ++j) map.at(i, j) = 1;
}

}  // namespace

void EmbedConfig::validate() const {
  layer1::check_block_size(blockSize);
  if (initialThreshold < 1 || maxThreshold > layer1::kMaxThreshold ||
      initialThreshold > maxThreshold)
    throw Error(ErrorCode::ThresholdOutOfRange,
                "need 1 <= S0 <= max <= 63, got S0 = " + std::to_string(initialThreshold) +
                    ", max = " + std::to_string(maxThreshold));
  if (threads < 1) throw Error(ErrorCode::InvalidArgument, "threads must be >= 1");
}

layer1::WatermarkPlane expected_plane(int width, int height, const BitGrid& logo,
                                      const EmbedConfig& cfg) {
  const layer1::GridShape grid = layer1::block_grid(width, height, cfg.blockSize);
  return layer1::scramble_plane(layer1::tile_logo(logo, grid), cfg.key);
}

EmbedResult embed(const GrayImage& original, const BitGrid& logo, const EmbedConfig& cfg) {
  cfg.validate();
  if (original.width() < 2 * cfg.blockSize || original.height() < 2 * cfg.blockSize)
    throw Error(ErrorCode::ImageTooSmall,
                std::to_string(original.width()) + "x" + std::to_string(original.height()) +
                    " is smaller than two blocks per side");
  const layer1::WatermarkPlane plane =
      expected_plane(original.width(), original.height(), logo, cfg);

  EmbedResult result;
  for (int s = cfg.initialThreshold; s <= cfg.maxThreshold; ++s) {
    ++result.attempts;
    auto [narrowed, bk] = layer1::narrow_range(original, s);
    auto [marked, lmap] = layer1::embed_layer1(narrowed, plane, cfg.blockSize);

    const iwt::Subbands bands = iwt::decompose_2d(even_region(marked), cfg.threads);
    const overhead::OverheadBitstream payload = overhead::encode_overhead(bk, lmap);
    const iwt::Subbands emptied = layer2::empty_bins(bands);
    const iwt::Subbands carrying = layer2::embed_bits(emptied, payload);

    GrayImage watermarked = marked;
    if (!paste_region(watermarked, iwt::reconstruct_2d(carrying, cfg.threads))) continue;

    result.watermarked = std::move(watermarked);
    result.quality = psnr(original, result.watermarked);
    result.threshold = s;
    result.payloadBits = payload.bits.size();
    result.capacityBits = layer2::capacity(emptied);
    return result;
  }
  throw Error(ErrorCode::OverflowUnrecoverable,
              "pixels still overflow with S = " + std::to_string(cfg.maxThreshold));
}

Verification verify(const GrayImage& watermarked, const BitGrid& logo, const EmbedConfig& cfg) {
  cfg.validate();
  const int m = cfg.blockSize;
  const layer1::GridShape grid = layer1::block_grid(watermarked.width(), watermarked.height(), m);

  Verification out;
  VerificationReport& report = out.report;
  report.extractionHealthy = true;
  const auto unhealthy = [&](const std::string& why) {
    report.extractionHealthy = false;
    if (report.extractionError.empty()) report.extractionError = why;
  };

  const IntMatrix region = even_region(watermarked);
  const iwt::Subbands bands = iwt::decompose_2d(region, cfg.threads);
  report.tamperMap = BitGrid(grid.rows, grid.cols);
  try {
    const layer2::Extraction extraction = layer2::extract_with_position(bands);
    report.strayCarriers =
        layer2::stray_carriers(bands, extraction.positionsScanned).size();
    auto [bk, lmap] = overhead::decode_overhead(extraction.stream, grid);
    for (const layer1::PixelCoord& p : bk.shifted)
      if (p.row >= static_cast<std::uint32_t>(watermarked.height()) ||
          p.col >= static_cast<std::uint32_t>(watermarked.width()))
        throw Error(ErrorCode::MalformedOverhead, "shifted pixel outside image");
    out.overhead = DecodedOverhead{std::move(bk), std::move(lmap)};
  } catch (const Error& e) {
    unhealthy(e.what());
  }
  if (report.strayCarriers > 0)
    unhealthy(std::to_string(report.strayCarriers) + " carrier value(s) past the payload end");

  out.layer1Image = watermarked;
  if (!paste_region(out.layer1Image, iwt::reconstruct_2d(layer2::recover_bands(bands), cfg.threads)))
    unhealthy("layer-2 removal produced pixels outside [0, 255]");

  const layer1::WatermarkPlane extracted = layer1::extract_plane(out.layer1Image, m);
  const layer1::WatermarkPlane expected =
      expected_plane(watermarked.width(), watermarked.height(), logo, cfg);
  report.parityMismatchMap = BitGrid(grid.rows, grid.cols);
  for (int i = 0; i < grid.rows; ++i) {
    for (int j = 0; j < grid.cols; ++j) {
      if (extracted.at(i, j) == expected.at(i, j)) continue;
      report.parityMismatchMap.at(i, j) = 1;
      ++report.mismatchCount;
      for (int r = i * m; r < (i + 1) * m; ++r)
        for (int c = j * m; c < (j + 1) * m; ++c)
          mark_blocks(report.tamperMap, pair_footprint(r, c, region.rows, region.cols), m);
    }
  }
  for (int i = 0; i < grid.rows; ++i)
    for (int j = 0; j < grid.cols; ++j)
      if (report.tamperMap.at(i, j)) report.tamperBlocks.push_back({i, j});
  report.authentic = report.mismatchCount == 0 && report.extractionHealthy;
  return out;
}

GrayImage recover(const GrayImage& watermarked, const BitGrid& logo, const EmbedConfig& cfg) {
  Verification v = verify(watermarked, logo, cfg);
  if (!v.report.authentic || !v.overhead)
    throw Error(ErrorCode::NotAuthentic,
                std::to_string(v.report.mismatchCount) + " block(s) fail verification" +
                    (v.report.extractionHealthy ? "" : "; " + v.report.extractionError));
  const GrayImage unmarked =
      layer1::restore_lsbs(v.layer1Image, v.overhead->locationMap, cfg.blockSize);
  return layer1::restore_range(unmarked, v.overhead->bookKeeping);
}

}  // namespace revmark
