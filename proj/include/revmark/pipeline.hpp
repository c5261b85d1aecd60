#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "revmark/image.hpp"
#include "revmark/layer1.hpp"

namespace revmark {

struct EmbedConfig {
  int blockSize = 5;
  int initialThreshold = 4;
  int maxThreshold = layer1::kMaxThreshold;
  layer1::ScrambleKey key{};
  // Worker threads for the wavelet passes. Output is identical for any value.
  int threads = 1;

  void validate() const;
};

struct EmbedResult {
  GrayImage watermarked;
  QualityReport quality;
  int threshold = 0;           // S that avoided overflow
  int attempts = 0;            // narrowing/embedding rounds run
  std::size_t payloadBits = 0;
  std::size_t capacityBits = 0;
};

struct BlockCoord {
  int row = 0;
  int col = 0;

  friend bool operator==(const BlockCoord&, const BlockCoord&) = default;
};

// A parity mismatch in one block can originate in any block that shares a
// 2x4 pixel footprint of a wavelet coefficient pair with it, since removing
// layer 2 redistributes a tamper across that footprint. tamperMap therefore
// marks every block sharing a footprint with a mismatched block, plus the
// footprints of stray layer-2 carriers; parityMismatchMap holds the raw
// per-block comparison.
struct VerificationReport {
  bool authentic = false;
  std::size_t mismatchCount = 0;  // 1-bits of parityMismatchMap
  BitGrid tamperMap;
  std::vector<BlockCoord> tamperBlocks;  // 1-bits of tamperMap, raster order
  bool extractionHealthy = false;
  std::string extractionError;  // empty when healthy
  BitGrid parityMismatchMap;
  std::size_t strayCarriers = 0;
};

struct DecodedOverhead {
  layer1::BookKeeping bookKeeping;
  layer1::LocationMap locationMap;
};

struct Verification {
  VerificationReport report;
  GrayImage layer1Image;
  std::optional<DecodedOverhead> overhead;
};

// Expected scrambled watermark for an image of the given size.
layer1::WatermarkPlane expected_plane(int width, int height, const BitGrid& logo,
                                      const EmbedConfig& cfg);

EmbedResult embed(const GrayImage& original, const BitGrid& logo, const EmbedConfig& cfg);
Verification verify(const GrayImage& watermarked, const BitGrid& logo, const EmbedConfig& cfg);
GrayImage recover(const GrayImage& watermarked, const BitGrid& logo, const EmbedConfig& cfg);

}  // namespace revmark
