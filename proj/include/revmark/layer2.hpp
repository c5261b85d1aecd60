#pragma once

#include <cstddef>
#include <vector>

#include "revmark/image.hpp"
#include "revmark/iwt.hpp"
#include "revmark/overhead.hpp"

namespace revmark::layer2 {

// Per-row differences of paired columns (2j, 2j+1): band(i, 2j+1) - band(i, 2j).
// Column 2j+1 is the modified ("even-line") member of each pair; an odd
// trailing column is never paired.
using DiffImage = IntMatrix;

enum class Band { HH, HL, LH };

struct ScanPosition {
  Band band;
  int row;
  int pair;  // pair index j: columns (2j, 2j+1)

  friend bool operator==(const ScanPosition&, const ScanPosition&) = default;
};

// Carrier positions a payload of `bitsPlaced` bits occupies, in scan order:
// HH, then HL, then LH, row-major within each band.
struct EmbedPlan {
  std::vector<ScanPosition> scanOrder;
  std::size_t bitsPlaced = 0;
};

DiffImage difference_image(const IntMatrix& band);

iwt::Subbands empty_bins(const iwt::Subbands& bands);

// Number of diff values equal to +-1 across HH, HL and LH.
std::size_t capacity(const iwt::Subbands& bands);

EmbedPlan plan_embedding(const iwt::Subbands& bands, std::size_t payload_bits);
iwt::Subbands embed_bits(const iwt::Subbands& bands, const overhead::OverheadBitstream& payload);

struct Extraction {
  overhead::OverheadBitstream stream;
  std::size_t positionsScanned = 0;  // paired positions visited, in scan order
};

// Reads the 32-bit length field, then exactly that many further bits.
Extraction extract_with_position(const iwt::Subbands& bands);
overhead::OverheadBitstream extract_bits(const iwt::Subbands& bands);

// Pairs past the end of the payload whose difference is +-2. A valid
// embedding never leaves such a value there.
std::vector<ScanPosition> stray_carriers(const iwt::Subbands& bands, std::size_t positionsScanned);

// Undoes payload embedding and bin emptying in one pass.
iwt::Subbands recover_bands(const iwt::Subbands& bands);

}  // namespace revmark::layer2
