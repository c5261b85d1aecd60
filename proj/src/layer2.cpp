#include "revmark/layer2.hpp"

#include <array>
#include <string>

#include "revmark/error.hpp"

namespace revmark::layer2 {

namespace {

using iwt::Subbands;

IntMatrix& band_ref(Subbands& b, Band band) {
  switch (band) {
    case Band::HH: return b.hh;
    case Band::HL: return b.hl;
    case Band::LH: return b.lh;
  }
  return b.hh;
}

const IntMatrix& band_ref(const Subbands& b, Band band) {
  return band_ref(const_cast<Subbands&>(b), band);
}

constexpr std::array<Band, 3> kScanBands{Band::HH, Band::HL, Band::LH};

std::int32_t pair_diff(const IntMatrix& m, int row, int pair) {
  return m.at(row, 2 * pair + 1) - m.at(row, 2 * pair);
}

// Visits every paired position in scan order; stops when fn returns false.
template <class Fn>
std::size_t scan(const Subbands& bands, Fn&& fn) {
  std::size_t visited = 0;
  for (Band band : kScanBands) {
    const IntMatrix& m = band_ref(bands, band);
    for (int i = 0; i < m.rows; ++i) {
      for (int j = 0; j < m.cols / 2; ++j) {
        ++visited;
        if (!fn(ScanPosition{band, i, j}, pair_diff(m, i, j))) return visited;
      }
    }
  }
  return visited;
}

// Applies step(d) to the modified member of every pair in every detail band.
template <class Step>
Subbands adjust_all(const Subbands& bands, Step&& step) {
  Subbands out = bands;
  for (Band band : kScanBands) {
    IntMatrix& m = band_ref(out, band);
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < m.cols / 2; ++j) m.at(i, 2 * j + 1) += step(pair_diff(m, i, j));
  }
  return out;
}

}  // namespace

DiffImage difference_image(const IntMatrix& band) {
  DiffImage d(band.rows, band.cols / 2);
  for (int i = 0; i < d.rows; ++i)
    for (int j = 0; j < d.cols; ++j) d.at(i, j) = pair_diff(band, i, j);
  return d;
}

Subbands empty_bins(const Subbands& bands) {
  return adjust_all(bands, [](std::int32_t d) { return d >= 2 ? 1 : d <= -2 ? -1 : 0; });
}

std::size_t capacity(const Subbands& bands) {
  std::size_t n = 0;
  scan(bands, [&](const ScanPosition&, std::int32_t d) {
    n += (d == 1 || d == -1);
    return true;
  });
  return n;
}

EmbedPlan plan_embedding(const Subbands& bands, std::size_t payload_bits) {
  EmbedPlan plan;
  if (payload_bits == 0) return plan;
  scan(bands, [&](const ScanPosition& pos, std::int32_t d) {
    if (d == 1 || d == -1) {
      plan.scanOrder.push_back(pos);
      ++plan.bitsPlaced;
    }
    return plan.bitsPlaced < payload_bits;
  });
  if (plan.bitsPlaced < payload_bits) throw InsufficientCapacityError(plan.bitsPlaced, payload_bits);
  return plan;
}

Subbands embed_bits(const Subbands& bands, const overhead::OverheadBitstream& payload) {
  const EmbedPlan plan = plan_embedding(bands, payload.bits.size());
  Subbands out = bands;
  for (std::size_t k = 0; k < plan.bitsPlaced; ++k) {
    if (!payload.bits[k]) continue;
    const ScanPosition& pos = plan.scanOrder[k];
    IntMatrix& m = band_ref(out, pos.band);
    m.at(pos.row, 2 * pos.pair + 1) += pair_diff(m, pos.row, pos.pair) > 0 ? 1 : -1;
  }
  return out;
}

Extraction extract_with_position(const Subbands& bands) {
  Extraction result;
  overhead::Bits& bits = result.stream.bits;
  std::uint64_t wanted = overhead::kLengthFieldBits;
  bool have_length = false;
  result.positionsScanned = scan(bands, [&](const ScanPosition&, std::int32_t d) {
    if (d == 1 || d == -1) {
      bits.push_back(0);
    } else if (d == 2 || d == -2) {
      bits.push_back(1);
    } else {
      return true;
    }
    if (!have_length && bits.size() == overhead::kLengthFieldBits) {
      std::uint64_t length = 0;
      for (std::uint8_t b : bits) length = (length << 1) | b;
      wanted += length;
      have_length = true;
    }
    return bits.size() < wanted;
  });
  if (bits.size() < wanted)
    throw Error(ErrorCode::MalformedOverhead,
                "carriers exhausted after " + std::to_string(bits.size()) + " of " +
                    std::to_string(wanted) + " bits");
  return result;
}

overhead::OverheadBitstream extract_bits(const Subbands& bands) {
  return extract_with_position(bands).stream;
}

std::vector<ScanPosition> stray_carriers(const Subbands& bands, std::size_t positionsScanned) {
  std::vector<ScanPosition> strays;
  std::size_t k = 0;
  scan(bands, [&](const ScanPosition& pos, std::int32_t d) {
    if (k++ >= positionsScanned && (d == 2 || d == -2)) strays.push_back(pos);
    return true;
  });
  return strays;
}

Subbands recover_bands(const Subbands& bands) {
  return adjust_all(bands, [](std::int32_t d) { return d >= 2 ? -1 : d <= -2 ? 1 : 0; });
}

}  // namespace revmark::layer2
