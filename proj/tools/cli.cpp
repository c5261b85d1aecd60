#include "cli.hpp"

#include <cstdlib>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "revmark/error.hpp"
#include "revmark/pipeline.hpp"

namespace revmark::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string input;
  std::string output;
  std::string logo;
  std::string reference;
  std::string map_path;
  std::string overlay_path;
  std::string key_text;
  int block_size = 5;
  int threshold = 4;
  int threads = 1;
  std::string format = "text";
};

std::uint64_t parse_key(const std::string& text) {
  if (text.empty()) throw Error(ErrorCode::InvalidArgument, "empty key");
  const bool hex = text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X');
  const std::string digits = hex ? text.substr(2) : text;
  std::size_t used = 0;
  std::uint64_t value = 0;
  try {
    value = std::stoull(digits, &used, hex ? 16 : 10);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != digits.size() || digits.front() == '-' || digits.front() == '+')
    throw Error(ErrorCode::InvalidArgument, "key '" + text + "' is not a 64-bit decimal or 0x-hex value");
  return value;
}

EmbedConfig make_config(const Options& o) {
  std::string key = o.key_text;
  if (key.empty()) {
    const char* env = std::getenv("REVMARK_KEY");
    if (env == nullptr || *env == '\0')
      throw Error(ErrorCode::InvalidArgument, "--key is required (or set REVMARK_KEY)");
    key = env;
  }
  EmbedConfig cfg;
  cfg.blockSize = o.block_size;
  cfg.initialThreshold = o.threshold;
  cfg.threads = o.threads;
  cfg.key.seed = parse_key(key);
  cfg.validate();
  return cfg;
}

json psnr_json(const QualityReport& q) {
  json j;
  j["mse"] = q.mse;
  j["psnr"] = q.infinite() ? json("inf") : json(q.psnr);
  return j;
}

std::string psnr_text(const QualityReport& q) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(4);
  if (q.infinite())
    s << "PSNR inf dB";
  else
    s << "PSNR " << q.psnr << " dB";
  s << "  MSE " << q.mse;
  return s.str();
}

json report_json(const VerificationReport& r) {
  json j;
  j["authentic"] = r.authentic;
  j["mismatchCount"] = r.mismatchCount;
  j["extractionHealthy"] = r.extractionHealthy;
  j["extractionError"] = r.extractionError;
  j["strayCarriers"] = r.strayCarriers;
  j["grid"] = {r.tamperMap.rows, r.tamperMap.cols};
  json blocks = json::array();
  for (const BlockCoord& b : r.tamperBlocks) blocks.push_back({b.row, b.col});
  j["tamperBlocks"] = std::move(blocks);
  json rows = json::array();
  for (int i = 0; i < r.tamperMap.rows; ++i) {
    std::string line;
    for (int c = 0; c < r.tamperMap.cols; ++c) line += r.tamperMap.at(i, c) ? '1' : '0';
    rows.push_back(std::move(line));
  }
  j["tamperMap"] = std::move(rows);
  return j;
}

void print_report(const VerificationReport& r, const Options& o, std::ostream& out) {
  if (o.format == "json") {
    out << report_json(r).dump(2) << "\n";
    return;
  }
  out << (r.authentic ? "authentic" : "NOT authentic") << "\n";
  out << "parity mismatches: " << r.mismatchCount << " of " << r.tamperMap.rows * r.tamperMap.cols
      << " blocks\n";
  out << "flagged blocks: " << r.tamperBlocks.size() << "\n";
  if (!r.extractionHealthy) out << "overhead: " << r.extractionError << "\n";
}

// One pixel per block: flagged 255, others 0.
GrayImage tamper_map_image(const BitGrid& map) {
  GrayImage img(map.cols, map.rows);
  for (int i = 0; i < map.rows; ++i)
    for (int j = 0; j < map.cols; ++j) img.at(i, j) = map.at(i, j) ? 255 : 0;
  return img;
}

// Watermarked image with flagged blocks painted white.
GrayImage tamper_overlay(GrayImage base, const BitGrid& map, int m) {
  for (int i = 0; i < map.rows; ++i)
    for (int j = 0; j < map.cols; ++j)
      if (map.at(i, j))
        for (int r = i * m; r < (i + 1) * m; ++r)
          for (int c = j * m; c < (j + 1) * m; ++c) base.at(r, c) = 255;
  return base;
}

int do_embed(const Options& o, std::ostream& out) {
  const EmbedConfig cfg = make_config(o);
  const EmbedResult r = embed(load_image(o.input), load_logo(o.logo), cfg);
  save_image(r.watermarked, o.output);
  if (o.format == "json") {
    json j = psnr_json(r.quality);
    j["threshold"] = r.threshold;
    j["attempts"] = r.attempts;
    j["payloadBits"] = r.payloadBits;
    j["capacityBits"] = r.capacityBits;
    out << j.dump(2) << "\n";
  } else {
    out << psnr_text(r.quality) << "\n";
    out << "threshold S=" << r.threshold << "  payload " << r.payloadBits << " of "
        << r.capacityBits << " bits\n";
  }
  return kOk;
}

int do_verify(const Options& o, std::ostream& out, bool localize) {
  const EmbedConfig cfg = make_config(o);
  const GrayImage img = load_image(o.input);
  const Verification v = verify(img, load_logo(o.logo), cfg);
  if (localize) {
    save_image(tamper_map_image(v.report.tamperMap), o.map_path);
    if (!o.overlay_path.empty())
      save_image(tamper_overlay(img, v.report.tamperMap, cfg.blockSize), o.overlay_path);
  }
  print_report(v.report, o, out);
  return v.report.authentic ? kOk : kNotAuthentic;
}

int do_recover(const Options& o, std::ostream& out) {
  const EmbedConfig cfg = make_config(o);
  const GrayImage restored = recover(load_image(o.input), load_logo(o.logo), cfg);
  save_image(restored, o.output);
  out << "recovered " << o.output << "\n";
  return kOk;
}

int do_metrics(const Options& o, std::ostream& out) {
  const QualityReport q = psnr(load_image(o.reference), load_image(o.input));
  if (o.format == "json")
    out << psnr_json(q).dump(2) << "\n";
  else
    out << psnr_text(q) << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reversible image authentication watermark with tamper localization", "revmark"};
  app.require_subcommand(1);
  Options o;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--in", o.input, "Input PGM")->required();
    sub->add_option("--logo", o.logo, "Logo (PBM, or PGM thresholded at 128)")->required();
    sub->add_option("--key", o.key_text, "Scramble key, decimal or 0x-hex (env REVMARK_KEY)");
    sub->add_option("--block", o.block_size, "Block size m (odd, >= 3)")->capture_default_str();
    sub->add_option("--threads", o.threads, "Worker threads for the wavelet passes")
        ->capture_default_str();
    sub->add_option("--format", o.format, "Report format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
  };

  CLI::App* embed_cmd = app.add_subcommand("embed", "Watermark an image");
  add_common(embed_cmd);
  embed_cmd->add_option("--out", o.output, "Watermarked PGM")->required();
  embed_cmd->add_option("--threshold", o.threshold, "Initial shifting threshold S0")
      ->capture_default_str();

  CLI::App* verify_cmd = app.add_subcommand("verify", "Check authenticity");
  add_common(verify_cmd);

  CLI::App* localize_cmd = app.add_subcommand("localize", "Verify and write tamper maps");
  add_common(localize_cmd);
  localize_cmd->add_option("--map", o.map_path, "Tamper map PGM, one pixel per block")->required();
  localize_cmd->add_option("--overlay", o.overlay_path, "Full-size overlay PGM");

  CLI::App* recover_cmd = app.add_subcommand("recover", "Restore the original image");
  add_common(recover_cmd);
  recover_cmd->add_option("--out", o.output, "Recovered PGM")->required();

  CLI::App* metrics_cmd = app.add_subcommand("metrics", "PSNR/MSE between two images");
  metrics_cmd->add_option("--ref", o.reference, "Reference PGM")->required();
  metrics_cmd->add_option("--in", o.input, "Compared PGM")->required();
  metrics_cmd->add_option("--format", o.format, "Report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "InvalidArgument: " << e.what() << "\n";
    return kFailure;
  }

  try {
    if (*embed_cmd) return do_embed(o, out);
    if (*verify_cmd) return do_verify(o, out, false);
    if (*localize_cmd) return do_verify(o, out, true);
    if (*recover_cmd) return do_recover(o, out);
    if (*metrics_cmd) return do_metrics(o, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return e.code() == ErrorCode::NotAuthentic ? kRecoveryRefused : kFailure;
  }
  return kFailure;
}

}  // namespace revmark::cli
