#pragma once

// Metrics reports for the four experiment images and their JSON / CSV
// serializations. Requires nlohmann/json.

#include <array>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cubecipher/analysis.hpp"
#include "cubecipher/pipeline.hpp"

namespace cubecipher {

struct ImageMetrics {
  std::string label;        // A, B, C, D for experiment rows
  std::string description;  // original, aes_only, rotated, integrated
  std::size_t width = 0;
  std::size_t height = 0;
  std::array<CorrelationResult, 4> correlations{};
  EntropyResult entropy;
  Histogram histogram;
};

struct MetricsReport {
  std::uint64_t seed = 0;
  std::size_t pairs = kDefaultPairCount;
  std::optional<CaseConfig> case_config;
  std::vector<ImageMetrics> images;
  // NPCR/UACI between integrated ciphertexts of plaintexts differing in one pixel.
  std::optional<DifferentialResult> differential;
};

inline ImageMetrics measure(const Image& img, std::string label, std::string description,
                            std::size_t n_pairs, std::uint64_t seed) {
  ImageMetrics m;
  m.label = std::move(label);
  m.description = std::move(description);
  m.width = img.width();
  m.height = img.height();
  for (std::size_t i = 0; i < kAllOrientations.size(); ++i) {
    m.correlations[i] = correlation(img, kAllOrientations[i], n_pairs, seed);
  }
  m.histogram = histogram(img);
  m.entropy = entropy(m.histogram);
  return m;
}

inline MetricsReport report(const ExperimentBundle& bundle, std::size_t n_pairs, std::uint64_t seed) {
  MetricsReport r;
  r.seed = seed;
  r.pairs = n_pairs;
  r.case_config = bundle.case_config;
  r.images.push_back(measure(bundle.original, "A", "original", n_pairs, seed));
  r.images.push_back(measure(cipher_as_image(bundle.aes_only), "B", "aes_only", n_pairs, seed));
  r.images.push_back(measure(bundle.rotated, "C", "rotated", n_pairs, seed));
  r.images.push_back(measure(cipher_as_image(bundle.integrated), "D", "integrated", n_pairs, seed));
  return r;
}

/// Encrypts `img` and a copy with one pixel's lowest bit flipped (position
/// drawn from `seed`), and compares the two ciphertexts.
inline DifferentialResult one_pixel_differential(const Image& img, const SecretKey& key,
                                                 std::size_t block_size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Image changed = img;
  const std::uint64_t pos = detail::uniform_below(rng, changed.size());
  changed.pixels()[pos] ^= 0x01;
  return differential(cipher_as_image(encrypt(img, key, block_size)),
                      cipher_as_image(encrypt(changed, key, block_size)));
}

namespace detail {

inline nlohmann::json coefficient_json(const CorrelationResult& c) {
  if (!c.coefficient) return "undefined";
  return *c.coefficient;
}

inline std::string coefficient_text(const std::optional<double>& v, const char* fmt = "%.6f") {
  if (!v) return "undefined";
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, *v);
  return buf;
}

}  // namespace detail

inline nlohmann::json to_json(const MetricsReport& r) {
  nlohmann::json j;
  j["seed"] = r.seed;
  j["pairs"] = r.pairs;
  if (r.case_config) {
    const CaseConfig& c = *r.case_config;
    j["case"] = {{"block_size", c.block_size},
                 {"blocks_across", c.blocks_across},
                 {"blocks_down", c.blocks_down},
                 {"conformed_width", c.conformed_width},
                 {"conformed_height", c.conformed_height},
                 {"face_block_cols", c.face_grid.cols},
                 {"face_block_rows", c.face_grid.rows}};
  }
  nlohmann::json images = nlohmann::json::array();
  for (const ImageMetrics& m : r.images) {
    nlohmann::json corr = nlohmann::json::object();
    for (const CorrelationResult& c : m.correlations) {
      corr[std::string(orientation_name(c.orientation))] = detail::coefficient_json(c);
    }
    images.push_back({{"label", m.label},
                      {"description", m.description},
                      {"width", m.width},
                      {"height", m.height},
                      {"correlation", corr},
                      {"entropy", m.entropy.bits},
                      {"histogram", m.histogram.counts}});
  }
  j["images"] = images;
  if (r.differential) {
    j["differential"] = {{"metric", "npcr_uaci_one_pixel"},
                         {"npcr", r.differential->npcr},
                         {"uaci", r.differential->uaci}};
  }
  return j;
}

inline constexpr const char* kCsvHeader = "image,horizontal,vertical,diagonal,anti_diagonal,entropy";

/// One row per image: label, four correlation coefficients, entropy.
inline std::string to_csv(const MetricsReport& r) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const ImageMetrics& m : r.images) {
    out += m.label;
    for (const CorrelationResult& c : m.correlations) out += "," + detail::coefficient_text(c.coefficient);
    out += "," + detail::coefficient_text(m.entropy.bits) + "\n";
  }
  return out;
}

/// Two-column (x, y) dump of a pair sample for scatter plotting.
inline std::string pairs_csv(const PairSample& s) {
  std::string out = "x,y\n";
  for (std::size_t j = 0; j < s.size(); ++j) {
    out += std::to_string(s.x[j]) + "," + std::to_string(s.y[j]) + "\n";
  }
  return out;
}

}  // namespace cubecipher
