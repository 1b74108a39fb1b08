// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "cubecipher/cubecipher.hpp"
#include "cubecipher/report.hpp"

using namespace cubecipher;

namespace {

constexpr std::array<std::size_t, 4> kTableCases{2, 3, 5, 6};
constexpr const char* kNaturalKey = "magic cube acceptance key";

struct Outcome {
  bool pass;
  std::string detail;
};

Image random_image(std::mt19937_64& rng, std::size_t w, std::size_t h) {
  std::vector<std::uint8_t> px(w * h);
  for (auto& p : px) p = static_cast<std::uint8_t>(rng());
  return Image(w, h, std::move(px));
}

SecretKey random_key(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  std::vector<std::uint8_t> k(lo + rng() % (hi - lo + 1));
  for (auto& b : k) b = static_cast<std::uint8_t>(rng());
  return SecretKey(std::move(k));
}

Image natural_image() { return read_image(std::string(CUBECIPHER_TEST_DATA) + "/camera_300.pgm"); }

double mean_correlation(const Image& img, Orientation o, int seeds) {
  double sum = 0;
  for (int s = 0; s < seeds; ++s) {
    const auto r = correlation(img, o, kDefaultPairCount, static_cast<std::uint64_t>(s));
    sum += r.coefficient.value_or(std::nan(""));
  }
  return sum / seeds;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// 1. Round trip for every block-size case.
Outcome round_trip() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(101);
  int failures = 0, trials = 0;
  for (std::size_t b : kTableCases) {
    for (int t = 0; t < 100; ++t, ++trials) {
      const Image img = random_image(rng, 1 + rng() % 64, 1 + rng() % 64);
      const SecretKey key = random_key(rng, 1, 32);
      if (decrypt(encrypt(img, key, b), key) != img) ++failures;
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {failures == 0 && secs < 60.0,
          std::to_string(trials) + " trials, " + std::to_string(failures) + " mismatches, " + fmt("%.2f s", secs)};
}

// 2. Rotation preserves histogram and entropy exactly.
Outcome permutation_invariance() {
  const Image natural = natural_image();
  std::mt19937_64 rng(202);
  double worst = 0;
  bool hist_ok = true;
  int checked = 0;
  for (std::size_t b : kTableCases) {
    std::vector<Image> inputs{natural};
    for (int t = 0; t < 10; ++t) inputs.push_back(random_image(rng, 1 + rng() % 80, 1 + rng() % 80));
    for (const Image& img : inputs) {
      const ExperimentBundle bundle = run_experiment(img, SecretKey(kNaturalKey), b);
      hist_ok &= histogram(bundle.rotated) == histogram(bundle.original);
      worst = std::max(worst, std::abs(entropy(bundle.rotated).bits - entropy(bundle.original).bits));
      ++checked;
    }
  }
  return {hist_ok && worst <= 1e-12,
          std::to_string(checked) + " images, histograms " + (hist_ok ? "equal" : "DIFFER") +
              ", max entropy delta " + fmt("%.3g", worst)};
}

// 3. Correlation magnitudes on the natural image, 10 seeds.
Outcome correlation_magnitudes() {
  const Image img = natural_image();
  const SecretKey key(kNaturalKey);
  bool ok = true;
  std::string detail;
  for (std::size_t b : kTableCases) {
    const ExperimentBundle bundle = run_experiment(img, key, b);
    const double orig = mean_correlation(bundle.original, Orientation::horizontal, 10);
    const double rot = mean_correlation(bundle.rotated, Orientation::horizontal, 10);
    const Image cipher = cipher_as_image(bundle.integrated);
    double worst_cipher = 0;
    for (Orientation o : kAllOrientations) worst_cipher = std::max(worst_cipher, std::abs(mean_correlation(cipher, o, 10)));
    ok &= orig > 0.9 && rot > 0.2 && rot < 0.9 && rot < orig && worst_cipher < 0.07;
    detail += "b" + std::to_string(b) + ": A " + fmt("%.4f", orig) + " C " + fmt("%.4f", rot) + " |D| " +
              fmt("%.4f", worst_cipher) + "; ";
  }
  return {ok, detail};
}

// 4. Ciphertext entropy.
Outcome cipher_entropy() {
  const Image img = natural_image();
  double lowest = 8;
  for (std::size_t b : kTableCases) {
    const ExperimentBundle bundle = run_experiment(img, SecretKey(kNaturalKey), b);
    lowest = std::min(lowest, entropy(cipher_as_image(bundle.aes_only)).bits);
    lowest = std::min(lowest, entropy(cipher_as_image(bundle.integrated)).bits);
  }
  return {lowest > 7.9, "lowest AES-only/integrated entropy " + fmt("%.5f", lowest)};
}

// 5. Rotated-image correlation does not rise as blocks shrink.
Outcome block_size_trend() {
  const Image img = natural_image();
  const std::array<std::size_t, 4> order{6, 5, 3, 2};
  std::vector<double> values;
  std::string detail;
  for (std::size_t b : order) {
    const ExperimentBundle bundle = run_experiment(img, SecretKey(kNaturalKey), b);
    values.push_back(mean_correlation(bundle.rotated, Orientation::horizontal, 10));
    detail += "b" + std::to_string(b) + " " + fmt("%.4f", values.back()) + " ";
  }
  bool ok = true;
  for (std::size_t i = 1; i < values.size(); ++i) ok &= values[i] <= values[i - 1] + 0.05;
  return {ok, detail};
}

// 6. Exhaustive-pair correlation against a direct floating-point evaluation.
double brute_force_eq1(const Image& img, Orientation o) {
  const int dr = o == Orientation::horizontal ? 0 : 1;
  const int dc = o == Orientation::vertical ? 0 : (o == Orientation::anti_diagonal ? -1 : 1);
  long double n = 0, sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (int r = 0; r < static_cast<int>(img.height()); ++r) {
    for (int c = 0; c < static_cast<int>(img.width()); ++c) {
      const int r2 = r + dr, c2 = c + dc;
      if (r2 >= static_cast<int>(img.height()) || c2 < 0 || c2 >= static_cast<int>(img.width())) continue;
      const long double x = img.at(r, c), y = img.at(r2, c2);
      n += 1;
      sx += x;
      sy += y;
      sxx += x * x;
      syy += y * y;
      sxy += x * y;
    }
  }
  return static_cast<double>((n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy)));
}

Outcome correlation_oracle() {
  std::mt19937_64 rng(606);
  int images = 0;
  double worst = 0;
  while (images < 40) {
    const std::size_t w = 3 + rng() % 7, h = 3 + rng() % 7;
    Image img = random_image(rng, w, h);
    if (images % 2) {  // smooth variant so coefficients are far from zero
      for (std::size_t r = 0; r < h; ++r)
        for (std::size_t c = 0; c < w; ++c) img.at(r, c) = static_cast<std::uint8_t>(20 * r + 15 * c + img.at(r, c) % 9);
    }
    bool usable = true;
    for (Orientation o : kAllOrientations) {
      const auto ours = correlation_exhaustive(img, o);
      if (!ours.coefficient) {
        usable = false;
        break;
      }
      worst = std::max(worst, std::abs(*ours.coefficient - brute_force_eq1(img, o)));
    }
    if (usable) ++images;
  }
  return {worst <= 1e-12, std::to_string(images) + " images x 4 orientations, max |delta| " + fmt("%.3g", worst)};
}

// 7. Entropy anchors.
Outcome entropy_anchors() {
  Image uniform(32, 16);
  for (std::size_t i = 0; i < uniform.size(); ++i) uniform.pixels()[i] = static_cast<std::uint8_t>(i % 256);
  const double constant = entropy(Image(30, 30, 123)).bits;
  const double flat = entropy(uniform).bits;
  return {constant == 0.0 && flat == 8.0, "constant " + fmt("%.17g", constant) + ", uniform " + fmt("%.17g", flat)};
}

// 8. AES known answers and avalanche.
Outcome aes_correctness() {
  struct Vector {
    std::vector<std::uint8_t> key;
    AesBlock ct;
  };
  auto seq = [](std::size_t n) {
    std::vector<std::uint8_t> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
  };
  const AesBlock pt{0x00, 0x11, 0x22, 0x33, 0x44, 0x55, 0x66, 0x77, 0x88, 0x99, 0xaa, 0xbb, 0xcc, 0xdd, 0xee, 0xff};
  const std::vector<Vector> vectors{
      {seq(16), {0x69, 0xc4, 0xe0, 0xd8, 0x6a, 0x7b, 0x04, 0x30, 0xd8, 0xcd, 0xb7, 0x80, 0x70, 0xb4, 0xc5, 0x5a}},
      {seq(24), {0xdd, 0xa9, 0x7c, 0xa4, 0x86, 0x4c, 0xdf, 0xe0, 0x6e, 0xaf, 0x70, 0xa0, 0xec, 0x0d, 0x71, 0x91}},
      {seq(32), {0x8e, 0xa2, 0xb7, 0xca, 0x51, 0x67, 0x45, 0xbf, 0xea, 0xfc, 0x49, 0x90, 0x4b, 0x49, 0x60, 0x89}},
  };
  int kat_ok = 0;
  for (const Vector& v : vectors) {
    const Aes aes(v.key);
    kat_ok += aes.encrypt_block(pt) == v.ct && aes.decrypt_block(v.ct) == pt;
  }

  std::mt19937_64 rng(808);
  double total = 0;
  const int trials = 60;
  for (int t = 0; t < trials; ++t) {
    const Image img = random_image(rng, 40, 30);
    const SecretKey key = random_key(rng, 4, 20);
    Image flipped = img;
    const std::size_t pos = rng() % img.size();
    flipped.pixels()[pos] ^= static_cast<std::uint8_t>(1u << (rng() % 8));
    const auto a = aes_encrypt_pixels(img, key).payload;
    const auto b = aes_encrypt_pixels(flipped, key).payload;
    const std::size_t start = pos / kAesBlockBytes * kAesBlockBytes;
    std::size_t bits = 0;
    for (std::size_t i = start; i < a.size(); ++i) bits += std::popcount(static_cast<unsigned>(a[i] ^ b[i]));
    total += static_cast<double>(bits) / (8.0 * static_cast<double>(a.size() - start));
  }
  const double avalanche = 100.0 * total / trials;
  return {kat_ok == 3 && avalanche >= 45 && avalanche <= 55,
          std::to_string(kat_ok) + "/3 FIPS-197 vectors, avalanche " + fmt("%.2f%%", avalanche)};
}

// 9. One-pixel differential through the full pipeline.
Outcome differential_metrics() {
  const Image img = natural_image();
  std::mt19937_64 rng(909);
  double min_npcr = 100, min_uaci = 100, max_uaci = 0, sum_npcr = 0, sum_uaci = 0;
  const int trials = 20;
  for (int t = 0; t < trials; ++t) {
    const std::size_t b = kTableCases[static_cast<std::size_t>(t) % kTableCases.size()];
    const DifferentialResult d = one_pixel_differential(img, random_key(rng, 8, 24), b, rng());
    min_npcr = std::min(min_npcr, d.npcr);
    min_uaci = std::min(min_uaci, d.uaci);
    max_uaci = std::max(max_uaci, d.uaci);
    sum_npcr += d.npcr;
    sum_uaci += d.uaci;
  }
  return {min_npcr > 99 && min_uaci >= 30 && max_uaci <= 37,
          "mean NPCR " + fmt("%.3f%%", sum_npcr / trials) + " (min " + fmt("%.3f", min_npcr) + "), mean UACI " +
              fmt("%.3f%%", sum_uaci / trials) + " (range " + fmt("%.3f", min_uaci) + ".." + fmt("%.3f", max_uaci) + ")"};
}

// 10. Scramble against a literal transcription of the rotation procedure.
Image transcribed_scramble(Image img, std::size_t b, const RotationTable& table, const SecretKey& key) {
  const std::size_t fw = img.width() / 2, fh = img.height() / 3;
  const std::size_t n_horizontal = fw / b, n_column = fh / b;
  std::map<char, std::pair<std::size_t, std::size_t>> origin{
      {'U', {0, 0}}, {'F', {0, fw}}, {'R', {fh, 0}}, {'L', {fh, fw}}, {'D', {2 * fh, 0}}, {'B', {2 * fh, fw}}};
  using Cell = std::pair<std::size_t, std::size_t>;
  auto rotate = [&](const std::vector<Cell>& cells, std::uint32_t times) {
    const std::size_t n = cells.size();
    std::vector<std::vector<std::uint8_t>> blocks(n);
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t r = 0; r < b; ++r)
        for (std::size_t c = 0; c < b; ++c) blocks[p].push_back(img.at(cells[p].first + r, cells[p].second + c));
    for (std::size_t p = 0; p < n; ++p) {
      const Cell dst = cells[(p + times) % n];
      for (std::size_t r = 0; r < b; ++r)
        for (std::size_t c = 0; c < b; ++c) img.at(dst.first + r, dst.second + c) = blocks[p][r * b + c];
    }
  };
  for (std::size_t j = 0; j < key.size(); ++j) {
    const std::size_t column = key[j] % 128;
    for (std::size_t i = 0; i < n_column; ++i) {
      std::vector<Cell> cells;
      for (char f : {'F', 'U', 'B', 'D'})
        for (std::size_t k = 0; k < n_horizontal; ++k) cells.push_back({origin[f].first + i * b, origin[f].second + k * b});
      rotate(cells, table(i, column));
    }
    for (std::size_t i = 0; i < n_horizontal; ++i) {
      std::vector<Cell> cells;
      for (char f : {'F', 'R', 'B', 'L'})
        for (std::size_t k = 0; k < n_column; ++k) cells.push_back({origin[f].first + k * b, origin[f].second + i * b});
      rotate(cells, table(i, column));
    }
  }
  return img;
}

Outcome scramble_oracle() {
  std::mt19937_64 rng(1010);
  int matches = 0;
  const int trials = 80;
  for (int t = 0; t < trials; ++t) {
    const std::size_t b = 1 + rng() % 3, cols = 1 + rng() % 3, rows = 1 + rng() % 3;
    const Image img = random_image(rng, 2 * b * cols, 3 * b * rows);
    const SecretKey key = random_key(rng, 1, 8);
    RotationTable table(std::max(rows, cols), 1u << 16);
    for (std::size_t i = 0; i < table.rows(); ++i)
      for (std::size_t j = 0; j < table.cols(); ++j) table(i, j) = static_cast<std::uint32_t>(rng() % 40);
    const Image ours = merge_faces(scramble(split_faces(img, b), table, key));
    matches += ours == transcribed_scramble(img, b, table, key);
  }
  return {matches == trials, std::to_string(matches) + "/" + std::to_string(trials) + " random (key, table) pairs match"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"1 round trip, all block-size cases", round_trip},
      {"2 rotation preserves histogram and entropy", permutation_invariance},
      {"3 correlation magnitudes on natural image", correlation_magnitudes},
      {"4 ciphertext entropy > 7.9", cipher_entropy},
      {"5 rotated correlation trend over block sizes", block_size_trend},
      {"6 correlation matches brute-force formula", correlation_oracle},
      {"7 entropy anchors 0 and 8", entropy_anchors},
      {"8 AES known answers and avalanche", aes_correctness},
      {"9 one-pixel NPCR/UACI", differential_metrics},
      {"10 scramble matches literal transcription", scramble_oracle},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %s -- %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
