#pragma once

// Statistical measurements used to judge cipher images: grey-level
// histogram, adjacent-pixel correlation, Shannon entropy and the NPCR/UACI
// differential metrics.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cubecipher/errors.hpp"
#include "cubecipher/image.hpp"

namespace cubecipher {

/// Default number of randomly chosen adjacent pairs per correlation.
inline constexpr std::size_t kDefaultPairCount = 2000;

struct Histogram {
  std::array<std::uint64_t, 256> counts{};

  std::uint64_t total() const noexcept {
    std::uint64_t t = 0;
    for (auto c : counts) t += c;
    return t;
  }

  friend bool operator==(const Histogram&, const Histogram&) = default;
};

inline Histogram histogram(const Image& img) {
  Histogram h;
  for (std::uint8_t v : img.pixels()) ++h.counts[v];
  return h;
}

enum class Orientation { horizontal, vertical, diagonal, anti_diagonal };

inline constexpr std::array<Orientation, 4> kAllOrientations{
    Orientation::horizontal, Orientation::vertical, Orientation::diagonal, Orientation::anti_diagonal};

constexpr std::string_view orientation_name(Orientation o) {
  switch (o) {
    case Orientation::horizontal: return "horizontal";
    case Orientation::vertical: return "vertical";
    case Orientation::diagonal: return "diagonal";
    case Orientation::anti_diagonal: return "anti_diagonal";
  }
  return "?";
}

/// Offset (d_row, d_col) from a pixel to its neighbour.
struct NeighbourOffset {
  int d_row;
  int d_col;
};

constexpr NeighbourOffset neighbour_offset(Orientation o) {
  switch (o) {
    case Orientation::horizontal: return {0, 1};
    case Orientation::vertical: return {1, 0};
    case Orientation::diagonal: return {1, 1};
    case Orientation::anti_diagonal: return {1, -1};
  }
  return {0, 0};
}

/// Paired grey levels (x_j, y_j): a pixel and its neighbour.
struct PairSample {
  std::vector<std::uint8_t> x;
  std::vector<std::uint8_t> y;

  std::size_t size() const noexcept { return x.size(); }
};

struct CorrelationResult {
  Orientation orientation = Orientation::horizontal;
  // Empty when either margin of the sample is constant.
  std::optional<double> coefficient;
  std::size_t sample_count = 0;
  std::uint64_t seed = 0;
};

struct EntropyResult {
  double bits = 0.0;
};

struct DifferentialResult {
  double npcr = 0.0;  // percent of positions that differ
  double uaci = 0.0;  // mean |difference| / 255, percent
};

namespace detail {

struct PairRegion {
  std::size_t row_begin, row_end, col_begin, col_end;

  std::size_t count() const noexcept {
    return (row_end > row_begin && col_end > col_begin) ? (row_end - row_begin) * (col_end - col_begin) : 0;
  }
};

inline PairRegion pair_region(const Image& img, Orientation o) {
  const auto [dr, dc] = neighbour_offset(o);
  PairRegion r{0, img.height(), 0, img.width()};
  if (dr > 0) r.row_end = img.height() - 1;
  if (dc > 0) r.col_end = img.width() - 1;
  if (dc < 0) r.col_begin = 1;
  return r;
}

inline std::uint8_t neighbour(const Image& img, std::size_t row, std::size_t col, Orientation o) {
  const auto [dr, dc] = neighbour_offset(o);
  return img.at(row + static_cast<std::size_t>(dr), static_cast<std::size_t>(static_cast<std::ptrdiff_t>(col) + dc));
}

/// Uniform integer in [0, bound) by rejection, independent of the standard
/// library's distribution implementation.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % bound;
}

__extension__ typedef __int128 wide_int;

}  // namespace detail

/// `n_pairs` positions drawn uniformly (with replacement) among the pixels
/// whose neighbour in `o` lies inside the image.
inline PairSample sample_pairs(const Image& img, Orientation o, std::size_t n_pairs, std::uint64_t seed) {
  const detail::PairRegion region = detail::pair_region(img, o);
  if (region.count() == 0) {
    throw DimensionError("image has no adjacent pair in the " + std::string(orientation_name(o)) +
                         " orientation");
  }
  const std::size_t region_width = region.col_end - region.col_begin;
  std::mt19937_64 rng(seed);
  PairSample s;
  s.x.reserve(n_pairs);
  s.y.reserve(n_pairs);
  for (std::size_t j = 0; j < n_pairs; ++j) {
    const std::uint64_t k = detail::uniform_below(rng, region.count());
    const std::size_t row = region.row_begin + k / region_width;
    const std::size_t col = region.col_begin + k % region_width;
    s.x.push_back(img.at(row, col));
    s.y.push_back(detail::neighbour(img, row, col, o));
  }
  return s;
}

/// Every adjacent pair of the orientation, in row-major order of the first pixel.
inline PairSample all_pairs(const Image& img, Orientation o) {
  const detail::PairRegion region = detail::pair_region(img, o);
  PairSample s;
  for (std::size_t r = region.row_begin; r < region.row_end; ++r) {
    for (std::size_t c = region.col_begin; c < region.col_end; ++c) {
      s.x.push_back(img.at(r, c));
      s.y.push_back(detail::neighbour(img, r, c, o));
    }
  }
  return s;
}

/// Correlation coefficient of paired samples:
///
///   (N Σxy − Σx Σy) / sqrt((N Σx² − (Σx)²)(N Σy² − (Σy)²))
///
/// The sums are accumulated exactly in integers. Returns nullopt when a
/// denominator factor is zero.
inline std::optional<double> correlation_coefficient(std::span<const std::uint8_t> x,
                                                     std::span<const std::uint8_t> y) {
  if (x.size() != y.size()) throw ArgumentError("correlation samples differ in length");
  using detail::wide_int;
  wide_int sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const wide_int a = x[j];
    const wide_int b = y[j];
    sx += a;
    sy += b;
    sxx += a * a;
    syy += b * b;
    sxy += a * b;
  }
  const auto n = static_cast<wide_int>(x.size());
  const wide_int num = n * sxy - sx * sy;
  const wide_int var_x = n * sxx - sx * sx;
  const wide_int var_y = n * syy - sy * sy;
  if (var_x == 0 || var_y == 0) return std::nullopt;
  const long double denom = std::sqrt(static_cast<long double>(var_x)) * std::sqrt(static_cast<long double>(var_y));
  return static_cast<double>(static_cast<long double>(num) / denom);
}

inline CorrelationResult correlation(const Image& img, Orientation o, std::size_t n_pairs, std::uint64_t seed) {
  if (n_pairs < 2) throw ArgumentError("correlation needs at least two pairs");
  const PairSample s = sample_pairs(img, o, n_pairs, seed);
  return {o, correlation_coefficient(s.x, s.y), s.size(), seed};
}

/// Correlation over every adjacent pair instead of a random sample.
inline CorrelationResult correlation_exhaustive(const Image& img, Orientation o) {
  const PairSample s = all_pairs(img, o);
  if (s.size() < 2) throw DimensionError("image has fewer than two adjacent pairs");
  return {o, correlation_coefficient(s.x, s.y), s.size(), 0};
}

/// Shannon entropy in bits of the grey-level distribution; zero-probability
/// levels contribute nothing.
inline EntropyResult entropy(const Histogram& h) {
  const double total = static_cast<double>(h.total());
  if (total == 0) return {0.0};
  double bits = 0.0;
  for (std::uint64_t c : h.counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / total;
    bits += p * std::log2(1.0 / p);
  }
  return {bits};
}

inline EntropyResult entropy(const Image& img) { return entropy(histogram(img)); }

inline DifferentialResult differential(const Image& a, const Image& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw DimensionError("differential metrics need equally sized images");
  }
  std::uint64_t changed = 0;
  std::uint64_t abs_sum = 0;
  const auto pa = a.pixels();
  const auto pb = b.pixels();
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const int d = int{pa[i]} - int{pb[i]};
    changed += d != 0;
    abs_sum += static_cast<std::uint64_t>(d < 0 ? -d : d);
  }
  const double n = static_cast<double>(pa.size());
  return {100.0 * static_cast<double>(changed) / n, 100.0 * static_cast<double>(abs_sum) / (255.0 * n)};
}

}  // namespace cubecipher
