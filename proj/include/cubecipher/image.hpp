#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cubecipher/errors.hpp"

namespace cubecipher {

/// Single-channel 8-bit image stored row-major.
class Image {
 public:
  Image() = default;

  /// Constant-filled image.
  Image(std::size_t width, std::size_t height, std::uint8_t fill = 0)
      : width_(width), height_(height), pixels_(checked_area(width, height), fill) {}

  Image(std::size_t width, std::size_t height, std::vector<std::uint8_t> pixels)
      : width_(width), height_(height), pixels_(std::move(pixels)) {
    if (pixels_.size() != checked_area(width, height)) {
      throw DimensionError("pixel buffer holds " + std::to_string(pixels_.size()) +
                           " bytes, expected " + std::to_string(width * height));
    }
  }

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return pixels_.size(); }
  bool empty() const noexcept { return pixels_.empty(); }

  std::uint8_t at(std::size_t row, std::size_t col) const { return pixels_[row * width_ + col]; }
  std::uint8_t& at(std::size_t row, std::size_t col) { return pixels_[row * width_ + col]; }

  std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }
  std::span<std::uint8_t> pixels() noexcept { return pixels_; }

  std::span<const std::uint8_t> row(std::size_t r) const {
    return std::span<const std::uint8_t>(pixels_).subspan(r * width_, width_);
  }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  static std::size_t checked_area(std::size_t width, std::size_t height) {
    if (width == 0 || height == 0) {
      throw DimensionError("image dimensions must be positive");
    }
    return width * height;
  }

  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

namespace detail {

inline std::size_t round_up(std::size_t value, std::size_t multiple) {
  return (value + multiple - 1) / multiple * multiple;
}

}  // namespace detail

/// Height multiple required for a face tiling with the given block size.
inline std::size_t conform_height_multiple(std::size_t block_size) { return 3 * block_size; }
/// Width multiple required for a face tiling with the given block size.
inline std::size_t conform_width_multiple(std::size_t block_size) { return 2 * block_size; }

inline bool is_conformant(const Image& img, std::size_t block_size) {
  return block_size > 0 && img.height() % conform_height_multiple(block_size) == 0 &&
         img.width() % conform_width_multiple(block_size) == 0;
}

/// Pads `img` by edge replication so that its height is a multiple of
/// 3 * block_size and its width a multiple of 2 * block_size. Padding is
/// added on the bottom and right only, so cropping the top-left corner back
/// to the original size undoes it.
inline Image conform_image(const Image& img, std::size_t block_size) {
  if (block_size == 0) {
    throw ArgumentError("block size must be at least 1");
  }
  if (img.empty()) {
    throw DimensionError("cannot conform an empty image");
  }
  if (is_conformant(img, block_size)) {
    return img;
  }
  const std::size_t h = detail::round_up(img.height(), conform_height_multiple(block_size));
  const std::size_t w = detail::round_up(img.width(), conform_width_multiple(block_size));
  Image out(w, h);
  for (std::size_t r = 0; r < h; ++r) {
    const std::size_t src_r = std::min(r, img.height() - 1);
    for (std::size_t c = 0; c < w; ++c) {
      out.at(r, c) = img.at(src_r, std::min(c, img.width() - 1));
    }
  }
  return out;
}

/// Top-left `width` x `height` region of `img`.
inline Image crop(const Image& img, std::size_t width, std::size_t height) {
  if (width > img.width() || height > img.height()) {
    throw DimensionError("crop region exceeds image bounds");
  }
  if (width == img.width() && height == img.height()) {
    return img;
  }
  Image out(width, height);
  for (std::size_t r = 0; r < height; ++r) {
    auto src = img.row(r).first(width);
    std::copy(src.begin(), src.end(), out.pixels().begin() + static_cast<std::ptrdiff_t>(r * width));
  }
  return out;
}

}  // namespace cubecipher
