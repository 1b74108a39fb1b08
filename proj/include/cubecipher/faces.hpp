#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

#include "cubecipher/errors.hpp"
#include "cubecipher/image.hpp"

namespace cubecipher {

/// Cube face labels. The enumerator order is the row-major order in which
/// the 3x2 tiling of the source image is assigned to faces:
///
///   +---+---+
///   | U | F |
///   +---+---+
///   | R | L |
///   +---+---+
///   | D | B |
///   +---+---+
enum class Face : std::size_t { U = 0, F, R, L, D, B };

inline constexpr std::size_t kFaceCount = 6;
inline constexpr std::array<Face, kFaceCount> kAllFaces{Face::U, Face::F, Face::R,
                                                        Face::L, Face::D, Face::B};

constexpr std::string_view face_name(Face f) {
  constexpr std::array<std::string_view, kFaceCount> names{"U", "F", "R", "L", "D", "B"};
  return names[static_cast<std::size_t>(f)];
}

/// Block tiling shared by all six faces.
struct BlockGrid {
  std::size_t block_size = 1;
  std::size_t cols = 0;  // blocks across one face
  std::size_t rows = 0;  // blocks down one face

  std::size_t face_width() const noexcept { return cols * block_size; }
  std::size_t face_height() const noexcept { return rows * block_size; }

  friend bool operator==(const BlockGrid&, const BlockGrid&) = default;
};

/// Grid produced by split_faces for an image of the given size. The
/// dimensions must already be conformant.
inline BlockGrid grid_for(std::size_t width, std::size_t height, std::size_t block_size) {
  if (block_size == 0) {
    throw ArgumentError("block size must be at least 1");
  }
  if (height % (3 * block_size) != 0 || width % (2 * block_size) != 0) {
    throw DimensionError("image " + std::to_string(width) + "x" + std::to_string(height) +
                         " is not divisible into 3x2 faces of " + std::to_string(block_size) +
                         "-pixel blocks");
  }
  return BlockGrid{block_size, width / 2 / block_size, height / 3 / block_size};
}

struct FaceSet {
  std::array<Image, kFaceCount> faces;
  BlockGrid grid;

  Image& operator[](Face f) { return faces[static_cast<std::size_t>(f)]; }
  const Image& operator[](Face f) const { return faces[static_cast<std::size_t>(f)]; }

  friend bool operator==(const FaceSet&, const FaceSet&) = default;
};

inline FaceSet split_faces(const Image& img, std::size_t block_size) {
  FaceSet fs;
  fs.grid = grid_for(img.width(), img.height(), block_size);
  const std::size_t fw = fs.grid.face_width();
  const std::size_t fh = fs.grid.face_height();
  for (Face f : kAllFaces) {
    const std::size_t idx = static_cast<std::size_t>(f);
    const std::size_t top = (idx / 2) * fh;
    const std::size_t left = (idx % 2) * fw;
    Image face(fw, fh);
    for (std::size_t r = 0; r < fh; ++r) {
      for (std::size_t c = 0; c < fw; ++c) {
        face.at(r, c) = img.at(top + r, left + c);
      }
    }
    fs[f] = std::move(face);
  }
  return fs;
}

inline Image merge_faces(const FaceSet& fs) {
  const std::size_t fw = fs.grid.face_width();
  const std::size_t fh = fs.grid.face_height();
  for (const Image& face : fs.faces) {
    if (face.width() != fw || face.height() != fh) {
      throw DimensionError("face dimensions disagree with the block grid");
    }
  }
  Image out(2 * fw, 3 * fh);
  for (Face f : kAllFaces) {
    const std::size_t idx = static_cast<std::size_t>(f);
    const std::size_t top = (idx / 2) * fh;
    const std::size_t left = (idx % 2) * fw;
    const Image& face = fs[f];
    for (std::size_t r = 0; r < fh; ++r) {
      for (std::size_t c = 0; c < fw; ++c) {
        out.at(top + r, left + c) = face.at(r, c);
      }
    }
  }
  return out;
}

}  // namespace cubecipher
