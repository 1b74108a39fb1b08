#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cubecipher/errors.hpp"
#include "cubecipher/faces.hpp"
#include "cubecipher/keyschedule.hpp"

namespace cubecipher {

enum class RingAxis { row, column };

/// Faces a row ring passes through, in strip order.
inline constexpr std::array<Face, 4> kRowRingFaces{Face::F, Face::U, Face::B, Face::D};
/// Faces a column ring passes through, in strip order.
inline constexpr std::array<Face, 4> kColumnRingFaces{Face::F, Face::R, Face::B, Face::L};

struct BlockRef {
  Face face;
  std::size_t block_row;
  std::size_t block_col;

  friend bool operator==(const BlockRef&, const BlockRef&) = default;
};

/// A cyclic strip of blocks. A row ring at index i holds block-row i of
/// F, U, B and D concatenated left to right; a column ring at index i holds
/// block-column i of F, R, B and L concatenated top to bottom. No block is
/// re-oriented at face seams.
struct Ring {
  RingAxis axis;
  std::size_t index;

  std::size_t length(const BlockGrid& g) const {
    return axis == RingAxis::row ? row_ring_length(g) : column_ring_length(g);
  }

  std::vector<BlockRef> cells(const BlockGrid& g) const {
    const std::size_t limit = axis == RingAxis::row ? g.rows : g.cols;
    if (index >= limit) {
      throw ArgumentError(std::string(axis == RingAxis::row ? "row" : "column") + " ring index " +
                          std::to_string(index) + " out of range (" + std::to_string(limit) + ")");
    }
    std::vector<BlockRef> out;
    out.reserve(length(g));
    if (axis == RingAxis::row) {
      for (Face f : kRowRingFaces) {
        for (std::size_t c = 0; c < g.cols; ++c) out.push_back({f, index, c});
      }
    } else {
      for (Face f : kColumnRingFaces) {
        for (std::size_t r = 0; r < g.rows; ++r) out.push_back({f, r, index});
      }
    }
    return out;
  }
};

namespace detail {

inline void copy_block_out(const FaceSet& fs, const BlockRef& ref, std::uint8_t* dst) {
  const std::size_t b = fs.grid.block_size;
  const Image& face = fs[ref.face];
  for (std::size_t r = 0; r < b; ++r) {
    for (std::size_t c = 0; c < b; ++c) {
      *dst++ = face.at(ref.block_row * b + r, ref.block_col * b + c);
    }
  }
}

inline void copy_block_in(FaceSet& fs, const BlockRef& ref, const std::uint8_t* src) {
  const std::size_t b = fs.grid.block_size;
  Image& face = fs[ref.face];
  for (std::size_t r = 0; r < b; ++r) {
    for (std::size_t c = 0; c < b; ++c) {
      face.at(ref.block_row * b + r, ref.block_col * b + c) = *src++;
    }
  }
}

/// Shifts blocks along the ring in place: the block at strip position p moves
/// to position (p + count) mod length.
inline void rotate_ring_in_place(FaceSet& fs, const Ring& ring, std::size_t count) {
  const std::vector<BlockRef> cells = ring.cells(fs.grid);
  const std::size_t n = cells.size();
  const std::size_t shift = count % n;
  if (shift == 0) return;
  const std::size_t area = fs.grid.block_size * fs.grid.block_size;
  std::vector<std::uint8_t> strip(n * area);
  for (std::size_t p = 0; p < n; ++p) copy_block_out(fs, cells[p], strip.data() + p * area);
  for (std::size_t p = 0; p < n; ++p) copy_block_in(fs, cells[(p + shift) % n], strip.data() + p * area);
}

inline void check_table(const FaceSet& fs, const RotationTable& table) {
  if (table.rows() < std::max(fs.grid.rows, fs.grid.cols)) {
    throw DimensionError("rotation table has fewer rows than the face grid has rings");
  }
}

}  // namespace detail

inline FaceSet rotate_ring(FaceSet fs, const Ring& ring, std::size_t count) {
  detail::rotate_ring_in_place(fs, ring, count);
  return fs;
}

/// Key-scheduled block scrambling. For each key byte in order, every row
/// ring i is rotated by table(i, c) and then every column ring i by
/// table(i, c), where c is the key byte's table column.
inline FaceSet scramble(FaceSet fs, const RotationTable& table, const SecretKey& key) {
  detail::check_table(fs, table);
  for (std::size_t j = 0; j < key.size(); ++j) {
    const std::size_t c = key_column_index(key, j);
    for (std::size_t i = 0; i < fs.grid.rows; ++i) {
      detail::rotate_ring_in_place(fs, Ring{RingAxis::row, i}, table(i, c));
    }
    for (std::size_t i = 0; i < fs.grid.cols; ++i) {
      detail::rotate_ring_in_place(fs, Ring{RingAxis::column, i}, table(i, c));
    }
  }
  return fs;
}

/// Exact inverse of scramble: key bytes in reverse, column phase undone
/// before row phase, each ring rotated backwards.
inline FaceSet unscramble(FaceSet fs, const RotationTable& table, const SecretKey& key) {
  detail::check_table(fs, table);
  const std::size_t row_len = row_ring_length(fs.grid);
  const std::size_t col_len = column_ring_length(fs.grid);
  for (std::size_t j = key.size(); j-- > 0;) {
    const std::size_t c = key_column_index(key, j);
    for (std::size_t i = 0; i < fs.grid.cols; ++i) {
      detail::rotate_ring_in_place(fs, Ring{RingAxis::column, i}, (col_len - table(i, c) % col_len) % col_len);
    }
    for (std::size_t i = 0; i < fs.grid.rows; ++i) {
      detail::rotate_ring_in_place(fs, Ring{RingAxis::row, i}, (row_len - table(i, c) % row_len) % row_len);
    }
  }
  return fs;
}

}  // namespace cubecipher
