#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cubecipher/aes.hpp"
#include "cubecipher/errors.hpp"
#include "cubecipher/faces.hpp"
#include "cubecipher/sha256.hpp"

namespace cubecipher {

/// Non-empty shared passphrase. Drives both the rotation table and the AES key.
class SecretKey {
 public:
  explicit SecretKey(std::vector<std::uint8_t> bytes) : bytes_(std::move(bytes)) {
    if (bytes_.empty()) throw ArgumentError("secret key must not be empty");
  }
  explicit SecretKey(std::string_view passphrase)
      : SecretKey(std::vector<std::uint8_t>(passphrase.begin(), passphrase.end())) {}

  std::size_t size() const noexcept { return bytes_.size(); }
  std::span<const std::uint8_t> bytes() const noexcept { return bytes_; }
  std::uint8_t operator[](std::size_t i) const { return bytes_[i]; }

  friend bool operator==(const SecretKey&, const SecretKey&) = default;

 private:
  std::vector<std::uint8_t> bytes_;
};

/// Number of key-indexed columns in every rotation table.
inline constexpr std::size_t kRotationTableColumns = 128;

/// Number of blocks in a row ring (faces F, U, B, D at one block-row).
inline std::size_t row_ring_length(const BlockGrid& g) { return 4 * g.cols; }
/// Number of blocks in a column ring (faces F, R, B, L at one block-column).
inline std::size_t column_ring_length(const BlockGrid& g) { return 4 * g.rows; }

/// Matrix of rotation counts: one row per ring index, 128 columns selected
/// by key bytes. Entries are stored modulo lcm(row ring length, column ring
/// length), so reducing an entry by either ring length gives the same result
/// as reducing the raw hash value directly.
class RotationTable {
 public:
  RotationTable(std::size_t rows, std::uint32_t modulus)
      : rows_(rows), modulus_(modulus), entries_(rows * kRotationTableColumns, 0) {}

  std::size_t rows() const noexcept { return rows_; }
  static constexpr std::size_t cols() noexcept { return kRotationTableColumns; }
  std::uint32_t modulus() const noexcept { return modulus_; }

  std::uint32_t operator()(std::size_t row, std::size_t col) const {
    return entries_[row * kRotationTableColumns + col];
  }
  std::uint32_t& operator()(std::size_t row, std::size_t col) {
    return entries_[row * kRotationTableColumns + col];
  }

  std::span<const std::uint32_t> entries() const noexcept { return entries_; }

  friend bool operator==(const RotationTable&, const RotationTable&) = default;

 private:
  std::size_t rows_;
  std::uint32_t modulus_;
  std::vector<std::uint32_t> entries_;
};

/// Raw 32-bit keyed hash of a table cell: the first four bytes (big endian)
/// of SHA-256(be32(row) || be32(col) || passphrase).
inline std::uint32_t rotation_hash(std::uint32_t row, std::uint32_t col, const SecretKey& key) {
  std::array<std::uint8_t, 8> prefix{};
  for (int b = 0; b < 4; ++b) {
    prefix[b] = static_cast<std::uint8_t>(row >> (24 - 8 * b));
    prefix[4 + b] = static_cast<std::uint8_t>(col >> (24 - 8 * b));
  }
  const Sha256Digest d = Sha256().update(prefix).update(key.bytes()).finish();
  return (std::uint32_t{d[0]} << 24) | (std::uint32_t{d[1]} << 16) | (std::uint32_t{d[2]} << 8) |
         std::uint32_t{d[3]};
}

inline RotationTable build_rotation_table(const SecretKey& key, const BlockGrid& grid) {
  if (grid.rows == 0 || grid.cols == 0) throw ArgumentError("block grid must be non-empty");
  const auto modulus = static_cast<std::uint32_t>(
      std::lcm(row_ring_length(grid), column_ring_length(grid)));
  RotationTable table(std::max(grid.rows, grid.cols), modulus);
  for (std::size_t i = 0; i < table.rows(); ++i) {
    for (std::size_t j = 0; j < kRotationTableColumns; ++j) {
      table(i, j) = rotation_hash(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), key) %
                    modulus;
    }
  }
  return table;
}

/// Table column selected by key byte `j`, reduced into the table's 128 columns.
inline std::size_t key_column_index(const SecretKey& key, std::size_t j) {
  if (j >= key.size()) {
    throw ArgumentError("key index " + std::to_string(j) + " out of range for key of length " +
                        std::to_string(key.size()));
  }
  return key[j] % kRotationTableColumns;
}

struct AesKeyMaterial {
  std::array<std::uint8_t, 32> key{};
  AesBlock iv{};          // forward CBC pass
  AesBlock reverse_iv{};  // back-to-front CBC pass
};

namespace detail {

inline Sha256Digest labelled_digest(std::string_view label, const SecretKey& key) {
  return Sha256().update(label).update(key.bytes()).finish();
}

}  // namespace detail

inline AesKeyMaterial derive_aes_key(const SecretKey& key) {
  AesKeyMaterial m;
  m.key = detail::labelled_digest("aes-key", key);
  const Sha256Digest iv = detail::labelled_digest("aes-iv", key);
  std::copy_n(iv.begin(), kAesBlockBytes, m.iv.begin());
  const Sha256Digest riv = detail::labelled_digest("aes-iv-reverse", key);
  std::copy_n(riv.begin(), kAesBlockBytes, m.reverse_iv.begin());
  return m;
}

}  // namespace cubecipher
