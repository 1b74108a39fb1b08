#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cubecipher/aes.hpp"
#include "cubecipher/errors.hpp"
#include "cubecipher/image.hpp"
#include "cubecipher/keyschedule.hpp"

namespace cubecipher {

inline constexpr std::array<std::uint8_t, 4> kCipherMagic{'M', 'C', 'A', 'E'};
inline constexpr std::uint8_t kCipherVersion = 1;
inline constexpr std::size_t kCipherHeaderBytes = 4 + 1 + 4 * 4 + 2 + 4;

/// Encrypted image plus the geometry needed to undo padding and scrambling.
/// block_size 0 marks a payload that never went through the rotation stage;
/// such a payload has identical original and conformed dimensions.
struct CipherImage {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::uint32_t conformed_width = 0;
  std::uint32_t conformed_height = 0;
  std::uint16_t block_size = 0;
  std::vector<std::uint8_t> payload;
  std::uint8_t version = kCipherVersion;

  std::size_t conformed_pixels() const noexcept {
    return std::size_t{conformed_width} * conformed_height;
  }

  friend bool operator==(const CipherImage&, const CipherImage&) = default;
};

/// Geometry recorded in the header when encrypting a conformed image.
struct CipherGeometry {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::uint16_t block_size = 0;
};

namespace detail {

inline void check_geometry(const CipherImage& c) {
  if (c.width == 0 || c.height == 0 || c.conformed_width == 0 || c.conformed_height == 0) {
    throw FormatError("cipher image has a zero dimension");
  }
  if (c.width > c.conformed_width || c.height > c.conformed_height) {
    throw FormatError("original dimensions exceed conformed dimensions");
  }
  if (c.block_size == 0) {
    if (c.width != c.conformed_width || c.height != c.conformed_height) {
      throw FormatError("unrotated payload must not carry padding");
    }
  } else {
    const std::size_t hm = conform_height_multiple(c.block_size);
    const std::size_t wm = conform_width_multiple(c.block_size);
    if (c.conformed_height % hm != 0 || c.conformed_width % wm != 0) {
      throw FormatError("conformed dimensions are not divisible by the block tiling");
    }
    if (c.conformed_height - c.height >= hm || c.conformed_width - c.width >= wm) {
      throw FormatError("padding exceeds what conforming could have produced");
    }
  }
  if (c.payload.size() != pkcs7_padded_size(c.conformed_pixels())) {
    throw FormatError("payload length " + std::to_string(c.payload.size()) +
                      " does not match conformed pixel count " +
                      std::to_string(c.conformed_pixels()));
  }
}

}  // namespace detail

/// Pixels row-major, PKCS#7 padded, then AES-256-CBC forward followed by a
/// back-to-front CBC pass so every ciphertext block depends on every
/// plaintext block.
inline CipherImage aes_encrypt_pixels(const Image& img, const SecretKey& key, CipherGeometry geometry = {}) {
  CipherImage out;
  out.conformed_width = static_cast<std::uint32_t>(img.width());
  out.conformed_height = static_cast<std::uint32_t>(img.height());
  out.width = geometry.width ? geometry.width : out.conformed_width;
  out.height = geometry.height ? geometry.height : out.conformed_height;
  out.block_size = geometry.block_size;

  const AesKeyMaterial m = derive_aes_key(key);
  const Aes aes(m.key);
  out.payload = pkcs7_pad(img.pixels());
  cbc_encrypt(aes, m.iv, out.payload);
  reverse_cbc_encrypt(aes, m.reverse_iv, out.payload);
  return out;
}

/// Decrypts to the conformed (padded, still scrambled) image.
inline Image aes_decrypt_conformed(const CipherImage& c, const SecretKey& key) {
  if (c.version != kCipherVersion) {
    throw FormatError("unsupported cipher image version " + std::to_string(c.version));
  }
  if (c.payload.empty() || c.payload.size() % kAesBlockBytes != 0) {
    throw CryptoError("payload is truncated or not a multiple of 16 bytes");
  }
  detail::check_geometry(c);
  const AesKeyMaterial m = derive_aes_key(key);
  const Aes aes(m.key);
  std::vector<std::uint8_t> data = c.payload;
  reverse_cbc_decrypt(aes, m.reverse_iv, data);
  cbc_decrypt(aes, m.iv, data);
  std::vector<std::uint8_t> pixels = pkcs7_unpad(data);
  if (pixels.size() != c.conformed_pixels()) {
    throw CryptoError("decrypted length disagrees with header (wrong key or corrupted payload)");
  }
  return Image(c.conformed_width, c.conformed_height, std::move(pixels));
}

/// Decrypts and crops back to the recorded original dimensions.
inline Image aes_decrypt_pixels(const CipherImage& c, const SecretKey& key) {
  return crop(aes_decrypt_conformed(c, key), c.width, c.height);
}

/// The ciphertext viewed as an image with the conformed dimensions (the
/// trailing padding block is dropped). Used for statistical measurement.
inline Image cipher_as_image(const CipherImage& c) {
  if (c.payload.size() < c.conformed_pixels()) {
    throw FormatError("payload shorter than conformed pixel count");
  }
  return Image(c.conformed_width, c.conformed_height,
               std::vector<std::uint8_t>(c.payload.begin(),
                                         c.payload.begin() + static_cast<std::ptrdiff_t>(c.conformed_pixels())));
}

namespace detail {

inline void put_be(std::vector<std::uint8_t>& out, std::uint32_t v, int bytes) {
  for (int i = bytes - 1; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline std::uint32_t get_be(std::span<const std::uint8_t> in, std::size_t& pos, int bytes) {
  std::uint32_t v = 0;
  for (int i = 0; i < bytes; ++i) v = (v << 8) | in[pos++];
  return v;
}

}  // namespace detail

/// MCAE container: magic, version u8, big-endian u32 width, height,
/// conformed_width, conformed_height, u16 block_size, u32 payload length,
/// payload.
inline std::vector<std::uint8_t> serialize(const CipherImage& c) {
  std::vector<std::uint8_t> out(kCipherMagic.begin(), kCipherMagic.end());
  out.reserve(kCipherHeaderBytes + c.payload.size());
  out.push_back(c.version);
  detail::put_be(out, c.width, 4);
  detail::put_be(out, c.height, 4);
  detail::put_be(out, c.conformed_width, 4);
  detail::put_be(out, c.conformed_height, 4);
  detail::put_be(out, c.block_size, 2);
  detail::put_be(out, static_cast<std::uint32_t>(c.payload.size()), 4);
  out.insert(out.end(), c.payload.begin(), c.payload.end());
  return out;
}

inline CipherImage parse_cipher_image(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kCipherHeaderBytes) throw FormatError("file too short for an MCAE header");
  if (!std::equal(kCipherMagic.begin(), kCipherMagic.end(), bytes.begin())) {
    throw FormatError("missing MCAE magic");
  }
  std::size_t pos = 4;
  CipherImage c;
  c.version = bytes[pos++];
  if (c.version != kCipherVersion) {
    throw FormatError("unsupported MCAE version " + std::to_string(c.version));
  }
  c.width = detail::get_be(bytes, pos, 4);
  c.height = detail::get_be(bytes, pos, 4);
  c.conformed_width = detail::get_be(bytes, pos, 4);
  c.conformed_height = detail::get_be(bytes, pos, 4);
  c.block_size = static_cast<std::uint16_t>(detail::get_be(bytes, pos, 2));
  const std::uint32_t length = detail::get_be(bytes, pos, 4);
  if (bytes.size() - pos != length) {
    throw FormatError("payload length field says " + std::to_string(length) + " bytes, file holds " +
                      std::to_string(bytes.size() - pos));
  }
  c.payload.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos), bytes.end());
  detail::check_geometry(c);
  return c;
}

}  // namespace cubecipher
