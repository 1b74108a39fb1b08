#pragma once

// AES block cipher (FIPS-197) for 128/192/256-bit keys, CBC chaining and
// PKCS#7 padding. Table-free except for the S-boxes.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cubecipher/errors.hpp"

namespace cubecipher {

inline constexpr std::size_t kAesBlockBytes = 16;
using AesBlock = std::array<std::uint8_t, kAesBlockBytes>;

namespace detail {

inline constexpr std::array<std::uint8_t, 256> kSbox{
    0x63, 0x7c, 0x77, 0x7b, 0xf2, 0x6b, 0x6f, 0xc5, 0x30, 0x01, 0x67, 0x2b, 0xfe, 0xd7, 0xab, 0x76,
    0xca, 0x82, 0xc9, 0x7d, 0xfa, 0x59, 0x47, 0xf0, 0xad, 0xd4, 0xa2, 0xaf, 0x9c, 0xa4, 0x72, 0xc0,
    0xb7, 0xfd, 0x93, 0x26, 0x36, 0x3f, 0xf7, 0xcc, 0x34, 0xa5, 0xe5, 0xf1, 0x71, 0xd8, 0x31, 0x15,
    0x04, 0xc7, 0x23, 0xc3, 0x18, 0x96, 0x05, 0x9a, 0x07, 0x12, 0x80, 0xe2, 0xeb, 0x27, 0xb2, 0x75,
    0x09, 0x83, 0x2c, 0x1a, 0x1b, 0x6e, 0x5a, 0xa0, 0x52, 0x3b, 0xd6, 0xb3, 0x29, 0xe3, 0x2f, 0x84,
    0x53, 0xd1, 0x00, 0xed, 0x20, 0xfc, 0xb1, 0x5b, 0x6a, 0xcb, 0xbe, 0x39, 0x4a, 0x4c, 0x58, 0xcf,
    0xd0, 0xef, 0xaa, 0xfb, 0x43, 0x4d, 0x33, 0x85, 0x45, 0xf9, 0x02, 0x7f, 0x50, 0x3c, 0x9f, 0xa8,
    0x51, 0xa3, 0x40, 0x8f, 0x92, 0x9d, 0x38, 0xf5, 0xbc, 0xb6, 0xda, 0x21, 0x10, 0xff, 0xf3, 0xd2,
    0xcd, 0x0c, 0x13, 0xec, 0x5f, 0x97, 0x44, 0x17, 0xc4, 0xa7, 0x7e, 0x3d, 0x64, 0x5d, 0x19, 0x73,
    0x60, 0x81, 0x4f, 0xdc, 0x22, 0x2a, 0x90, 0x88, 0x46, 0xee, 0xb8, 0x14, 0xde, 0x5e, 0x0b, 0xdb,
    0xe0, 0x32, 0x3a, 0x0a, 0x49, 0x06, 0x24, 0x5c, 0xc2, 0xd3, 0xac, 0x62, 0x91, 0x95, 0xe4, 0x79,
    0xe7, 0xc8, 0x37, 0x6d, 0x8d, 0xd5, 0x4e, 0xa9, 0x6c, 0x56, 0xf4, 0xea, 0x65, 0x7a, 0xae, 0x08,
    0xba, 0x78, 0x25, 0x2e, 0x1c, 0xa6, 0xb4, 0xc6, 0xe8, 0xdd, 0x74, 0x1f, 0x4b, 0xbd, 0x8b, 0x8a,
    0x70, 0x3e, 0xb5, 0x66, 0x48, 0x03, 0xf6, 0x0e, 0x61, 0x35, 0x57, 0xb9, 0x86, 0xc1, 0x1d, 0x9e,
    0xe1, 0xf8, 0x98, 0x11, 0x69, 0xd9, 0x8e, 0x94, 0x9b, 0x1e, 0x87, 0xe9, 0xce, 0x55, 0x28, 0xdf,
    0x8c, 0xa1, 0x89, 0x0d, 0xbf, 0xe6, 0x42, 0x68, 0x41, 0x99, 0x2d, 0x0f, 0xb0, 0x54, 0xbb, 0x16};

constexpr std::array<std::uint8_t, 256> invert_sbox(const std::array<std::uint8_t, 256>& s) {
  std::array<std::uint8_t, 256> inv{};
  for (std::size_t i = 0; i < 256; ++i) inv[s[i]] = static_cast<std::uint8_t>(i);
  return inv;
}

inline constexpr std::array<std::uint8_t, 256> kInvSbox = invert_sbox(kSbox);

constexpr std::uint8_t xtime(std::uint8_t x) {
  return static_cast<std::uint8_t>((x << 1) ^ ((x & 0x80) ? 0x1b : 0x00));
}

constexpr std::uint8_t gf_mul(std::uint8_t a, std::uint8_t b) {
  std::uint8_t p = 0;
  while (b) {
    if (b & 1) p ^= a;
    a = xtime(a);
    b >>= 1;
  }
  return p;
}

}  // namespace detail

/// AES with an expanded key schedule. State bytes are column-major, as in
/// FIPS-197 (input byte i goes to row i % 4, column i / 4).
class Aes {
 public:
  explicit Aes(std::span<const std::uint8_t> key) {
    if (key.size() != 16 && key.size() != 24 && key.size() != 32) {
      throw ArgumentError("AES key must be 16, 24 or 32 bytes");
    }
    const std::size_t nk = key.size() / 4;
    rounds_ = nk + 6;
    const std::size_t words = 4 * (rounds_ + 1);
    round_keys_.assign(4 * words, 0);
    std::copy(key.begin(), key.end(), round_keys_.begin());

    std::uint8_t rcon = 0x01;
    for (std::size_t i = nk; i < words; ++i) {
      std::array<std::uint8_t, 4> temp{};
      std::copy_n(round_keys_.begin() + static_cast<std::ptrdiff_t>(4 * (i - 1)), 4, temp.begin());
      if (i % nk == 0) {
        std::rotate(temp.begin(), temp.begin() + 1, temp.end());
        for (auto& b : temp) b = detail::kSbox[b];
        temp[0] ^= rcon;
        rcon = detail::xtime(rcon);
      } else if (nk > 6 && i % nk == 4) {
        for (auto& b : temp) b = detail::kSbox[b];
      }
      for (std::size_t b = 0; b < 4; ++b) {
        round_keys_[4 * i + b] = round_keys_[4 * (i - nk) + b] ^ temp[b];
      }
    }
  }

  std::size_t rounds() const noexcept { return rounds_; }
  std::span<const std::uint8_t> round_keys() const noexcept { return round_keys_; }

  AesBlock encrypt_block(const AesBlock& in) const {
    AesBlock s = in;
    add_round_key(s, 0);
    for (std::size_t round = 1; round < rounds_; ++round) {
      sub_bytes(s);
      shift_rows(s);
      mix_columns(s);
      add_round_key(s, round);
    }
    sub_bytes(s);
    shift_rows(s);
    add_round_key(s, rounds_);
    return s;
  }

  AesBlock decrypt_block(const AesBlock& in) const {
    AesBlock s = in;
    add_round_key(s, rounds_);
    for (std::size_t round = rounds_ - 1; round > 0; --round) {
      inv_shift_rows(s);
      inv_sub_bytes(s);
      add_round_key(s, round);
      inv_mix_columns(s);
    }
    inv_shift_rows(s);
    inv_sub_bytes(s);
    add_round_key(s, 0);
    return s;
  }

 private:
  void add_round_key(AesBlock& s, std::size_t round) const {
    for (std::size_t i = 0; i < kAesBlockBytes; ++i) s[i] ^= round_keys_[16 * round + i];
  }

  static void sub_bytes(AesBlock& s) {
    for (auto& b : s) b = detail::kSbox[b];
  }
  static void inv_sub_bytes(AesBlock& s) {
    for (auto& b : s) b = detail::kInvSbox[b];
  }

  // Row r is cyclically shifted left by r columns.
  static void shift_rows(AesBlock& s) {
    AesBlock t = s;
    for (std::size_t r = 1; r < 4; ++r) {
      for (std::size_t c = 0; c < 4; ++c) s[4 * c + r] = t[4 * ((c + r) % 4) + r];
    }
  }
  static void inv_shift_rows(AesBlock& s) {
    AesBlock t = s;
    for (std::size_t r = 1; r < 4; ++r) {
      for (std::size_t c = 0; c < 4; ++c) s[4 * ((c + r) % 4) + r] = t[4 * c + r];
    }
  }

  static void mix_columns(AesBlock& s) {
    using detail::xtime;
    for (std::size_t c = 0; c < 4; ++c) {
      std::uint8_t* col = &s[4 * c];
      const std::uint8_t a0 = col[0], a1 = col[1], a2 = col[2], a3 = col[3];
      const std::uint8_t all = a0 ^ a1 ^ a2 ^ a3;
      col[0] = a0 ^ all ^ xtime(a0 ^ a1);
      col[1] = a1 ^ all ^ xtime(a1 ^ a2);
      col[2] = a2 ^ all ^ xtime(a2 ^ a3);
      col[3] = a3 ^ all ^ xtime(a3 ^ a0);
    }
  }
  static void inv_mix_columns(AesBlock& s) {
    using detail::gf_mul;
    for (std::size_t c = 0; c < 4; ++c) {
      std::uint8_t* col = &s[4 * c];
      const std::uint8_t a0 = col[0], a1 = col[1], a2 = col[2], a3 = col[3];
      col[0] = gf_mul(a0, 14) ^ gf_mul(a1, 11) ^ gf_mul(a2, 13) ^ gf_mul(a3, 9);
      col[1] = gf_mul(a0, 9) ^ gf_mul(a1, 14) ^ gf_mul(a2, 11) ^ gf_mul(a3, 13);
      col[2] = gf_mul(a0, 13) ^ gf_mul(a1, 9) ^ gf_mul(a2, 14) ^ gf_mul(a3, 11);
      col[3] = gf_mul(a0, 11) ^ gf_mul(a1, 13) ^ gf_mul(a2, 9) ^ gf_mul(a3, 14);
    }
  }

  std::size_t rounds_ = 0;
  std::vector<std::uint8_t> round_keys_;
};

namespace detail {

inline void require_block_multiple(std::size_t n) {
  if (n % kAesBlockBytes != 0) {
    throw ArgumentError("CBC data length must be a multiple of 16 bytes");
  }
}

inline AesBlock load_block(std::span<const std::uint8_t> data, std::size_t index) {
  AesBlock b{};
  std::copy_n(data.begin() + static_cast<std::ptrdiff_t>(index * kAesBlockBytes), kAesBlockBytes,
              b.begin());
  return b;
}

inline void store_block(std::span<std::uint8_t> data, std::size_t index, const AesBlock& b) {
  std::copy(b.begin(), b.end(), data.begin() + static_cast<std::ptrdiff_t>(index * kAesBlockBytes));
}

inline AesBlock xor_blocks(AesBlock a, const AesBlock& b) {
  for (std::size_t i = 0; i < kAesBlockBytes; ++i) a[i] ^= b[i];
  return a;
}

}  // namespace detail

/// In-place CBC encryption, blocks chained from first to last.
inline void cbc_encrypt(const Aes& aes, const AesBlock& iv, std::span<std::uint8_t> data) {
  detail::require_block_multiple(data.size());
  AesBlock chain = iv;
  for (std::size_t i = 0; i < data.size() / kAesBlockBytes; ++i) {
    chain = aes.encrypt_block(detail::xor_blocks(detail::load_block(data, i), chain));
    detail::store_block(data, i, chain);
  }
}

inline void cbc_decrypt(const Aes& aes, const AesBlock& iv, std::span<std::uint8_t> data) {
  detail::require_block_multiple(data.size());
  AesBlock chain = iv;
  for (std::size_t i = 0; i < data.size() / kAesBlockBytes; ++i) {
    const AesBlock c = detail::load_block(data, i);
    detail::store_block(data, i, detail::xor_blocks(aes.decrypt_block(c), chain));
    chain = c;
  }
}

/// In-place CBC encryption with blocks chained from last to first; block i
/// is XORed with ciphertext block i + 1 (the IV for the final block).
inline void reverse_cbc_encrypt(const Aes& aes, const AesBlock& iv, std::span<std::uint8_t> data) {
  detail::require_block_multiple(data.size());
  AesBlock chain = iv;
  for (std::size_t i = data.size() / kAesBlockBytes; i-- > 0;) {
    chain = aes.encrypt_block(detail::xor_blocks(detail::load_block(data, i), chain));
    detail::store_block(data, i, chain);
  }
}

inline void reverse_cbc_decrypt(const Aes& aes, const AesBlock& iv, std::span<std::uint8_t> data) {
  detail::require_block_multiple(data.size());
  AesBlock chain = iv;
  for (std::size_t i = data.size() / kAesBlockBytes; i-- > 0;) {
    const AesBlock c = detail::load_block(data, i);
    detail::store_block(data, i, detail::xor_blocks(aes.decrypt_block(c), chain));
    chain = c;
  }
}

/// Length after PKCS#7 padding: always at least one byte of padding.
constexpr std::size_t pkcs7_padded_size(std::size_t n) {
  return (n / kAesBlockBytes + 1) * kAesBlockBytes;
}

inline std::vector<std::uint8_t> pkcs7_pad(std::span<const std::uint8_t> data) {
  std::vector<std::uint8_t> out(data.begin(), data.end());
  const auto pad = static_cast<std::uint8_t>(pkcs7_padded_size(data.size()) - data.size());
  out.insert(out.end(), pad, pad);
  return out;
}

/// Strips PKCS#7 padding; throws CryptoError if the padding is malformed.
inline std::vector<std::uint8_t> pkcs7_unpad(std::span<const std::uint8_t> data) {
  if (data.empty() || data.size() % kAesBlockBytes != 0) {
    throw CryptoError("padded data length is not a positive multiple of 16");
  }
  const std::uint8_t pad = data.back();
  if (pad == 0 || pad > kAesBlockBytes) {
    throw CryptoError("invalid padding (wrong key or corrupted payload)");
  }
  for (std::size_t i = data.size() - pad; i < data.size(); ++i) {
    if (data[i] != pad) throw CryptoError("invalid padding (wrong key or corrupted payload)");
  }
  return {data.begin(), data.end() - pad};
}

}  // namespace cubecipher
