#include <gtest/gtest.h>

#include <random>

#include "cubecipher/keyschedule.hpp"
#include "hex.hpp"
#include "test_support.hpp"

using namespace cubecipher;
using test::to_hex;

// Expected digests below were computed independently with Python's hashlib.

TEST(RotationHash, FrozenValues) {
  EXPECT_EQ(rotation_hash(0, 0, SecretKey("abc")), 0xf3652e4cu);
  EXPECT_EQ(rotation_hash(3, 127, SecretKey("abc")), 0xdd55413fu);
  EXPECT_EQ(rotation_hash(1, 65, SecretKey("magic")), 1192612337u);
}

TEST(RotationTable, DimensionsAndModulus) {
  const BlockGrid grid{3, 50, 34};
  const RotationTable t = build_rotation_table(SecretKey("abc"), grid);
  EXPECT_EQ(t.rows(), 50u);
  EXPECT_EQ(t.cols(), 128u);
  // lcm(4 * 50, 4 * 34)
  EXPECT_EQ(t.modulus(), 3400u);
  EXPECT_EQ(t(0, 0), 0xf3652e4cu % 3400u);
  EXPECT_EQ(t(3, 127), 0xdd55413fu % 3400u);
  for (std::uint32_t v : t.entries()) EXPECT_LT(v, 3400u);

  const RotationTable tall = build_rotation_table(SecretKey("abc"), BlockGrid{1, 2, 9});
  EXPECT_EQ(tall.rows(), 9u);
}

TEST(RotationTable, Deterministic) {
  const BlockGrid grid{2, 5, 4};
  EXPECT_EQ(build_rotation_table(SecretKey("secret"), grid), build_rotation_table(SecretKey("secret"), grid));
}

TEST(RotationTable, NeighbouringKeysDiffer) {
  const BlockGrid grid{2, 5, 4};
  EXPECT_NE(build_rotation_table(SecretKey("abc"), grid), build_rotation_table(SecretKey("abd"), grid));
}

TEST(RotationTable, SingleBlockFacesStayBelowFour) {
  const RotationTable t = build_rotation_table(SecretKey("any key at all"), BlockGrid{5, 1, 1});
  EXPECT_EQ(t.modulus(), 4u);
  for (std::uint32_t v : t.entries()) EXPECT_LT(v, 4u);
}

TEST(RotationTable, EveryKeyByteMatters) {
  std::mt19937_64 rng(21);
  const BlockGrid grid{1, 3, 2};
  for (int trial = 0; trial < 40; ++trial) {
    const SecretKey key = test::random_key(rng, 1, 6);
    const RotationTable base = build_rotation_table(key, grid);
    for (std::size_t pos = 0; pos < key.size(); ++pos) {
      for (int bit = 0; bit < 8; ++bit) {
        std::vector<std::uint8_t> bytes(key.bytes().begin(), key.bytes().end());
        bytes[pos] ^= static_cast<std::uint8_t>(1u << bit);
        EXPECT_NE(build_rotation_table(SecretKey(bytes), grid), base);
      }
    }
  }
}

TEST(KeyColumnIndex, ReducesModulo128) {
  EXPECT_EQ(key_column_index(SecretKey("A"), 0), 65u);
  const SecretKey high(std::vector<std::uint8_t>{0x01, 0xC8});
  EXPECT_EQ(key_column_index(high, 1), 72u);
  const SecretKey all = [] {
    std::vector<std::uint8_t> v(256);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<std::uint8_t>(i);
    return SecretKey(v);
  }();
  for (std::size_t j = 0; j < all.size(); ++j) EXPECT_LT(key_column_index(all, j), 128u);
}

TEST(KeyColumnIndex, OutOfRangeThrows) { EXPECT_THROW(key_column_index(SecretKey("ab"), 2), ArgumentError); }

TEST(SecretKey, RejectsEmpty) { EXPECT_THROW(SecretKey(""), ArgumentError); }

TEST(DeriveAesKey, FrozenDigestsAndSizes) {
  const AesKeyMaterial m = derive_aes_key(SecretKey("abc"));
  EXPECT_EQ(m.key.size(), 32u);
  EXPECT_EQ(m.iv.size(), 16u);
  EXPECT_EQ(to_hex(m.key), "30983639671575855e55622c6a57f59f7fbae64e3b32e4c06809b585ff92f39e");
  EXPECT_EQ(to_hex(m.iv), "4e9e5f4de8787c282a4713554a78dccc");
  EXPECT_EQ(to_hex(m.reverse_iv), "ad22661a8ec761df200e161332efc229");
}

TEST(DeriveAesKey, DeterministicAndKeySensitive) {
  const AesKeyMaterial a = derive_aes_key(SecretKey("passphrase"));
  const AesKeyMaterial b = derive_aes_key(SecretKey("passphrase"));
  const AesKeyMaterial c = derive_aes_key(SecretKey("passphrasf"));
  EXPECT_EQ(a.key, b.key);
  EXPECT_EQ(a.iv, b.iv);
  EXPECT_NE(a.key, c.key);
  EXPECT_NE(a.iv, c.iv);
}
