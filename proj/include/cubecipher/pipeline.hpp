#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>

#include "cubecipher/aes_stage.hpp"
#include "cubecipher/errors.hpp"
#include "cubecipher/faces.hpp"
#include "cubecipher/image.hpp"
#include "cubecipher/keyschedule.hpp"
#include "cubecipher/rotation.hpp"

namespace cubecipher {

/// Block-size case of one experiment run.
struct CaseConfig {
  std::size_t block_size = 0;
  // Blocks across / down the source image (before padding).
  std::size_t blocks_across = 0;
  std::size_t blocks_down = 0;
  // Dimensions after conforming, and the per-face grid.
  std::size_t conformed_width = 0;
  std::size_t conformed_height = 0;
  BlockGrid face_grid;
};

/// The four images compared by the evaluation: the conformed original, the
/// AES-only ciphertext, the rotated image and the rotation + AES ciphertext.
struct ExperimentBundle {
  Image original;
  CipherImage aes_only;
  Image rotated;
  CipherImage integrated;
  CaseConfig case_config;
};

inline CaseConfig make_case_config(const Image& source, std::size_t block_size) {
  if (block_size == 0) throw ArgumentError("block size must be at least 1");
  CaseConfig cfg;
  cfg.block_size = block_size;
  cfg.blocks_across = (source.width() + block_size - 1) / block_size;
  cfg.blocks_down = (source.height() + block_size - 1) / block_size;
  cfg.conformed_height = detail::round_up(source.height(), conform_height_multiple(block_size));
  cfg.conformed_width = detail::round_up(source.width(), conform_width_multiple(block_size));
  cfg.face_grid = grid_for(cfg.conformed_width, cfg.conformed_height, block_size);
  return cfg;
}

namespace detail {

inline void check_header_limits(const Image& img, std::size_t block_size) {
  constexpr auto max32 = std::numeric_limits<std::uint32_t>::max();
  if (block_size > std::numeric_limits<std::uint16_t>::max()) {
    throw ArgumentError("block size does not fit the MCAE header");
  }
  if (img.width() > max32 || img.height() > max32) {
    throw DimensionError("image dimensions do not fit the MCAE header");
  }
}

}  // namespace detail

/// Rotation stage alone on a conformed image: split, scramble, merge.
inline Image rotate_image(const Image& conformed, const SecretKey& key, std::size_t block_size) {
  FaceSet fs = split_faces(conformed, block_size);
  const RotationTable table = build_rotation_table(key, fs.grid);
  return merge_faces(scramble(std::move(fs), table, key));
}

inline Image unrotate_image(const Image& rotated, const SecretKey& key, std::size_t block_size) {
  FaceSet fs = split_faces(rotated, block_size);
  const RotationTable table = build_rotation_table(key, fs.grid);
  return merge_faces(unscramble(std::move(fs), table, key));
}

inline CipherImage encrypt(const Image& img, const SecretKey& key, std::size_t block_size) {
  if (block_size == 0) throw ArgumentError("block size must be at least 1");
  detail::check_header_limits(img, block_size);
  const Image conformed = conform_image(img, block_size);
  const Image rotated = rotate_image(conformed, key, block_size);
  return aes_encrypt_pixels(rotated, key,
                            {static_cast<std::uint32_t>(img.width()),
                             static_cast<std::uint32_t>(img.height()),
                             static_cast<std::uint16_t>(block_size)});
}

/// Inverse of encrypt. The header's block size selects the face geometry;
/// a block size of 0 means the payload carries no rotation stage.
inline Image decrypt(const CipherImage& c, const SecretKey& key) {
  const Image conformed = aes_decrypt_conformed(c, key);
  if (c.block_size == 0) return crop(conformed, c.width, c.height);
  return crop(unrotate_image(conformed, key, c.block_size), c.width, c.height);
}

inline ExperimentBundle run_experiment(const Image& img, const SecretKey& key, std::size_t block_size) {
  if (block_size == 0) throw ArgumentError("block size must be at least 1");
  detail::check_header_limits(img, block_size);
  ExperimentBundle bundle;
  bundle.case_config = make_case_config(img, block_size);
  bundle.original = conform_image(img, block_size);
  bundle.aes_only = aes_encrypt_pixels(bundle.original, key);
  bundle.rotated = rotate_image(bundle.original, key, block_size);
  bundle.integrated = aes_encrypt_pixels(bundle.rotated, key,
                                         {static_cast<std::uint32_t>(img.width()),
                                          static_cast<std::uint32_t>(img.height()),
                                          static_cast<std::uint16_t>(block_size)});
  return bundle;
}

}  // namespace cubecipher
