#pragma once

// Binary PGM (P5, maxval 255) and raw-with-sidecar image I/O, plus an
// atomic file writer.

#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "cubecipher/errors.hpp"
#include "cubecipher/image.hpp"

namespace cubecipher {

/// File could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Input is a colour image; only single-channel input is accepted.
class ColorInputError : public FormatError {
 public:
  using FormatError::FormatError;
};

namespace detail {

class PnmTokenizer {
 public:
  explicit PnmTokenizer(std::span<const std::uint8_t> data) : data_(data) {}

  std::size_t number() {
    skip_space_and_comments();
    if (pos_ >= data_.size() || !std::isdigit(data_[pos_])) throw FormatError("malformed PGM header");
    std::size_t v = 0;
    while (pos_ < data_.size() && std::isdigit(data_[pos_])) {
      v = v * 10 + (data_[pos_++] - '0');
      if (v > (std::size_t{1} << 31)) throw FormatError("PGM header value out of range");
    }
    return v;
  }

  /// Consumes the single whitespace byte that ends the header.
  void end_header() {
    if (pos_ >= data_.size() || !std::isspace(data_[pos_])) throw FormatError("malformed PGM header");
    ++pos_;
  }

  std::size_t pos() const noexcept { return pos_; }

 private:
  void skip_space_and_comments() {
    while (pos_ < data_.size()) {
      if (std::isspace(data_[pos_])) {
        ++pos_;
      } else if (data_[pos_] == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 2;
};

}  // namespace detail

inline Image decode_pgm(std::span<const std::uint8_t> data) {
  if (data.size() < 2 || data[0] != 'P') throw FormatError("not a PNM file");
  switch (data[1]) {
    case '5': break;
    case '3':
    case '6':
      throw ColorInputError("colour PPM input is not supported; convert to 8-bit grayscale PGM first");
    case '2': throw FormatError("ASCII PGM (P2) is not supported; use binary P5");
    default: throw FormatError("unsupported PNM variant P" + std::string(1, static_cast<char>(data[1])));
  }
  detail::PnmTokenizer tok(data);
  const std::size_t width = tok.number();
  const std::size_t height = tok.number();
  const std::size_t maxval = tok.number();
  tok.end_header();
  if (width == 0 || height == 0) throw FormatError("PGM has a zero dimension");
  if (maxval != 255) throw FormatError("PGM maxval must be 255, got " + std::to_string(maxval));
  if (data.size() - tok.pos() < width * height) throw FormatError("PGM pixel data truncated");
  const auto first = data.begin() + static_cast<std::ptrdiff_t>(tok.pos());
  return Image(width, height, std::vector<std::uint8_t>(first, first + static_cast<std::ptrdiff_t>(width * height)));
}

inline std::vector<std::uint8_t> encode_pgm(const Image& img) {
  const std::string header = "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), img.pixels().begin(), img.pixels().end());
  return out;
}

inline std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("error reading " + path.string());
  return bytes;
}

/// Writes to a temporary sibling and renames it into place, so `path` is
/// either untouched or complete.
inline void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot create " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw IoError("error writing " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot rename into " + path.string());
  }
}

inline void write_file_atomic(const std::filesystem::path& path, std::string_view text) {
  write_file_atomic(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

inline std::filesystem::path sidecar_path(const std::filesystem::path& raw) {
  std::filesystem::path p = raw;
  p += ".dims";
  return p;
}

inline bool is_raw_path(const std::filesystem::path& p) { return p.extension() == ".raw"; }

/// Reads a PGM, or a `.raw` pixel dump whose `<file>.dims` sidecar holds
/// "WIDTH HEIGHT".
inline Image read_image(const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = read_file(path);
  if (!is_raw_path(path)) return decode_pgm(bytes);

  const std::vector<std::uint8_t> dims = read_file(sidecar_path(path));
  std::istringstream text(std::string(dims.begin(), dims.end()));
  std::size_t width = 0, height = 0;
  if (!(text >> width >> height) || width == 0 || height == 0) {
    throw FormatError("sidecar " + sidecar_path(path).string() + " must hold \"WIDTH HEIGHT\"");
  }
  if (bytes.size() != width * height) {
    throw FormatError("raw file holds " + std::to_string(bytes.size()) + " bytes, sidecar says " +
                      std::to_string(width * height));
  }
  return Image(width, height, bytes);
}

inline void write_image(const std::filesystem::path& path, const Image& img) {
  if (!is_raw_path(path)) {
    write_file_atomic(path, encode_pgm(img));
    return;
  }
  write_file_atomic(sidecar_path(path), std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n");
  write_file_atomic(path, img.pixels());
}

}  // namespace cubecipher
