#pragma once

#include <stdexcept>
#include <string>

namespace cubecipher {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Image or face dimensions violate a divisibility or equality requirement.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Bad argument outside of geometry (empty key, index out of range, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Decryption failed: wrong key, corrupted payload, or invalid padding.
class CryptoError : public Error {
 public:
  using Error::Error;
};

/// A serialized container (MCAE, PGM) could not be parsed.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace cubecipher
