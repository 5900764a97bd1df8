// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mimo {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed configuration, dimension mismatch or wrong arity.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// M < R: no sampling plan can recover R inputs from M outputs.
class InsufficientChannelsError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// A frequency index outside the planned band [N1, N2].
class OutOfBandError : public Error {
 public:
  using Error::Error;
};

/// A truncation index exceeds what a coefficient source can provide, or is
/// too small to cover the band.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// B(n) is not of full column rank for some n in I_1.
class SingularSystemError : public Error {
 public:
  SingularSystemError(const std::string& what, std::vector<int> deficient)
      : Error(what), deficient_(std::move(deficient)) {}

  const std::vector<int>& deficient() const noexcept { return deficient_; }

 private:
  std::vector<int> deficient_;
};

/// An explicitly supplied Q(n) fails Q(n) B(n) = I.
class InvalidInverseError : public Error {
 public:
  using Error::Error;
};

}  // namespace mimo
