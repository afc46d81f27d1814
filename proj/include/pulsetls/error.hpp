// Copyright 2026 The pulsetls Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace pulsetls {

// Numeric values are shared with the C API status codes and the CLI exit
// codes.
enum class ErrorCode : int {
  kInvalidArgument = 2,
  kNumericalGuard = 3,
  kRegimeViolation = 4,
  kDegenerate = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorCode::kInvalidArgument, what) {}
};

// Step size or grid too coarse for the requested accuracy.
class NumericalGuard : public Error {
 public:
  explicit NumericalGuard(const std::string& what)
      : Error(ErrorCode::kNumericalGuard, what) {}
};

// Negative single-photon density: three-photon emission is not negligible and
// the pair bookkeeping no longer holds.
class RegimeViolation : public Error {
 public:
  explicit RegimeViolation(const std::string& what)
      : Error(ErrorCode::kRegimeViolation, what) {}
};

// A ratio with a vanishing denominator (no emission at all).
class Degenerate : public Error {
 public:
  explicit Degenerate(const std::string& what)
      : Error(ErrorCode::kDegenerate, what) {}
};

}  // namespace pulsetls
