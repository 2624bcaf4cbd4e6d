// Copyright 2026 The dalab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace dalab {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (dimension mismatch, point
/// outside the ball, non-unitary matrix, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed polynomial / functional text or JSON.
class ParseError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A functional pairing would need coefficients beyond a stored truncation.
class TruncationOverflow : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// An iterative solver did not converge, or a numerical certificate could
/// not be produced. Carries the tail of the iteration history.
class NumericalFailure : public Error {
 public:
  NumericalFailure(const std::string& what, std::vector<double> trace = {})
      : Error(what), trace_(std::move(trace)) {}

  const std::vector<double>& trace() const noexcept { return trace_; }

 private:
  std::vector<double> trace_;
};

}  // namespace dalab
