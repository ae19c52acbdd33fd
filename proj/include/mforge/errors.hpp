// Error types shared across the library. Each maps to one failure mode of
// the public operations; the CLI translates them into stable exit codes.
#pragma once

#include <stdexcept>
#include <string>

namespace mforge {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input value violates a range precondition (probabilities, sums, sizes).
struct ParameterOutOfRange : Error {
  using Error::Error;
};

// Requested channel kind contradicts the given parameters.
struct KindMismatch : Error {
  using Error::Error;
};

// 2^m would exceed the configured space cap.
struct SpaceTooLarge : Error {
  using Error::Error;
};

// A log of a zero probability would appear in a cyclic sum.
struct ZeroProbabilityFactor : Error {
  using Error::Error;
};

struct DeltaOutOfRange : Error {
  using Error::Error;
};

// A brute-force oracle was asked to run beyond its size guard.
struct OracleScaleExceeded : Error {
  using Error::Error;
};

// Two objects that must live on the same space do not.
struct SpaceMismatch : Error {
  using Error::Error;
};

// Malformed file or inline spec.
struct ParseError : Error {
  using Error::Error;
};

// Construction-time invariant failure (stochastic sums, symmetry, band).
struct ValidationError : Error {
  using Error::Error;
};

}  // namespace mforge
