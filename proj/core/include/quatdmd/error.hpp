#pragma once

#include <stdexcept>
#include <string>

namespace quatdmd {

enum class ErrorKind {
  domain,             // e.g. inverse/log of zero
  shape,              // operand dimensions incompatible
  malformed_adjoint,  // complex matrix lacks the quaternion block structure
  pairing_failure,    // adjoint eigenvalues did not pair into conjugates
  non_diagonalizable,
  rank,
  insufficient_data,
  log_singularity,
  io,
  dimension_mismatch,  // images of different geometry
  invalid_argument,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by spectral_decomposition when the eigenvector basis is singular
/// to working precision. Carries the ratio sigma_min / sigma_max of the basis.
class NonDiagonalizableError : public Error {
 public:
  NonDiagonalizableError(const std::string& what, double inverse_condition)
      : Error(ErrorKind::non_diagonalizable, what),
        inverse_condition_(inverse_condition) {}

  double inverse_condition() const noexcept { return inverse_condition_; }

 private:
  double inverse_condition_;
};

}  // namespace quatdmd
