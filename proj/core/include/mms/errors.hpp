#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mms {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonFiniteInput : Error {
  using Error::Error;
};

/// A matrix function that needs a positive spectrum (log, sqrt) was given a
/// matrix with an eigenvalue at or below the positivity tolerance.
struct NonPositiveEigenvalue : Error {
  using Error::Error;
};

struct SingularMatrix : Error {
  using Error::Error;
};

struct InvalidMaterial : Error {
  using Error::Error;
};

/// det F <= 0: deformation state is non-physical (element inversion).
struct NonPositiveJacobian : Error {
  using Error::Error;
};

struct InvalidResolution : Error {
  using Error::Error;
};

/// Lumped load requested at a boundary node; boundary loads are irrelevant
/// under the fixed zero-displacement boundary and asking for one is a caller
/// bug.
struct BoundaryNode : Error {
  using Error::Error;
};

struct LinearSolveFailure : Error {
  using Error::Error;
};

struct NewtonDivergence : Error {
  NewtonDivergence(const std::string& what, double pseudo_time,
                   std::vector<double> residual_history)
      : Error(what),
        pseudo_time(pseudo_time),
        residual_history(std::move(residual_history)) {}
  double pseudo_time;
  std::vector<double> residual_history;
};

struct NonPositiveNorm : Error {
  using Error::Error;
};

/// Increment triplet with (L_m - L_f) at the noise floor or sign-inconsistent
/// differences; the increment error is not resolvable from these norms.
struct DegenerateTriplet : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

struct ValidationError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace mms
