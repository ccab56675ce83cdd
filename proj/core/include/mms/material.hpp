#pragma once

#include <string>

#include "mms/errors.hpp"

namespace mms {

/// The three constitutive models.
///   I   small-strain linear elasticity
///   II  finite-strain neo-Hookean hyperelasticity
///   III finite-strain Hencky elasticity
enum class CaseId { I, II, III };

std::string to_string(CaseId c);
CaseId case_from_string(const std::string& s);

/// Lame constants plus every derived constant the models need. Derived
/// values are fixed at construction:
///   E  = mu (3 lambda + 2 mu) / (lambda + mu)
///   nu = lambda / (2 (lambda + mu))
///   C10 = mu / 2,  K0 = lambda + 2 mu / 3,  D1 = 2 / K0
struct MaterialParams {
  double lambda;
  double mu;
  double E;
  double nu;
  double C10;
  double D1;
  double K0;
};

/// Builds MaterialParams from Lame constants. Throws InvalidMaterial unless
/// mu > 0 and 3 lambda + 2 mu > 0.
MaterialParams from_lame(double lambda, double mu);

}  // namespace mms
