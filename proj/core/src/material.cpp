#include "mms/material.hpp"

namespace mms {

std::string to_string(CaseId c) {
  switch (c) {
    case CaseId::I:
      return "I";
    case CaseId::II:
      return "II";
    case CaseId::III:
      return "III";
  }
  return "?";
}

CaseId case_from_string(const std::string& s) {
  if (s == "I" || s == "1" || s == "i") return CaseId::I;
  if (s == "II" || s == "2" || s == "ii") return CaseId::II;
  if (s == "III" || s == "3" || s == "iii") return CaseId::III;
  throw ValidationError("unknown case '" + s + "' (expected I, II or III)");
}

MaterialParams from_lame(double lambda, double mu) {
  if (!(mu > 0.0)) throw InvalidMaterial("from_lame: mu must be positive");
  if (!(3.0 * lambda + 2.0 * mu > 0.0)) {
    throw InvalidMaterial("from_lame: bulk modulus must be positive");
  }
  MaterialParams p;
  p.lambda = lambda;
  p.mu = mu;
  p.E = mu * (3.0 * lambda + 2.0 * mu) / (lambda + mu);
  p.nu = lambda / (2.0 * (lambda + mu));
  p.C10 = 0.5 * mu;
  p.K0 = lambda + 2.0 * mu / 3.0;
  p.D1 = 2.0 / p.K0;
  return p;
}

}  // namespace mms
