#pragma once

#include "mms/constitutive.hpp"
#include "mms/material.hpp"
#include "mms/tensor.hpp"

namespace mms {

/// sin(pi x) / cos(pi x) with exact argument reduction, so that integer x
/// gives an exact zero for sinpi. Node coordinates land exactly on the
/// lattice, which keeps the manufactured displacement exactly zero on the
/// cube faces.
double sinpi(double x);
double cospi(double x);

/// Manufactured displacement u_i = C1 sin(n pi X) sin(n pi Y) sin(n pi Z)
/// for every component i. Zero on all faces of the unit cube by
/// construction.
struct MmsField {
  double C1 = 0.01;
  int n = 2;

  MmsField() = default;
  MmsField(double C1_, int n_) : C1(C1_), n(n_) { validate(); }
  void validate() const {
    if (C1 == 0.0) throw ValidationError("MmsField: C1 must be nonzero");
    if (n < 1) throw ValidationError("MmsField: n must be >= 1");
  }
};

/// Displacement, gradient and second derivatives at one point, all in
/// closed form. hess_u[i][j][k] = d2 u_i / dX_j dX_k, symmetric in (j,k)
/// by construction.
struct DerivBundle {
  Vec3 u;
  Mat3 grad_u;
  double hess_u[3][3][3];
};

struct Kinematics {
  Mat3 F;
  SymMat3 B;
  SymMat3 C;
  double J;
};

/// Source term and volume ratio at one point.
struct SourceEval {
  Vec3 phi;
  double J;
};

DerivBundle eval(const MmsField& field, const Vec3& X);

/// F = I + grad u, B = F F^T, C = F^T F, J = det F.
/// Throws NonPositiveJacobian if the field amplitude inverts the mapping.
Kinematics kinematics(const MmsField& field, const Vec3& X);

/// phi = -div P, evaluated exactly through the constitutive tangent chain
/// rule: (div P)_i = A[i][k][m][n] hess_u[m][n][k], summed over k, m, n.
SourceEval source(CaseId c, const MaterialParams& p, const MmsField& field,
                  const Vec3& X);

/// Independent check of source(): -div P by fourth-order central finite
/// differences of pk1 along each coordinate. Truncation O(step^4).
Vec3 oracle_source(CaseId c, const MaterialParams& p, const MmsField& field,
                   const Vec3& X, double step = 1e-3);

/// Closed-form Case I source at the reference constants
/// (C1 = 0.01, n = 2, lambda = 100, mu = 50):
///   phi_x = 6 pi^2 (2 sin(2piX) sin(2piY) sin(2piZ)
///                   - sin(pi(2Y+2Z)) cos(2piX)),  cyclic in x,y,z.
Vec3 case1_closed_form(const Vec3& X);

enum class LoadMode { lumped, body };

std::string to_string(LoadMode m);
LoadMode load_mode_from_string(const std::string& s);

/// Discrete load value at X.
///   lumped: phi(X) h^3 (interior nodes only; throws BoundaryNode otherwise)
///   body:   phi(X), or phi(X)/J(X) when nlgeom is set (current-volume
///           load convention)
Vec3 load_value(CaseId c, const MaterialParams& p, const MmsField& field,
                const Vec3& X, LoadMode mode, bool nlgeom, double h);

}  // namespace mms
