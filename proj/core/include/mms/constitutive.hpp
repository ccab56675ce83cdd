#pragma once

#include "mms/material.hpp"
#include "mms/tensor.hpp"

namespace mms {

/// Small-strain tensor: symmetric part of the displacement gradient.
SymMat3 small_strain(const Mat3& grad_u);

/// Cauchy stress for the given model at deformation gradient F.
///   I   sigma = 2 mu eps + lambda tr(eps) I,  eps from F - I
///   II  sigma = mu J^(-5/3) (B - I1/3 I) + K0 (J - 1) I
///   III sigma = 2 mu eps_ln + lambda tr(eps_ln) I,  eps_ln = log(sqrt(B))
/// Cases II/III throw NonPositiveJacobian when det F <= 1e-10.
SymMat3 cauchy(CaseId c, const MaterialParams& p, const Mat3& F);

/// First Piola-Kirchhoff stress: sigma itself for Case I (small-strain
/// identification), J sigma F^-T for Cases II/III.
Mat3 pk1(CaseId c, const MaterialParams& p, const Mat3& F);

/// Neo-Hookean strain energy density
///   W = C10 (J^(-2/3) I1 - 3) + (1/D1)(J - 1)^2.
double strain_energy_neo(const MaterialParams& p, const Mat3& F);

/// Fourth-order consistent tangent a[i][j][m][n] = dP_ij / dF_mn.
struct Tangent4 {
  double a[3][3][3][3]{};

  /// Contraction A : H over the last two indices.
  Mat3 contract(const Mat3& H) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int m = 0; m < 3; ++m)
          for (int n = 0; n < 3; ++n) s += a[i][j][m][n] * H.m[m][n];
        r.m[i][j] = s;
      }
    return r;
  }
};

/// Exact linearization of pk1 at F. Case I is the constant Hooke tensor;
/// Cases II/III are assembled from the analytic directional derivatives of
/// P = J sigma F^-T, with the Hencky strain derivative going through
/// the divided-difference derivative of x -> log(x)/2 on B.
Tangent4 tangent(CaseId c, const MaterialParams& p, const Mat3& F);

}  // namespace mms
