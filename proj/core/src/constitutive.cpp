#include "mms/constitutive.hpp"

#include <cmath>
#include <optional>

namespace mms {

namespace {

constexpr double kMinJacobian = 1e-10;

double checked_jacobian(const Mat3& F) {
  const double J = det(F);
  if (!(J > kMinJacobian)) {
    throw NonPositiveJacobian("det F <= 1e-10: inverted deformation state");
  }
  return J;
}

SymMat3 hooke(const MaterialParams& p, const SymMat3& eps) {
  SymMat3 s = 2.0 * p.mu * eps;
  const double vol = p.lambda * trace(eps);
  s.a[0] += vol;
  s.a[1] += vol;
  s.a[2] += vol;
  return s;
}

SymMat3 cauchy_neo(const MaterialParams& p, const SymMat3& B, double J) {
  const double I1 = trace(B);
  const double Jm53 = std::pow(J, -5.0 / 3.0);
  SymMat3 s = (p.mu * Jm53) * B;
  const double iso = -p.mu * Jm53 * I1 / 3.0 + p.K0 * (J - 1.0);
  s.a[0] += iso;
  s.a[1] += iso;
  s.a[2] += iso;
  return s;
}

SymMat3 cauchy_hencky(const MaterialParams& p, const SymMat3& eps_ln) {
  return hooke(p, eps_ln);
}

}  // namespace

SymMat3 small_strain(const Mat3& grad_u) { return sym_part(grad_u); }

SymMat3 cauchy(CaseId c, const MaterialParams& p, const Mat3& F) {
  switch (c) {
    case CaseId::I: {
      const SymMat3 eps = sym_part(F - Mat3::identity());
      return hooke(p, eps);
    }
    case CaseId::II: {
      const double J = checked_jacobian(F);
      return cauchy_neo(p, aat(F), J);
    }
    case CaseId::III: {
      checked_jacobian(F);
      const SymMat3 eps_ln = mat_func_sym(aat(F), kHalfLog);
      return cauchy_hencky(p, eps_ln);
    }
  }
  throw Error("cauchy: unreachable");
}

Mat3 pk1(CaseId c, const MaterialParams& p, const Mat3& F) {
  if (c == CaseId::I) return cauchy(c, p, F).full();
  const double J = checked_jacobian(F);
  const Mat3 FinvT = transpose(inverse(F));
  return J * (cauchy(c, p, F).full() * FinvT);
}

double strain_energy_neo(const MaterialParams& p, const Mat3& F) {
  const double J = checked_jacobian(F);
  const double I1 = trace(aat(F));
  return p.C10 * (std::pow(J, -2.0 / 3.0) * I1 - 3.0) +
         (1.0 / p.D1) * (J - 1.0) * (J - 1.0);
}

Tangent4 tangent(CaseId c, const MaterialParams& p, const Mat3& F) {
  Tangent4 A;

  if (c == CaseId::I) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int m = 0; m < 3; ++m)
          for (int n = 0; n < 3; ++n) {
            double v = 0.0;
            if (i == j && m == n) v += p.lambda;
            if (i == m && j == n) v += p.mu;
            if (i == n && j == m) v += p.mu;
            A.a[i][j][m][n] = v;
          }
    return A;
  }

  const double J = checked_jacobian(F);
  const Mat3 Finv = inverse(F);
  const Mat3 FinvT = transpose(Finv);
  const SymMat3 B = aat(F);
  const double I1 = trace(B);
  const double Jm53 = std::pow(J, -5.0 / 3.0);

  SymMat3 sigma;
  std::optional<MatFuncDerivative> dlog;
  if (c == CaseId::II) {
    sigma = cauchy_neo(p, B, J);
  } else {
    dlog.emplace(B, kHalfLog);
    sigma = cauchy_hencky(p, dlog->value());
  }
  const Mat3 sigma_f = sigma.full();

  // Directional derivative of P = J sigma F^-T along each unit direction
  // E = e_m (x) e_n.
  for (int m = 0; m < 3; ++m) {
    for (int n = 0; n < 3; ++n) {
      const double trT = Finv.m[n][m];  // tr(F^-1 E)
      const double dJ = J * trT;

      // dB = E F^T + F E^T: rank-two update from column n of F at slot m.
      SymMat3 dB;
      for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
          double v = 0.0;
          if (i == m) v += F.m[j][n];
          if (j == m) v += F.m[i][n];
          dB.set(i, j, v);
        }

      SymMat3 dsigma;
      if (c == CaseId::II) {
        const double trdB = trace(dB);
        dsigma = (p.mu * Jm53) * dB;
        const double dev_scale = -(5.0 / 3.0) * p.mu * Jm53 * trT;
        dsigma += dev_scale * B;
        const double iso = -p.mu * Jm53 * trdB / 3.0 -
                           dev_scale * I1 / 3.0 + p.K0 * dJ;
        dsigma.a[0] += iso;
        dsigma.a[1] += iso;
        dsigma.a[2] += iso;
      } else {
        dsigma = 2.0 * p.mu * dlog->apply(dB);
        const double vol = p.lambda * trT;  // d tr(eps_ln) = d log J
        dsigma.a[0] += vol;
        dsigma.a[1] += vol;
        dsigma.a[2] += vol;
      }

      // dF^-T = -F^-T E^T F^-T = -(row n of F^-1) (x) (col m of F^-1).
      Vec3 rn(Finv.m[n][0], Finv.m[n][1], Finv.m[n][2]);
      Vec3 cm(Finv.m[0][m], Finv.m[1][m], Finv.m[2][m]);
      const Mat3 neg_dFinvT = outer(rn, cm);

      const Mat3 dsigma_f = dsigma.full();
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          double v = dJ * (sigma_f.m[i][0] * FinvT.m[0][j] +
                           sigma_f.m[i][1] * FinvT.m[1][j] +
                           sigma_f.m[i][2] * FinvT.m[2][j]);
          v += J * (dsigma_f.m[i][0] * FinvT.m[0][j] +
                    dsigma_f.m[i][1] * FinvT.m[1][j] +
                    dsigma_f.m[i][2] * FinvT.m[2][j]);
          v -= J * (sigma_f.m[i][0] * neg_dFinvT.m[0][j] +
                    sigma_f.m[i][1] * neg_dFinvT.m[1][j] +
                    sigma_f.m[i][2] * neg_dFinvT.m[2][j]);
          A.a[i][j][m][n] = v;
        }
    }
  }
  return A;
}

}  // namespace mms
