#include "mms/manufactured.hpp"

#include <cmath>

namespace mms {

double sinpi(double x) {
  double r = std::remainder(x, 2.0);  // exact, r in [-1, 1]
  if (r > 0.5) {
    r = 1.0 - r;
  } else if (r < -0.5) {
    r = -1.0 - r;
  }
  return std::sin(M_PI * r);
}

double cospi(double x) { return sinpi(x + 0.5); }

DerivBundle eval(const MmsField& field, const Vec3& X) {
  const double n = static_cast<double>(field.n);
  const double npi = n * M_PI;

  const double sx = sinpi(n * X[0]);
  const double sy = sinpi(n * X[1]);
  const double sz = sinpi(n * X[2]);
  const double cx = cospi(n * X[0]);
  const double cy = cospi(n * X[1]);
  const double cz = cospi(n * X[2]);

  const double s = field.C1 * sx * sy * sz;
  // First and second derivatives of the scalar factor.
  const double g[3] = {field.C1 * npi * cx * sy * sz,
                       field.C1 * npi * sx * cy * sz,
                       field.C1 * npi * sx * sy * cz};
  const double npi2 = npi * npi;
  double h[3][3];
  h[0][0] = -npi2 * s;
  h[1][1] = -npi2 * s;
  h[2][2] = -npi2 * s;
  h[0][1] = h[1][0] = field.C1 * npi2 * cx * cy * sz;
  h[0][2] = h[2][0] = field.C1 * npi2 * cx * sy * cz;
  h[1][2] = h[2][1] = field.C1 * npi2 * sx * cy * cz;

  DerivBundle b;
  for (int i = 0; i < 3; ++i) {
    b.u[i] = s;
    for (int j = 0; j < 3; ++j) {
      b.grad_u.m[i][j] = g[j];
      for (int k = 0; k < 3; ++k) b.hess_u[i][j][k] = h[j][k];
    }
  }
  return b;
}

Kinematics kinematics(const MmsField& field, const Vec3& X) {
  const DerivBundle b = eval(field, X);
  Kinematics kin;
  kin.F = Mat3::identity() + b.grad_u;
  kin.J = det(kin.F);
  if (!(kin.J > 0.0)) {
    throw NonPositiveJacobian("kinematics: det F <= 0 (field amplitude C1 too large)");
  }
  kin.B = aat(kin.F);
  kin.C = ata(kin.F);
  return kin;
}

SourceEval source(CaseId c, const MaterialParams& p, const MmsField& field,
                  const Vec3& X) {
  const DerivBundle b = eval(field, X);
  Mat3 F = Mat3::identity() + b.grad_u;
  const Tangent4 A = tangent(c, p, F);

  SourceEval out;
  for (int i = 0; i < 3; ++i) {
    double div_i = 0.0;
    for (int k = 0; k < 3; ++k)
      for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n)
          div_i += A.a[i][k][m][n] * b.hess_u[m][n][k];
    out.phi[i] = -div_i;
  }
  out.J = det(F);
  return out;
}

Vec3 oracle_source(CaseId c, const MaterialParams& p, const MmsField& field,
                   const Vec3& X, double step) {
  // (dP/dX_k)_ik by the five-point stencil; phi = -sum_k column_k'.
  Vec3 phi;
  Mat3 dsum;
  for (int k = 0; k < 3; ++k) {
    Vec3 Xp = X, Xpp = X, Xm = X, Xmm = X;
    Xp[k] += step;
    Xpp[k] += 2.0 * step;
    Xm[k] -= step;
    Xmm[k] -= 2.0 * step;
    auto P_at = [&](const Vec3& Y) {
      const DerivBundle b = eval(field, Y);
      return pk1(c, p, Mat3::identity() + b.grad_u);
    };
    const Mat3 Pp = P_at(Xp);
    const Mat3 Ppp = P_at(Xpp);
    const Mat3 Pm = P_at(Xm);
    const Mat3 Pmm = P_at(Xmm);
    for (int i = 0; i < 3; ++i) {
      dsum.m[i][k] = (-Ppp.m[i][k] + 8.0 * Pp.m[i][k] - 8.0 * Pm.m[i][k] +
                      Pmm.m[i][k]) /
                     (12.0 * step);
    }
  }
  for (int i = 0; i < 3; ++i)
    phi[i] = -(dsum.m[i][0] + dsum.m[i][1] + dsum.m[i][2]);
  return phi;
}

Vec3 case1_closed_form(const Vec3& X) {
  const double pi2_6 = 6.0 * M_PI * M_PI;
  const double sx = sinpi(2.0 * X[0]);
  const double sy = sinpi(2.0 * X[1]);
  const double sz = sinpi(2.0 * X[2]);
  const double cx = cospi(2.0 * X[0]);
  const double cy = cospi(2.0 * X[1]);
  const double cz = cospi(2.0 * X[2]);
  const double triple = 2.0 * sx * sy * sz;
  Vec3 phi;
  phi[0] = pi2_6 * (triple - sinpi(2.0 * X[1] + 2.0 * X[2]) * cx);
  phi[1] = pi2_6 * (triple - sinpi(2.0 * X[0] + 2.0 * X[2]) * cy);
  phi[2] = pi2_6 * (triple - sinpi(2.0 * X[0] + 2.0 * X[1]) * cz);
  return phi;
}

std::string to_string(LoadMode m) {
  return m == LoadMode::lumped ? "lumped" : "body";
}

LoadMode load_mode_from_string(const std::string& s) {
  if (s == "lumped" || s == "cload") return LoadMode::lumped;
  if (s == "body" || s == "dload") return LoadMode::body;
  throw ValidationError("unknown load mode '" + s +
                        "' (expected lumped/cload or body/dload)");
}

Vec3 load_value(CaseId c, const MaterialParams& p, const MmsField& field,
                const Vec3& X, LoadMode mode, bool nlgeom, double h) {
  if (mode == LoadMode::lumped) {
    for (int d = 0; d < 3; ++d) {
      if (X[d] <= 0.0 || X[d] >= 1.0) {
        throw BoundaryNode("load_value: lumped load requested at a boundary node");
      }
    }
    const SourceEval se = source(c, p, field, X);
    return se.phi * (h * h * h);
  }
  const SourceEval se = source(c, p, field, X);
  if (nlgeom) return se.phi * (1.0 / se.J);
  return se.phi;
}

}  // namespace mms
