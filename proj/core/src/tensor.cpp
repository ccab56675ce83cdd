#include "mms/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace mms {

Mat3& Mat3::operator+=(const Mat3& o) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] += o.m[i][j];
  return *this;
}

Mat3& Mat3::operator-=(const Mat3& o) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] -= o.m[i][j];
  return *this;
}

Mat3& Mat3::operator*=(double s) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] *= s;
  return *this;
}

Mat3 operator+(Mat3 a, const Mat3& b) { return a += b; }
Mat3 operator-(Mat3 a, const Mat3& b) { return a -= b; }
Mat3 operator*(double s, Mat3 a) { return a *= s; }

Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      r.m[i][j] =
          a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j] + a.m[i][2] * b.m[2][j];
    }
  return r;
}

Vec3 operator*(const Mat3& a, const Vec3& x) {
  Vec3 r;
  for (int i = 0; i < 3; ++i)
    r[i] = a.m[i][0] * x[0] + a.m[i][1] * x[1] + a.m[i][2] * x[2];
  return r;
}

Mat3 transpose(const Mat3& a) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[i][j] = a.m[j][i];
  return r;
}

double trace(const Mat3& a) { return a.m[0][0] + a.m[1][1] + a.m[2][2]; }

double det(const Mat3& a) {
  return a.m[0][0] * (a.m[1][1] * a.m[2][2] - a.m[1][2] * a.m[2][1]) -
         a.m[0][1] * (a.m[1][0] * a.m[2][2] - a.m[1][2] * a.m[2][0]) +
         a.m[0][2] * (a.m[1][0] * a.m[2][1] - a.m[1][1] * a.m[2][0]);
}

Mat3 inverse(const Mat3& a) {
  const double d = det(a);
  if (std::abs(d) < 1e-14) {
    throw SingularMatrix("inverse: |det| < 1e-14");
  }
  const double inv = 1.0 / d;
  Mat3 r;
  r.m[0][0] = (a.m[1][1] * a.m[2][2] - a.m[1][2] * a.m[2][1]) * inv;
  r.m[0][1] = (a.m[0][2] * a.m[2][1] - a.m[0][1] * a.m[2][2]) * inv;
  r.m[0][2] = (a.m[0][1] * a.m[1][2] - a.m[0][2] * a.m[1][1]) * inv;
  r.m[1][0] = (a.m[1][2] * a.m[2][0] - a.m[1][0] * a.m[2][2]) * inv;
  r.m[1][1] = (a.m[0][0] * a.m[2][2] - a.m[0][2] * a.m[2][0]) * inv;
  r.m[1][2] = (a.m[0][2] * a.m[1][0] - a.m[0][0] * a.m[1][2]) * inv;
  r.m[2][0] = (a.m[1][0] * a.m[2][1] - a.m[1][1] * a.m[2][0]) * inv;
  r.m[2][1] = (a.m[0][1] * a.m[2][0] - a.m[0][0] * a.m[2][1]) * inv;
  r.m[2][2] = (a.m[0][0] * a.m[1][1] - a.m[0][1] * a.m[1][0]) * inv;
  return r;
}

Mat3 outer(const Vec3& a, const Vec3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[i][j] = a[i] * b[j];
  return r;
}

double norm_fro(const Mat3& a) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += a.m[i][j] * a.m[i][j];
  return std::sqrt(s);
}

double norm_inf(const Mat3& a) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s = std::max(s, std::abs(a.m[i][j]));
  return s;
}

bool is_finite(const Mat3& a) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (!std::isfinite(a.m[i][j])) return false;
  return true;
}

Mat3 SymMat3::full() const {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[i][j] = (*this)(i, j);
  return r;
}

SymMat3& SymMat3::operator+=(const SymMat3& o) {
  for (int k = 0; k < 6; ++k) a[k] += o.a[k];
  return *this;
}

SymMat3& SymMat3::operator-=(const SymMat3& o) {
  for (int k = 0; k < 6; ++k) a[k] -= o.a[k];
  return *this;
}

SymMat3& SymMat3::operator*=(double s) {
  for (int k = 0; k < 6; ++k) a[k] *= s;
  return *this;
}

SymMat3 operator+(SymMat3 a, const SymMat3& b) { return a += b; }
SymMat3 operator-(SymMat3 a, const SymMat3& b) { return a -= b; }
SymMat3 operator*(double s, SymMat3 a) { return a *= s; }

double trace(const SymMat3& a) { return a.a[0] + a.a[1] + a.a[2]; }

double norm_fro(const SymMat3& a) {
  return std::sqrt(a.a[0] * a.a[0] + a.a[1] * a.a[1] + a.a[2] * a.a[2] +
                   2.0 * (a.a[3] * a.a[3] + a.a[4] * a.a[4] + a.a[5] * a.a[5]));
}

double norm_inf(const SymMat3& a) {
  double s = 0.0;
  for (int k = 0; k < 6; ++k) s = std::max(s, std::abs(a.a[k]));
  return s;
}

bool is_finite(const SymMat3& a) {
  for (int k = 0; k < 6; ++k)
    if (!std::isfinite(a.a[k])) return false;
  return true;
}

SymMat3 sym_part(const Mat3& a) {
  SymMat3 r;
  r.a[0] = a.m[0][0];
  r.a[1] = a.m[1][1];
  r.a[2] = a.m[2][2];
  r.a[3] = 0.5 * (a.m[0][1] + a.m[1][0]);
  r.a[4] = 0.5 * (a.m[1][2] + a.m[2][1]);
  r.a[5] = 0.5 * (a.m[0][2] + a.m[2][0]);
  return r;
}

SymMat3 aat(const Mat3& a) {
  SymMat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      double s =
          a.m[i][0] * a.m[j][0] + a.m[i][1] * a.m[j][1] + a.m[i][2] * a.m[j][2];
      r.set(i, j, s);
    }
  return r;
}

SymMat3 ata(const Mat3& a) {
  SymMat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      double s =
          a.m[0][i] * a.m[0][j] + a.m[1][i] * a.m[1][j] + a.m[2][i] * a.m[2][j];
      r.set(i, j, s);
    }
  return r;
}

EigenSys sym_eig(const SymMat3& A) {
  if (!is_finite(A)) throw NonFiniteInput("sym_eig: non-finite input");

  double a[3][3];
  {
    const Mat3 f = A.full();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) a[i][j] = f.m[i][j];
  }
  double q[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

  const double scale = std::max(norm_inf(A), 1e-300);

  // Cyclic Jacobi sweeps; quadratic convergence, a handful of sweeps suffice.
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = std::abs(a[0][1]) + std::abs(a[0][2]) + std::abs(a[1][2]);
    if (off <= 1e-18 * scale) break;
    for (int p = 0; p < 2; ++p) {
      for (int r = p + 1; r < 3; ++r) {
        if (std::abs(a[p][r]) <= 1e-300) continue;
        const double theta = (a[r][r] - a[p][p]) / (2.0 * a[p][r]);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        const double apr = a[p][r];
        a[p][p] -= t * apr;
        a[r][r] += t * apr;
        a[p][r] = 0.0;
        a[r][p] = 0.0;
        for (int k = 0; k < 3; ++k) {
          if (k != p && k != r) {
            const double akp = a[k][p];
            const double akr = a[k][r];
            a[k][p] = akp - s * (akr + tau * akp);
            a[p][k] = a[k][p];
            a[k][r] = akr + s * (akp - tau * akr);
            a[r][k] = a[k][r];
          }
          const double qkp = q[k][p];
          const double qkr = q[k][r];
          q[k][p] = qkp - s * (qkr + tau * qkp);
          q[k][r] = qkr + s * (qkp - tau * qkr);
        }
      }
    }
  }

  int order[3] = {0, 1, 2};
  double w[3] = {a[0][0], a[1][1], a[2][2]};
  std::sort(order, order + 3, [&](int x, int y) { return w[x] > w[y]; });

  EigenSys es;
  for (int i = 0; i < 3; ++i) {
    es.eigenvalues[i] = w[order[i]];
    for (int k = 0; k < 3; ++k) es.eigenvectors.m[k][i] = q[k][order[i]];
  }
  return es;
}

namespace {

double fn_log(double x) { return std::log(x); }
double fn_dlog(double x) { return 1.0 / x; }
double fn_sqrt(double x) { return std::sqrt(x); }
double fn_dsqrt(double x) { return 0.5 / std::sqrt(x); }
double fn_exp(double x) { return std::exp(x); }
double fn_square(double x) { return x * x; }
double fn_dsquare(double x) { return 2.0 * x; }
double fn_half_log(double x) { return 0.5 * std::log(x); }
double fn_dhalf_log(double x) { return 0.5 / x; }

void check_spectrum(const EigenSys& es, const ScalarFunction& f) {
  if (!f.requires_positive) return;
  const double lmax = std::max(
      {std::abs(es.eigenvalues[0]), std::abs(es.eigenvalues[1]),
       std::abs(es.eigenvalues[2])});
  if (es.eigenvalues[2] <= 1e-14 * std::max(1.0, lmax)) {
    throw NonPositiveEigenvalue(std::string("mat_func_sym: ") + f.name +
                                " requires a positive spectrum");
  }
}

}  // namespace

const ScalarFunction kLog = {fn_log, fn_dlog, true, "log"};
const ScalarFunction kSqrt = {fn_sqrt, fn_dsqrt, true, "sqrt"};
const ScalarFunction kExp = {fn_exp, fn_exp, false, "exp"};
const ScalarFunction kSquare = {fn_square, fn_dsquare, false, "square"};
const ScalarFunction kHalfLog = {fn_half_log, fn_dhalf_log, true, "half_log"};

SymMat3 mat_func_sym(const SymMat3& A, const ScalarFunction& f) {
  const EigenSys es = sym_eig(A);
  check_spectrum(es, f);
  double fv[3];
  for (int i = 0; i < 3; ++i) fv[i] = f.value(es.eigenvalues[i]);
  SymMat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k)
        s += fv[k] * es.eigenvectors.m[i][k] * es.eigenvectors.m[j][k];
      r.set(i, j, s);
    }
  return r;
}

MatFuncDerivative::MatFuncDerivative(const SymMat3& A, const ScalarFunction& f)
    : eig_(sym_eig(A)) {
  check_spectrum(eig_, f);
  const Vec3& l = eig_.eigenvalues;
  for (int i = 0; i < 3; ++i) fval_[i] = f.value(l[i]);
  const double lmax =
      std::max({std::abs(l[0]), std::abs(l[1]), std::abs(l[2])});
  // Divided differences lose half the significant digits once the gap
  // approaches sqrt(eps); switch to the derivative at the midpoint there.
  const double gap_tol = 1e-8 * std::max(1.0, lmax);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) {
        table_[i][i] = f.deriv(l[i]);
      } else if (std::abs(l[i] - l[j]) <= gap_tol) {
        table_[i][j] = f.deriv(0.5 * (l[i] + l[j]));
      } else {
        table_[i][j] = (fval_[i] - fval_[j]) / (l[i] - l[j]);
      }
    }
  }
}

SymMat3 MatFuncDerivative::value() const {
  SymMat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k)
        s += fval_[k] * eig_.eigenvectors.m[i][k] * eig_.eigenvectors.m[j][k];
      r.set(i, j, s);
    }
  return r;
}

SymMat3 MatFuncDerivative::apply(const SymMat3& H) const {
  const Mat3& Q = eig_.eigenvectors;
  // W = Q^T H Q, scaled entry-wise by the divided-difference table, then
  // pushed back: Q (table o W) Q^T.
  Mat3 HQ;
  const Mat3 Hf = H.full();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      HQ.m[i][j] =
          Hf.m[i][0] * Q.m[0][j] + Hf.m[i][1] * Q.m[1][j] + Hf.m[i][2] * Q.m[2][j];
    }
  Mat3 W;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      W.m[i][j] =
          Q.m[0][i] * HQ.m[0][j] + Q.m[1][i] * HQ.m[1][j] + Q.m[2][i] * HQ.m[2][j];
      W.m[i][j] *= table_[i][j];
    }
  Mat3 QW;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      QW.m[i][j] =
          Q.m[i][0] * W.m[0][j] + Q.m[i][1] * W.m[1][j] + Q.m[i][2] * W.m[2][j];
    }
  SymMat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      double s = QW.m[i][0] * Q.m[j][0] + QW.m[i][1] * Q.m[j][1] +
                 QW.m[i][2] * Q.m[j][2];
      r.set(i, j, s);
    }
  return r;
}

SymMat3 dmat_func_sym(const SymMat3& A, const SymMat3& H,
                      const ScalarFunction& f) {
  return MatFuncDerivative(A, f).apply(H);
}

}  // namespace mms
