#pragma once

#include <cmath>

#include "mms/errors.hpp"

namespace mms {

struct Vec3 {
  double v[3]{};

  Vec3() = default;
  Vec3(double x, double y, double z) : v{x, y, z} {}

  double& operator[](int i) { return v[i]; }
  double operator[](int i) const { return v[i]; }

  Vec3& operator+=(const Vec3& o) {
    v[0] += o.v[0];
    v[1] += o.v[1];
    v[2] += o.v[2];
    return *this;
  }
  Vec3& operator-=(const Vec3& o) {
    v[0] -= o.v[0];
    v[1] -= o.v[1];
    v[2] -= o.v[2];
    return *this;
  }
  Vec3& operator*=(double s) {
    v[0] *= s;
    v[1] *= s;
    v[2] *= s;
    return *this;
  }
};

inline Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
inline Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
inline Vec3 operator*(double s, Vec3 a) { return a *= s; }
inline Vec3 operator*(Vec3 a, double s) { return a *= s; }

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline double norm_inf(const Vec3& a) {
  return std::max(std::abs(a[0]), std::max(std::abs(a[1]), std::abs(a[2])));
}

/// Dense 3x3 second-order tensor, row-major.
struct Mat3 {
  double m[3][3]{};

  static Mat3 identity() {
    Mat3 r;
    r.m[0][0] = r.m[1][1] = r.m[2][2] = 1.0;
    return r;
  }

  double& operator()(int i, int j) { return m[i][j]; }
  double operator()(int i, int j) const { return m[i][j]; }

  Mat3& operator+=(const Mat3& o);
  Mat3& operator-=(const Mat3& o);
  Mat3& operator*=(double s);
};

Mat3 operator+(Mat3 a, const Mat3& b);
Mat3 operator-(Mat3 a, const Mat3& b);
Mat3 operator*(double s, Mat3 a);
Mat3 operator*(const Mat3& a, const Mat3& b);
Vec3 operator*(const Mat3& a, const Vec3& x);

Mat3 transpose(const Mat3& a);
double trace(const Mat3& a);
double det(const Mat3& a);
/// Inverse by cofactors; throws SingularMatrix when |det| < 1e-14.
Mat3 inverse(const Mat3& a);
/// Outer product a b^T.
Mat3 outer(const Vec3& a, const Vec3& b);

double norm_fro(const Mat3& a);
double norm_inf(const Mat3& a);  // max |entry|
bool is_finite(const Mat3& a);

/// Symmetric 3x3 tensor stored as six independent components in the order
/// (xx, yy, zz, xy, yz, xz). Symmetry is structural: there is no way to
/// populate an asymmetric value.
struct SymMat3 {
  double a[6]{};

  static SymMat3 identity() {
    SymMat3 r;
    r.a[0] = r.a[1] = r.a[2] = 1.0;
    return r;
  }

  /// Component index for (i,j), i,j in 0..2.
  static int idx(int i, int j) {
    static constexpr int map[3][3] = {{0, 3, 5}, {3, 1, 4}, {5, 4, 2}};
    return map[i][j];
  }

  double operator()(int i, int j) const { return a[idx(i, j)]; }
  void set(int i, int j, double value) { a[idx(i, j)] = value; }

  Mat3 full() const;

  SymMat3& operator+=(const SymMat3& o);
  SymMat3& operator-=(const SymMat3& o);
  SymMat3& operator*=(double s);
};

SymMat3 operator+(SymMat3 a, const SymMat3& b);
SymMat3 operator-(SymMat3 a, const SymMat3& b);
SymMat3 operator*(double s, SymMat3 a);

double trace(const SymMat3& a);
double norm_fro(const SymMat3& a);
double norm_inf(const SymMat3& a);
bool is_finite(const SymMat3& a);

/// Symmetric part (A + A^T)/2.
SymMat3 sym_part(const Mat3& a);
/// A A^T as a SymMat3.
SymMat3 aat(const Mat3& a);
/// A^T A as a SymMat3.
SymMat3 ata(const Mat3& a);

/// Eigenvalues (descending) and the matching orthonormal eigenvector columns.
struct EigenSys {
  Vec3 eigenvalues;
  Mat3 eigenvectors;  // column i pairs with eigenvalues[i]
};

/// Cyclic Jacobi eigendecomposition of a symmetric 3x3 tensor.
/// Reconstruction Q diag(l) Q^T and orthonormality both hold to ~1e-15
/// relative. Throws NonFiniteInput for non-finite entries.
EigenSys sym_eig(const SymMat3& A);

/// Scalar function applied to a symmetric tensor through its spectrum.
struct ScalarFunction {
  double (*value)(double);
  double (*deriv)(double);
  bool requires_positive;
  const char* name;
};

extern const ScalarFunction kLog;
extern const ScalarFunction kSqrt;
extern const ScalarFunction kExp;
extern const ScalarFunction kSquare;
/// f(x) = log(x)/2, so that f(B) is the Hencky strain log(sqrt(B)).
extern const ScalarFunction kHalfLog;

/// f(A) = Q diag(f(l_i)) Q^T. Throws NonPositiveEigenvalue when f requires a
/// positive spectrum and min(l) is at or below 1e-14*max(1, |l|_max).
SymMat3 mat_func_sym(const SymMat3& A, const ScalarFunction& f);

/// Directional derivative D f(A)[H] of an isotropic tensor function, computed
/// in the eigenbasis with divided differences of f (derivative on the
/// diagonal and for near-coincident eigenvalue pairs).
SymMat3 dmat_func_sym(const SymMat3& A, const SymMat3& H,
                      const ScalarFunction& f);

/// Factored form of dmat_func_sym: the eigendecomposition and divided
/// difference table are built once and applied to many directions H.
class MatFuncDerivative {
 public:
  MatFuncDerivative(const SymMat3& A, const ScalarFunction& f);

  /// f(A) from the same decomposition.
  SymMat3 value() const;
  /// D f(A)[H].
  SymMat3 apply(const SymMat3& H) const;

 private:
  EigenSys eig_;
  double fval_[3];
  double table_[3][3];
};

}  // namespace mms
