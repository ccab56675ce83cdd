#include "mms/sparse.hpp"

#include <algorithm>
#include <cmath>

#include "mms/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mms {

void matvec(const CsrMatrix& A, const double* x, double* y) {
  const int n = A.nrows;
  const int* rowptr = A.rowptr.data();
  const int* cols = A.cols.data();
  const double* vals = A.vals.data();
#ifdef _OPENMP
  const int nt = parallel::threads();
#pragma omp parallel for schedule(static) num_threads(nt)
#endif
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int k = rowptr[i]; k < rowptr[i + 1]; ++k) s += vals[k] * x[cols[k]];
    y[i] = s;
  }
}

double asymmetry_inf(const CsrMatrix& A) {
  double worst = 0.0;
  for (int i = 0; i < A.nrows; ++i) {
    for (int k = A.rowptr[i]; k < A.rowptr[i + 1]; ++k) {
      const int j = A.cols[k];
      if (j < i) continue;
      // locate (j, i)
      const int* lo = A.cols.data() + A.rowptr[j];
      const int* hi = A.cols.data() + A.rowptr[j + 1];
      const int* it = std::lower_bound(lo, hi, i);
      const double aji =
          (it != hi && *it == i) ? A.vals[A.rowptr[j] + (it - lo)] : 0.0;
      worst = std::max(worst, std::abs(A.vals[k] - aji));
    }
  }
  return worst;
}

}  // namespace mms
