#pragma once

#include <cstddef>
#include <vector>

namespace mms {

/// Compressed sparse row matrix. Column indices within each row are sorted.
struct CsrMatrix {
  int nrows = 0;
  std::vector<int> rowptr;
  std::vector<int> cols;
  std::vector<double> vals;

  void zero_values() { std::fill(vals.begin(), vals.end(), 0.0); }
  std::size_t nnz() const { return cols.size(); }
};

/// y = A x. Row-parallel; bit-deterministic for any thread count.
void matvec(const CsrMatrix& A, const double* x, double* y);

/// Max |A(r,c) - A(c,r)| over stored entries; pattern must be symmetric.
double asymmetry_inf(const CsrMatrix& A);

}  // namespace mms
