#pragma once

#include <cstddef>
#include <functional>

namespace mms::parallel {

/// Worker count used by all parallel loops. 0 restores the hardware default.
void set_threads(int n);
int threads();

/// Parallel loop over [0, n). Results must not depend on execution order:
/// callers only use this where iterations write to disjoint locations.
void for_range(std::ptrdiff_t n, const std::function<void(std::ptrdiff_t)>& f);

/// Deterministic dot product: fixed-size chunk partials summed in chunk
/// order, so the result is bit-identical for any thread count.
double dot(const double* a, const double* b, std::size_t n);
double norm2(const double* a, std::size_t n);

}  // namespace mms::parallel
