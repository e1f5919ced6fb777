#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

// Runtime-switchable OpenMP kernels.  Every parallel loop in the library goes
// through this header so that the whole artifact can be forced onto the serial
// reference path (par::set_enabled(false)) and compared against the OpenMP
// path.  Reductions use a fixed block decomposition independent of the thread
// count, so serial and parallel execution produce bit-identical doubles.
namespace drop::par {

inline bool& enabled_flag() {
#ifdef _OPENMP
  static bool flag = true;
#else
  static bool flag = false;
#endif
  return flag;
}

inline void set_enabled(bool on) { enabled_flag() = on; }
inline bool enabled() { return enabled_flag(); }

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Fixed reduction block; must not depend on the thread count.
inline constexpr std::ptrdiff_t kBlock = 1024;

template <class F>
void for_each(std::ptrdiff_t n, F&& body) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (enabled() && n > 64)
  for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
#else
  for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
#endif
}

// Deterministic sum of f(0..n-1): per-block partial sums in index order, then
// a serial combine over blocks.  Identical result for any thread count.
template <class F>
double sum(std::ptrdiff_t n, F&& f) {
  if (n <= 0) return 0.0;
  const std::ptrdiff_t nblocks = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(static_cast<size_t>(nblocks), 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (enabled() && nblocks > 1)
  for (std::ptrdiff_t b = 0; b < nblocks; ++b) {
    double acc = 0.0;
    const std::ptrdiff_t hi = std::min(n, (b + 1) * kBlock);
    for (std::ptrdiff_t i = b * kBlock; i < hi; ++i) acc += f(i);
    partial[static_cast<size_t>(b)] = acc;
  }
#else
  for (std::ptrdiff_t b = 0; b < nblocks; ++b) {
    double acc = 0.0;
    const std::ptrdiff_t hi = std::min(n, (b + 1) * kBlock);
    for (std::ptrdiff_t i = b * kBlock; i < hi; ++i) acc += f(i);
    partial[static_cast<size_t>(b)] = acc;
  }
#endif
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

// min/max are exact under any evaluation order.
template <class F>
double min(std::ptrdiff_t n, F&& f) {
  double result = f(0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(min : result) if (enabled() && n > 64)
  for (std::ptrdiff_t i = 1; i < n; ++i) result = std::min(result, f(i));
#else
  for (std::ptrdiff_t i = 1; i < n; ++i) result = std::min(result, f(i));
#endif
  return result;
}

template <class F>
double max(std::ptrdiff_t n, F&& f) {
  double result = f(0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(max : result) if (enabled() && n > 64)
  for (std::ptrdiff_t i = 1; i < n; ++i) result = std::max(result, f(i));
#else
  for (std::ptrdiff_t i = 1; i < n; ++i) result = std::max(result, f(i));
#endif
  return result;
}

}  // namespace drop::par
