#pragma once

#include <cstddef>

namespace circle_colim {

/// Execution policy for the per-sample grid kernels. `serial` is the
/// reference path kept for testing; `parallel` uses OpenMP.
enum class Exec { serial, parallel };

/// Thread cap for parallel kernels. Reads CIRCLE_COLIM_THREADS once; a value
/// set through set_max_threads() takes precedence.
int max_threads();
void set_max_threads(int n);

/// Runs body(i) for i in [0, n). Each index must touch disjoint output, so the
/// result is independent of the policy.
template <class Body>
void for_each_index(std::size_t n, Exec exec, Body&& body) {
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(static) num_threads(max_threads())
  for (long long i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
}

}  // namespace circle_colim
