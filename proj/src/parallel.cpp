#include "circle_colim/parallel.hpp"

#include <omp.h>

#include <atomic>
#include <cstdlib>
#include <string>

namespace circle_colim {
namespace {

std::atomic<int> g_override{0};

int from_env() {
  static const int cached = [] {
    const char* raw = std::getenv("CIRCLE_COLIM_THREADS");
    if (raw == nullptr) return omp_get_max_threads();
    try {
      const int v = std::stoi(raw);
      return v > 0 ? v : omp_get_max_threads();
    } catch (...) {
      return omp_get_max_threads();
    }
  }();
  return cached;
}

}  // namespace

int max_threads() {
  const int o = g_override.load(std::memory_order_relaxed);
  return o > 0 ? o : from_env();
}

void set_max_threads(int n) { g_override.store(n > 0 ? n : 0, std::memory_order_relaxed); }

}  // namespace circle_colim
