#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "circle_colim/geometry.hpp"
#include "circle_colim/parallel.hpp"
#include "circle_colim/su_n.hpp"

namespace circle_colim {

/// Loop in SU(n) sampled at t_k = 2πk/n_samples.
class Loop {
 public:
  /// Validates the grid size (power of two >= 16) and that every sample is
  /// special unitary within 1e-10.
  Loop(GroupDescriptor group, std::vector<Matrix> values);

  static Loop constant(GroupDescriptor group, std::size_t n, const Matrix& value);
  static Loop identity(GroupDescriptor group, std::size_t n);
  static Loop from_function(GroupDescriptor group, std::size_t n, const std::function<Matrix(double)>& f);

  const GroupDescriptor& group() const { return group_; }
  std::size_t size() const { return values_.size(); }
  double step() const { return kTwoPi / static_cast<double>(values_.size()); }
  double grid(std::size_t k) const { return step() * static_cast<double>(k); }
  const std::vector<Matrix>& values() const { return values_; }
  const Matrix& operator[](std::size_t k) const { return values_[k]; }

 private:
  GroupDescriptor group_;
  std::vector<Matrix> values_;
};

/// Loop in su(n): anti-Hermitian traceless samples on the same grid.
struct LieLoop {
  GroupDescriptor group;
  std::vector<Matrix> values;

  std::size_t size() const { return values.size(); }
};

/// Max-abs distance of every sample from the identity.
double distance_to_identity(const Matrix& u);
double sup_distance(const Loop& a, const Loop& b);

/// Pointwise product and inverse. Products are re-projected onto the group
/// when the unitarity defect exceeds 1e-12.
Loop multiply(const Loop& a, const Loop& b, Exec exec = Exec::parallel);
Loop invert(const Loop& a, Exec exec = Exec::parallel);
/// Left-to-right pointwise product of all factors.
Loop product(std::span<const Loop> factors, Exec exec = Exec::parallel);

/// sup_k max-abs(a b a⁻¹ b⁻¹ - 1).
double max_commutator(const Loop& a, const Loop& b);

/// Principal logarithm per sample. Throws PreconditionError naming the first
/// sample with an eigenvalue within 1e-6 of -1.
LieLoop log_chart(const Loop& gamma, Exec exec = Exec::parallel);
Loop exp_loop(const LieLoop& x, Exec exec = Exec::parallel);

/// True if every sample lies in exp(u), u the ball of spectral radius
/// below kChartRadius.
bool in_chart(const Loop& gamma);

/// γ_i(t) = exp(φ_i(t)·log γ(t)). All factors at a sample share the
/// eigenbasis of log γ(t), so they commute to rounding.
std::vector<Loop> factor_over_cover(const Loop& gamma, const PartitionOfUnity& pu, Exec exec = Exec::parallel);
std::vector<Loop> factor_over_cover(const Loop& gamma, const Cover& cover, Exec exec = Exec::parallel);

/// γ = η_1 ⋯ η_m with η_i = exp(L/m), L a continuous logarithm of γ along
/// the circle started at `initial_log` (default: principal logarithm of
/// γ(0)). Throws PreconditionError if L does not close up around the circle
/// or L/m leaves the chart ball.
std::vector<Loop> factor_small(const Loop& gamma, std::size_t m, const std::optional<Matrix>& initial_log = std::nullopt);

/// The continuous logarithm used by factor_small.
LieLoop continuous_log(const Loop& gamma, const std::optional<Matrix>& initial_log = std::nullopt);

struct LoopSupportCertificate {
  std::optional<Interval> interval;
  bool whole_circle = false;
  double tolerance = 0.0;
  double max_distance_outside = 0.0;

  bool empty() const { return !interval && !whole_circle; }
  bool within(const Interval& arc, double slack) const;
};

/// Smallest arc containing every sample farther than tol from the identity.
LoopSupportCertificate support(const Loop& gamma, double tol);

/// γ(p) = e within tol and the first two central differences at the grid
/// point nearest p below tol.
bool based_check(const Loop& gamma, double p, double tol = 1e-10);

/// γ on `arc`, the identity elsewhere.
Loop restrict_to_arc(const Loop& gamma, const Interval& arc);

}  // namespace circle_colim
