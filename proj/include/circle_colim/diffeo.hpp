#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "circle_colim/geometry.hpp"
#include "circle_colim/interpolation.hpp"
#include "circle_colim/parallel.hpp"

namespace circle_colim {

/// Orientation-preserving circle diffeomorphism, stored as samples of a
/// lift F with F(t + 2π) = F(t) + 2π at t_k = 2πk/n (n a power of two).
/// Evaluation between samples uses MonotoneCubic.
class CircleDiffeo {
 public:
  explicit CircleDiffeo(std::vector<double> lift);

  static CircleDiffeo identity(std::size_t n);
  static CircleDiffeo rotation(std::size_t n, double angle);
  /// Samples the lift t ↦ F(t).
  static CircleDiffeo from_lift(std::size_t n, const std::function<double(double)>& lift);

  std::size_t size() const { return lift_.size(); }
  double step() const { return kTwoPi / static_cast<double>(lift_.size()); }
  double grid(std::size_t k) const { return step() * static_cast<double>(k); }
  std::span<const double> lift() const { return lift_; }

  /// Interpolated lift at any real x.
  double operator()(double x) const { return interp_(x); }
  double derivative(double x) const { return interp_.derivative(x); }
  /// F⁻¹(y) of the interpolated lift.
  double preimage(double y) const { return interp_.inverse(y); }

 private:
  std::vector<double> lift_;
  MonotoneCubic interp_;
};

/// sup_k |a_k - b_k| over the common grid.
double sup_distance(const CircleDiffeo& a, const CircleDiffeo& b);

/// φ ∘ ψ, sampled on ψ's grid. Throws ContractViolation if the result is
/// not strictly increasing (grid too coarse).
CircleDiffeo compose(const CircleDiffeo& phi, const CircleDiffeo& psi, Exec exec = Exec::parallel);
/// factors[0] ∘ factors[1] ∘ ... ∘ factors.back().
CircleDiffeo compose_all(std::span<const CircleDiffeo> factors, Exec exec = Exec::parallel);

/// Pointwise inverse of the interpolated lift on the same grid.
CircleDiffeo invert(const CircleDiffeo& phi, Exec exec = Exec::parallel);
/// sup_k |φ(φ⁻¹(t_k)) - t_k|.
double inverse_residual(const CircleDiffeo& phi, const CircleDiffeo& inverse);

/// sup_k |F(t_k) - t_k|.
double displacement(const CircleDiffeo& phi);

/// Arc outside which the diffeomorphism moves no sample by more than the
/// tolerance.
struct SupportCertificate {
  /// Empty when no sample deviates by more than the tolerance.
  std::optional<Interval> interval;
  bool whole_circle = false;
  double tolerance = 0.0;
  double max_deviation_outside = 0.0;

  bool empty() const { return !interval && !whole_circle; }
  /// True if the support lies in `arc`, allowing `slack` at each end.
  bool within(const Interval& arc, double slack) const;
};

/// Smallest arc containing every sample t_k with |F(t_k) - t_k| > tol.
SupportCertificate support(const CircleDiffeo& phi, double tol);
/// Same, but throws PreconditionError when the support is the whole circle.
SupportCertificate proper_support(const CircleDiffeo& phi, double tol);

/// Diffeomorphism of the real line that is the identity outside the
/// sampled window [lo, hi].
class LineDiffeo {
 public:
  LineDiffeo(double lo, double hi, std::vector<double> values);
  static LineDiffeo identity(double lo, double hi, std::size_t n);
  static LineDiffeo from_function(double lo, double hi, std::size_t n, const std::function<double(double)>& f);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  std::size_t size() const { return values_.size(); }
  double grid(std::size_t k) const { return lo_ + step() * static_cast<double>(k); }
  double step() const { return (hi_ - lo_) / static_cast<double>(values_.size() - 1); }
  std::span<const double> values() const { return values_; }

  double operator()(double x) const { return interp_(x); }
  double preimage(double y) const { return interp_.inverse(y); }

 private:
  double lo_;
  double hi_;
  std::vector<double> values_;
  MonotoneCubic interp_;
};

double displacement(const LineDiffeo& phi);
double sup_distance(const LineDiffeo& a, const LineDiffeo& b);
LineDiffeo compose(const LineDiffeo& phi, const LineDiffeo& psi, Exec exec = Exec::parallel);
LineDiffeo invert(const LineDiffeo& phi, Exec exec = Exec::parallel);
/// Smallest [a, b] containing every sample moved by more than tol.
std::optional<std::pair<double, double>> support(const LineDiffeo& phi, double tol);

/// φ = minus ∘ plus.
template <class D>
struct Split {
  D minus;
  D plus;
};

/// Bracket width for the per-sample root solves.
inline constexpr double kRootTolerance = 1e-12;

/// Splits φ with displacement < d into φ₋ ∘ φ₊ where φ₊ is the identity
/// left of σ's transition and φ₋ the identity right of it. φ₊(t) is the
/// root y of (y - t)·d = (φ(t) - t)·σ(y).
Split<LineDiffeo> split_line(const LineDiffeo& phi, double d, const SigmaFunction& sigma,
                             Exec exec = Exec::parallel);

/// Circle version: I₋ ∪ I₊ = S¹ with both components of I₋ ∩ I₊ of length
/// 2d; supp φ₋ ⊆ I₋ and supp φ₊ ⊆ I₊.
Split<CircleDiffeo> split_circle(const CircleDiffeo& phi, const Interval& minus_arc, const Interval& plus_arc,
                                 double d, Exec exec = Exec::parallel);

/// Splits against an arbitrary circle weight. Exposed for the serial/parallel
/// kernel comparisons; split_circle and factor_over_cover route through it.
Split<CircleDiffeo> split_with_weight(const CircleDiffeo& phi, const CircleWeight& weight,
                                      Exec exec = Exec::parallel);

/// φ = φ₁ ∘ ... ∘ φ_n with supp φ_j ⊆ J_j and displacement(φ_j) < d.
/// Peels J_1 off with a circle split, then J_2, ..., J_{n-1} with arc splits.
/// In based mode every split is an arc split cut at the base point.
std::vector<CircleDiffeo> factor_over_cover(const CircleDiffeo& phi, const Cover& cover,
                                            Exec exec = Exec::parallel);

/// φ = f_1 ∘ ... ∘ f_m with every factor of displacement displacement(φ)/m,
/// from the straight-line homotopy of lifts. Throws PreconditionError if
/// displacement(φ)/m >= d.
std::vector<CircleDiffeo> factor_lift(const CircleDiffeo& phi, std::size_t m, double d,
                                      Exec exec = Exec::parallel);

/// True if φ moves p by at most tol and its first two derivatives at p
/// match the identity within tol.
bool fixes_point(const CircleDiffeo& phi, double p, double tol);

/// Keeps φ on `arc` and replaces it by the identity elsewhere. Valid when
/// φ maps the arc to itself and is the identity near its ends.
CircleDiffeo restrict_to_arc(const CircleDiffeo& phi, const Interval& arc);

}  // namespace circle_colim
