#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace circle_colim {

/// How samples continue past the ends of the grid.
enum class Extension {
  /// y_{k+n} = y_k + 2π: lifts of circle maps on the grid 2πk/n.
  periodic_lift,
  /// y(x) = x outside the sampled window.
  identity,
};

/// Hermite interpolant of strictly increasing samples on a uniform grid.
/// Node first and second derivatives come from sixth-order central
/// differences and cells are quintic. Where the Fritsch–Carlson limiter has
/// to alter a slope, the neighbouring cells drop to monotone cubics.
class MonotoneCubic {
 public:
  MonotoneCubic(double x0, double h, std::vector<double> y, Extension ext);

  double operator()(double x) const;
  double derivative(double x) const;
  /// The x with (*this)(x) = target; safeguarded Newton inside the
  /// bracketing cell.
  double inverse(double target) const;

  std::size_t size() const { return y_.size(); }
  double x0() const { return x0_; }
  double h() const { return h_; }
  std::span<const double> samples() const { return y_; }
  std::span<const double> slopes() const { return m_; }
  /// Number of nodes whose slope was altered by the limiter.
  std::size_t limited() const { return limited_; }

 private:
  // Sample at any integer index, applying the extension rule.
  double at(long long k) const;
  double slope_at(long long k) const;
  double curvature_at(long long k) const;
  bool is_quintic(long long k) const;
  double eval_cell(long long k, double u) const;
  double deriv_cell(long long k, double u) const;

  double x0_;
  double h_;
  std::vector<double> y_;
  std::vector<double> m_;
  std::vector<double> c_;
  std::vector<char> quintic_;
  Extension ext_;
  std::size_t limited_ = 0;
};

}  // namespace circle_colim
