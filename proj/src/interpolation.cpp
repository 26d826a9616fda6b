#include "circle_colim/interpolation.hpp"

#include <algorithm>
#include <cmath>

#include "circle_colim/errors.hpp"
#include "circle_colim/geometry.hpp"

namespace circle_colim {
namespace {

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

MonotoneCubic::MonotoneCubic(double x0, double h, std::vector<double> y, Extension ext)
    : x0_(x0), h_(h), y_(std::move(y)), ext_(ext) {
  const long long n = static_cast<long long>(y_.size());
  if (n < 8) throw PreconditionError("interpolation needs at least 8 samples");
  m_.resize(y_.size());
  c_.resize(y_.size());
  for (long long k = 0; k < n; ++k) {
    const double num = -at(k - 3) + 9.0 * at(k - 2) - 45.0 * at(k - 1) + 45.0 * at(k + 1) - 9.0 * at(k + 2) + at(k + 3);
    m_[static_cast<std::size_t>(k)] = num / (60.0 * h_);
    const double num2 = 2.0 * at(k - 3) - 27.0 * at(k - 2) + 270.0 * at(k - 1) - 490.0 * at(k) + 270.0 * at(k + 1) -
                        27.0 * at(k + 2) + 2.0 * at(k + 3);
    c_[static_cast<std::size_t>(k)] = num2 / (180.0 * h_ * h_);
  }
  const long long cells = ext_ == Extension::periodic_lift ? n : n - 1;
  quintic_.assign(static_cast<std::size_t>(cells), 1);
  for (long long k = 0; k < cells; ++k) {
    const double delta = (at(k + 1) - at(k)) / h_;
    if (!(delta > 0.0)) throw PreconditionError("samples are not strictly increasing at index " + std::to_string(k));
    const std::size_t i0 = static_cast<std::size_t>(k);
    const std::size_t i1 = static_cast<std::size_t>((k + 1) % n);
    double a = m_[i0] / delta;
    double b = m_[i1] / delta;
    bool touched = false;
    if (a < 0.0) a = 0.0, touched = true;
    if (b < 0.0) b = 0.0, touched = true;
    const double r2 = a * a + b * b;
    if (r2 > 9.0) {
      const double tau = 3.0 / std::sqrt(r2);
      a *= tau;
      b *= tau;
      touched = true;
    }
    if (touched) {
      m_[i0] = a * delta;
      m_[i1] = b * delta;
      quintic_[i0] = 0;
      if (k > 0) quintic_[i0 - 1] = 0;
      if (static_cast<std::size_t>(k + 1) < quintic_.size()) quintic_[static_cast<std::size_t>(k + 1)] = 0;
      ++limited_;
    }
  }
}

double MonotoneCubic::at(long long k) const {
  const long long n = static_cast<long long>(y_.size());
  if (ext_ == Extension::periodic_lift) {
    const long long q = floor_div(k, n);
    return y_[static_cast<std::size_t>(k - q * n)] + static_cast<double>(q) * kTwoPi;
  }
  if (k >= 0 && k < n) return y_[static_cast<std::size_t>(k)];
  return x0_ + static_cast<double>(k) * h_;
}

double MonotoneCubic::slope_at(long long k) const {
  const long long n = static_cast<long long>(y_.size());
  if (ext_ == Extension::periodic_lift) return m_[static_cast<std::size_t>(k - floor_div(k, n) * n)];
  if (k >= 0 && k < n) return m_[static_cast<std::size_t>(k)];
  return 1.0;
}

double MonotoneCubic::curvature_at(long long k) const {
  const long long n = static_cast<long long>(y_.size());
  if (ext_ == Extension::periodic_lift) return c_[static_cast<std::size_t>(k - floor_div(k, n) * n)];
  if (k >= 0 && k < n) return c_[static_cast<std::size_t>(k)];
  return 0.0;
}

bool MonotoneCubic::is_quintic(long long k) const {
  const long long cells = static_cast<long long>(quintic_.size());
  if (ext_ == Extension::periodic_lift) return quintic_[static_cast<std::size_t>(k - floor_div(k, cells) * cells)] != 0;
  if (k >= 0 && k < cells) return quintic_[static_cast<std::size_t>(k)] != 0;
  return false;
}

double MonotoneCubic::eval_cell(long long k, double u) const {
  const double u2 = u * u, u3 = u2 * u;
  if (k >= 0 && k + 1 < static_cast<long long>(y_.size())) {
    const std::size_t i = static_cast<std::size_t>(k);
    const double y0 = y_[i], y1 = y_[i + 1], m0 = h_ * m_[i], m1 = h_ * m_[i + 1];
    if (quintic_[i]) {
      const double u4 = u3 * u, u5 = u4 * u, hh = h_ * h_;
      return (1.0 - 10.0 * u3 + 15.0 * u4 - 6.0 * u5) * y0 + (u - 6.0 * u3 + 8.0 * u4 - 3.0 * u5) * m0 +
             0.5 * (u2 - 3.0 * u3 + 3.0 * u4 - u5) * hh * c_[i] + (10.0 * u3 - 15.0 * u4 + 6.0 * u5) * y1 +
             (-4.0 * u3 + 7.0 * u4 - 3.0 * u5) * m1 + 0.5 * (u3 - 2.0 * u4 + u5) * hh * c_[i + 1];
    }
    return (2.0 * u3 - 3.0 * u2 + 1.0) * y0 + (u3 - 2.0 * u2 + u) * m0 + (-2.0 * u3 + 3.0 * u2) * y1 + (u3 - u2) * m1;
  }
  if (is_quintic(k)) {
    const double u4 = u3 * u, u5 = u4 * u;
    const double p0 = 1.0 - 10.0 * u3 + 15.0 * u4 - 6.0 * u5;
    const double p1 = u - 6.0 * u3 + 8.0 * u4 - 3.0 * u5;
    const double p2 = 0.5 * (u2 - 3.0 * u3 + 3.0 * u4 - u5);
    const double q0 = 10.0 * u3 - 15.0 * u4 + 6.0 * u5;
    const double q1 = -4.0 * u3 + 7.0 * u4 - 3.0 * u5;
    const double q2 = 0.5 * (u3 - 2.0 * u4 + u5);
    const double hh = h_ * h_;
    return p0 * at(k) + p1 * h_ * slope_at(k) + p2 * hh * curvature_at(k) + q0 * at(k + 1) +
           q1 * h_ * slope_at(k + 1) + q2 * hh * curvature_at(k + 1);
  }
  const double h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
  const double h10 = u3 - 2.0 * u2 + u;
  const double h01 = -2.0 * u3 + 3.0 * u2;
  const double h11 = u3 - u2;
  return h00 * at(k) + h10 * h_ * slope_at(k) + h01 * at(k + 1) + h11 * h_ * slope_at(k + 1);
}

double MonotoneCubic::deriv_cell(long long k, double u) const {
  const double u2 = u * u;
  if (k >= 0 && k + 1 < static_cast<long long>(y_.size())) {
    const std::size_t i = static_cast<std::size_t>(k);
    const double dy = (y_[i + 1] - y_[i]) / h_;
    if (quintic_[i]) {
      const double u3 = u2 * u, u4 = u3 * u;
      return (30.0 * u2 - 60.0 * u3 + 30.0 * u4) * dy + (1.0 - 18.0 * u2 + 32.0 * u3 - 15.0 * u4) * m_[i] +
             0.5 * (2.0 * u - 9.0 * u2 + 12.0 * u3 - 5.0 * u4) * h_ * c_[i] +
             (-12.0 * u2 + 28.0 * u3 - 15.0 * u4) * m_[i + 1] + 0.5 * (3.0 * u2 - 8.0 * u3 + 5.0 * u4) * h_ * c_[i + 1];
    }
    return (6.0 * u - 6.0 * u2) * dy + (3.0 * u2 - 4.0 * u + 1.0) * m_[i] + (3.0 * u2 - 2.0 * u) * m_[i + 1];
  }
  if (is_quintic(k)) {
    const double u3 = u2 * u, u4 = u3 * u;
    const double p0 = -30.0 * u2 + 60.0 * u3 - 30.0 * u4;
    const double p1 = 1.0 - 18.0 * u2 + 32.0 * u3 - 15.0 * u4;
    const double p2 = 0.5 * (2.0 * u - 9.0 * u2 + 12.0 * u3 - 5.0 * u4);
    const double q1 = -12.0 * u2 + 28.0 * u3 - 15.0 * u4;
    const double q2 = 0.5 * (3.0 * u2 - 8.0 * u3 + 5.0 * u4);
    return (p0 * at(k) - p0 * at(k + 1)) / h_ + p1 * slope_at(k) + p2 * h_ * curvature_at(k) +
           q1 * slope_at(k + 1) + q2 * h_ * curvature_at(k + 1);
  }
  const double d00 = 6.0 * u2 - 6.0 * u;
  const double d10 = 3.0 * u2 - 4.0 * u + 1.0;
  const double d01 = -6.0 * u2 + 6.0 * u;
  const double d11 = 3.0 * u2 - 2.0 * u;
  return (d00 * at(k) + d01 * at(k + 1)) / h_ + d10 * slope_at(k) + d11 * slope_at(k + 1);
}

double MonotoneCubic::operator()(double x) const {
  const double s = (x - x0_) / h_;
  if (ext_ == Extension::identity && (s < 0.0 || s > static_cast<double>(y_.size() - 1))) return x;
  const double fk = std::floor(s);
  long long k = static_cast<long long>(fk);
  double u = s - fk;
  if (ext_ == Extension::identity && k == static_cast<long long>(y_.size()) - 1) {
    --k;
    u = 1.0;
  }
  return eval_cell(k, u);
}

double MonotoneCubic::derivative(double x) const {
  const double s = (x - x0_) / h_;
  if (ext_ == Extension::identity && (s < 0.0 || s > static_cast<double>(y_.size() - 1))) return 1.0;
  const double fk = std::floor(s);
  long long k = static_cast<long long>(fk);
  double u = s - fk;
  if (ext_ == Extension::identity && k == static_cast<long long>(y_.size()) - 1) {
    --k;
    u = 1.0;
  }
  return deriv_cell(k, u);
}

double MonotoneCubic::inverse(double target) const {
  const long long n = static_cast<long long>(y_.size());
  double shift = 0.0;
  long long lo = 0, hi = 0;
  if (ext_ == Extension::periodic_lift) {
    const double q = std::floor((target - y_[0]) / kTwoPi);
    shift = q * kTwoPi;
    target -= shift;
    if (target >= y_[0] + kTwoPi) {  // rounding at the top of the period
      target -= kTwoPi;
      shift += kTwoPi;
    }
    lo = 0;
    hi = n;
  } else {
    if (target <= y_[0] || target >= y_.back()) return target;
    lo = 0;
    hi = n - 1;
  }
  // Find cell k with at(k) <= target <= at(k+1), galloping out from the
  // cell the target would occupy under the identity.
  const long long guess = std::clamp(static_cast<long long>(std::floor((target - x0_) / h_)), lo, hi - 1);
  for (long long step = 1;; step *= 2) {
    const long long a = std::max(lo, guess - step), b = std::min(hi, guess + step);
    if (at(a) <= target && target <= at(b)) {
      lo = a;
      hi = b;
      break;
    }
    if (a == lo && b == hi) break;
  }
  while (hi - lo > 1) {
    const long long mid = lo + (hi - lo) / 2;
    if (at(mid) <= target)
      lo = mid;
    else
      hi = mid;
  }
  const long long k = lo;
  const double ya = at(k), yb = at(k + 1);
  double a = 0.0, b = 1.0;
  double u = yb > ya ? (target - ya) / (yb - ya) : 0.5;
  u = std::clamp(u, 0.0, 1.0);
  for (int it = 0; it < 80; ++it) {
    const double f = eval_cell(k, u) - target;
    if (f == 0.0) break;
    if (f > 0.0)
      b = u;
    else
      a = u;
    const double df = deriv_cell(k, u) * h_;
    double next = df > 0.0 ? u - f / df : 0.5 * (a + b);
    if (!(next > a && next < b)) next = 0.5 * (a + b);
    if (std::abs(next - u) <= 1e-17 || b - a <= 1e-16) {
      u = next;
      break;
    }
    u = next;
  }
  return x0_ + (static_cast<double>(k) + u) * h_ + shift;
}

}  // namespace circle_colim
