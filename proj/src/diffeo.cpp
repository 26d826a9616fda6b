#include "circle_colim/diffeo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "circle_colim/errors.hpp"

namespace circle_colim {
namespace {

CircleDiffeo checked(std::vector<double> samples, const char* what) {
  try {
    return CircleDiffeo(std::move(samples));
  } catch (const PreconditionError& e) {
    throw ContractViolation(std::string(what) + ": result is not a diffeomorphism on this grid (" + e.what() + ")");
  }
}

LineDiffeo checked_line(double lo, double hi, std::vector<double> samples, const char* what) {
  try {
    return LineDiffeo(lo, hi, std::move(samples));
  } catch (const PreconditionError& e) {
    throw ContractViolation(std::string(what) + ": result is not a diffeomorphism on this grid (" + e.what() + ")");
  }
}

// σ on the line, in the interface the root solver expects.
struct LineWeight {
  const SigmaFunction& sigma;

  double value(double y) const { return sigma.value(y); }
  std::optional<double> flat_value(double lo, double hi) const {
    const double a = sigma.start();
    const double b = sigma.start() + sigma.length();
    const double before = sigma.increasing() ? 0.0 : sigma.d();
    if (hi <= a) return before;
    if (lo >= b) return sigma.d() - before;
    return std::nullopt;
  }
};

// Root y of (y - t)·d = (f - t)·σ(y). The left side minus the right side is
// strictly increasing in y when |f - t| < d and |σ'| < 1, and changes sign
// between t and f.
template <class Weight>
double solve_plus(double t, double f, double d, const Weight& w) {
  const double disp = f - t;
  if (disp == 0.0) return t;
  double lo = std::min(t, f);
  double hi = std::max(t, f);
  if (const auto flat = w.flat_value(lo, hi)) return t + disp * (*flat / d);
  if (w.value(t) == 0.0) return t;
  if (w.value(f) == d) return f;
  const auto g = [&](double y) { return (y - t) * d - disp * w.value(y); };
  const double slack = 1e-12 * std::abs(disp) * d;
  if (g(lo) > slack || g(hi) < -slack) throw ContractViolation("split: root is not bracketed (invalid sigma)");
  while (hi - lo > kRootTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) <= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

inline std::span<const double> samples_of(const CircleDiffeo& f) { return f.lift(); }
inline std::span<const double> samples_of(const LineDiffeo& f) { return f.values(); }

// φ₋(t) = φ(s) with s = φ₊⁻¹(t). Since (t - s)·d = (φ(s) - s)·σ(t),
// φ₋(t) = t exactly wherever σ(t) = d.

template <class D, class Weight>
std::vector<double> minus_samples(const D& phi, const D& plus, double d, const Weight& w, Exec exec) {
  std::vector<double> out(phi.size());
  for_each_index(phi.size(), exec, [&](std::size_t k) {
    const double t = phi.grid(k);
    if (w.value(t) == d)
      out[k] = t;
    else if (samples_of(plus)[k] == t)  // fixed point of φ₊
      out[k] = samples_of(phi)[k];
    else
      out[k] = phi(plus.preimage(t));
  });
  return out;
}

void require_displacement(double disp, double d) {
  if (!(disp < d)) {
    std::ostringstream os;
    os << "displacement " << disp << " is not below the bound d = " << d;
    throw PreconditionError(os.str());
  }
}

}  // namespace

// ------------------------------------------------------------ CircleDiffeo

CircleDiffeo::CircleDiffeo(std::vector<double> lift)
    : lift_(std::move(lift)), interp_(0.0, kTwoPi / static_cast<double>(lift_.size()), lift_, Extension::periodic_lift) {
  if (lift_.size() < 16 || !std::has_single_bit(lift_.size()))
    throw PreconditionError("circle diffeo: sample count must be a power of two >= 16, got " +
                            std::to_string(lift_.size()));
  for (double v : lift_)
    if (!std::isfinite(v)) throw PreconditionError("circle diffeo: non-finite lift sample");
}

CircleDiffeo CircleDiffeo::identity(std::size_t n) {
  return from_lift(n, [](double t) { return t; });
}

CircleDiffeo CircleDiffeo::rotation(std::size_t n, double angle) {
  return from_lift(n, [angle](double t) { return t + angle; });
}

CircleDiffeo CircleDiffeo::from_lift(std::size_t n, const std::function<double(double)>& lift) {
  std::vector<double> v(n);
  const double h = kTwoPi / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = lift(h * static_cast<double>(k));
  return CircleDiffeo(std::move(v));
}

double sup_distance(const CircleDiffeo& a, const CircleDiffeo& b) {
  if (a.size() != b.size()) throw PreconditionError("sup_distance: grid sizes differ");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a.lift()[k] - b.lift()[k]));
  return worst;
}

CircleDiffeo compose(const CircleDiffeo& phi, const CircleDiffeo& psi, Exec exec) {
  std::vector<double> out(psi.size());
  for_each_index(psi.size(), exec, [&](std::size_t k) { out[k] = phi(psi.lift()[k]); });
  return checked(std::move(out), "compose");
}

CircleDiffeo compose_all(std::span<const CircleDiffeo> factors, Exec exec) {
  if (factors.empty()) throw PreconditionError("compose_all: empty factor list");
  CircleDiffeo acc = factors.back();
  for (std::size_t i = factors.size() - 1; i-- > 0;) acc = compose(factors[i], acc, exec);
  return acc;
}

CircleDiffeo invert(const CircleDiffeo& phi, Exec exec) {
  std::vector<double> out(phi.size());
  for_each_index(phi.size(), exec, [&](std::size_t k) { out[k] = phi.preimage(phi.grid(k)); });
  return checked(std::move(out), "invert");
}

double inverse_residual(const CircleDiffeo& phi, const CircleDiffeo& inverse) {
  double worst = 0.0;
  for (std::size_t k = 0; k < inverse.size(); ++k)
    worst = std::max(worst, std::abs(phi(inverse.lift()[k]) - inverse.grid(k)));
  return worst;
}

double displacement(const CircleDiffeo& phi) {
  double worst = 0.0;
  for (std::size_t k = 0; k < phi.size(); ++k) worst = std::max(worst, std::abs(phi.lift()[k] - phi.grid(k)));
  return worst;
}

// ----------------------------------------------------------------- support

bool SupportCertificate::within(const Interval& arc, double slack) const {
  if (whole_circle) return false;
  if (!interval) return true;
  return arc.contains(*interval, slack);
}

SupportCertificate support(const CircleDiffeo& phi, double tol) {
  const std::size_t n = phi.size();
  std::vector<char> moved(n);
  for (std::size_t k = 0; k < n; ++k) moved[k] = std::abs(phi.lift()[k] - phi.grid(k)) > tol ? 1 : 0;
  const FlaggedArc arc = flagged_arc(moved);
  SupportCertificate cert;
  cert.tolerance = tol;
  cert.interval = arc.interval;
  cert.whole_circle = arc.whole_circle;
  for (std::size_t i = 0; i < arc.gap_length; ++i) {
    const std::size_t k = (arc.gap_start + i) % n;
    cert.max_deviation_outside = std::max(cert.max_deviation_outside, std::abs(phi.lift()[k] - phi.grid(k)));
  }
  return cert;
}

SupportCertificate proper_support(const CircleDiffeo& phi, double tol) {
  SupportCertificate cert = support(phi, tol);
  if (cert.whole_circle) throw PreconditionError("support is the whole circle; a proper arc is required");
  return cert;
}

// -------------------------------------------------------------- LineDiffeo

LineDiffeo::LineDiffeo(double lo, double hi, std::vector<double> values)
    : lo_(lo),
      hi_(hi),
      values_(std::move(values)),
      interp_(lo, (hi - lo) / static_cast<double>(std::max<std::size_t>(values_.size(), 2) - 1), values_,
              Extension::identity) {
  if (!(hi > lo)) throw PreconditionError("line diffeo: empty window");
}

LineDiffeo LineDiffeo::identity(double lo, double hi, std::size_t n) {
  return from_function(lo, hi, n, [](double x) { return x; });
}

LineDiffeo LineDiffeo::from_function(double lo, double hi, std::size_t n, const std::function<double(double)>& f) {
  std::vector<double> v(n);
  const double h = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k) v[k] = f(lo + h * static_cast<double>(k));
  return LineDiffeo(lo, hi, std::move(v));
}

double displacement(const LineDiffeo& phi) {
  double worst = 0.0;
  for (std::size_t k = 0; k < phi.size(); ++k) worst = std::max(worst, std::abs(phi.values()[k] - phi.grid(k)));
  return worst;
}

double sup_distance(const LineDiffeo& a, const LineDiffeo& b) {
  if (a.size() != b.size()) throw PreconditionError("sup_distance: grid sizes differ");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a.values()[k] - b.values()[k]));
  return worst;
}

LineDiffeo compose(const LineDiffeo& phi, const LineDiffeo& psi, Exec exec) {
  if (phi.lo() != psi.lo() || phi.hi() != psi.hi()) throw PreconditionError("compose: line windows differ");
  std::vector<double> out(psi.size());
  for_each_index(psi.size(), exec, [&](std::size_t k) { out[k] = phi(psi.values()[k]); });
  return checked_line(psi.lo(), psi.hi(), std::move(out), "compose");
}

LineDiffeo invert(const LineDiffeo& phi, Exec exec) {
  std::vector<double> out(phi.size());
  for_each_index(phi.size(), exec, [&](std::size_t k) { out[k] = phi.preimage(phi.grid(k)); });
  return checked_line(phi.lo(), phi.hi(), std::move(out), "invert");
}

std::optional<std::pair<double, double>> support(const LineDiffeo& phi, double tol) {
  std::optional<std::pair<double, double>> out;
  for (std::size_t k = 0; k < phi.size(); ++k) {
    if (std::abs(phi.values()[k] - phi.grid(k)) <= tol) continue;
    if (!out)
      out = std::pair{phi.grid(k), phi.grid(k)};
    else
      out->second = phi.grid(k);
  }
  return out;
}

// ------------------------------------------------------------------ splits

Split<LineDiffeo> split_line(const LineDiffeo& phi, double d, const SigmaFunction& sigma, Exec exec) {
  if (std::abs(sigma.d() - d) > 1e-15 * d) throw PreconditionError("split_line: sigma built for a different d");
  require_displacement(displacement(phi), d);
  const LineWeight w{sigma};
  std::vector<double> plus(phi.size());
  for_each_index(phi.size(), exec, [&](std::size_t k) { plus[k] = solve_plus(phi.grid(k), phi.values()[k], d, w); });
  LineDiffeo p = checked_line(phi.lo(), phi.hi(), std::move(plus), "split_line");
  LineDiffeo m = checked_line(phi.lo(), phi.hi(), minus_samples(phi, p, d, w, exec), "split_line");
  return {std::move(m), std::move(p)};
}

Split<CircleDiffeo> split_with_weight(const CircleDiffeo& phi, const CircleWeight& weight, Exec exec) {
  const double d = weight.d();
  require_displacement(displacement(phi), d);
  std::vector<double> plus(phi.size());
  for_each_index(phi.size(), exec, [&](std::size_t k) { plus[k] = solve_plus(phi.grid(k), phi.lift()[k], d, weight); });
  CircleDiffeo p = checked(std::move(plus), "split");
  CircleDiffeo m = checked(minus_samples(phi, p, d, weight, exec), "split");
  return {std::move(m), std::move(p)};
}

Split<CircleDiffeo> split_circle(const CircleDiffeo& phi, const Interval& minus_arc, const Interval& plus_arc, double d,
                                 Exec exec) {
  const auto parts = intersect(minus_arc, plus_arc);
  if (parts.size() != 2) throw PreconditionError("split_circle: I- ∩ I+ must have exactly two components");
  for (const auto& p : parts)
    if (std::abs(p.length - 2.0 * d) > 1e-12)
      throw PreconditionError("split_circle: each overlap component must have length 2d");
  // The rise component starts where I+ begins; the fall component where I- begins.
  const Interval rise(plus_arc.start(), 2.0 * d);
  const Interval fall(minus_arc.start(), 2.0 * d);
  const auto close = [](double a, double b) { return std::abs(wrap_angle(a - b + 1.0) - 1.0) < 1e-12; };
  const bool ok = (close(parts[0].start, rise.start()) && close(parts[1].start, fall.start())) ||
                  (close(parts[1].start, rise.start()) && close(parts[0].start, fall.start()));
  if (!ok) throw PreconditionError("split_circle: I- and I+ do not cover the circle");
  return split_with_weight(phi, CircleWeight::two_sided(d, rise, fall), exec);
}

// ------------------------------------------------------- cover factoring

std::vector<CircleDiffeo> factor_over_cover(const CircleDiffeo& phi, const Cover& cover, Exec exec) {
  const CoverReport rep = validate_cover(cover);
  if (!rep.valid) {
    std::string msg = "factor_over_cover: invalid cover:";
    for (const auto& f : rep.failures) msg += " " + f + ";";
    throw PreconditionError(msg);
  }
  const double d = cover.d;
  require_displacement(displacement(phi), d);
  const std::size_t n = cover.size();
  std::vector<CircleDiffeo> factors;
  factors.reserve(n);

  const auto overlap = [&](std::size_t j) {  // J_j ∩ J_{j+1}, 0-based j
    return Interval(cover.at(j + 1).start(), 2.0 * d);
  };
  const double tail_end = cover.at(n - 1).end();

  CircleDiffeo rest = phi;
  std::size_t first_line = 0;
  if (!cover.based) {
    const Interval plus_arc(cover.at(1).start(), wrap_angle(tail_end - cover.at(1).start()));
    auto s = split_circle(rest, cover.at(0), plus_arc, d, exec);
    factors.push_back(std::move(s.minus));
    rest = std::move(s.plus);
    first_line = 1;
  }
  for (std::size_t j = first_line; j + 1 < n; ++j) {
    // rest is supported in the arc from J_j.start to J_n.end; cut in the
    // middle of the complementary gap, where rest is the identity.
    double cut;
    if (cover.based) {
      cut = cover.based->angle();
    } else {
      const double gap = wrap_angle(cover.at(j).start() - tail_end);
      cut = tail_end + 0.5 * gap;
    }
    auto s = split_with_weight(rest, CircleWeight::one_sided(d, overlap(j), cut), exec);
    factors.push_back(std::move(s.minus));
    rest = std::move(s.plus);
  }
  factors.push_back(std::move(rest));
  return factors;
}

std::vector<CircleDiffeo> factor_lift(const CircleDiffeo& phi, std::size_t m, double d, Exec exec) {
  if (m == 0) throw PreconditionError("factor_lift: m must be positive");
  const double disp = displacement(phi);
  const double per = disp / static_cast<double>(m);
  if (!(per < d)) {
    std::ostringstream os;
    os << "factor_lift: m = " << m << " too small: per-factor displacement " << per << " is not below d = " << d;
    throw PreconditionError(os.str());
  }
  const std::size_t n = phi.size();
  const double inv_m = 1.0 / static_cast<double>(m);
  // f_i(x) = F_{i/m}(F_{(i-1)/m}^{-1}(x)) = x + (F(y) - y)/m, y = F_{(i-1)/m}^{-1}(x).
  std::vector<CircleDiffeo> out;
  out.reserve(m);
  for (std::size_t i = 1; i <= m; ++i) {
    const double s = static_cast<double>(i - 1) * inv_m;
    std::vector<double> hs(n);
    for (std::size_t k = 0; k < n; ++k) hs[k] = (1.0 - s) * phi.grid(k) + s * phi.lift()[k];
    const CircleDiffeo homotopy(std::move(hs));
    std::vector<double> f(n);
    for_each_index(n, exec, [&](std::size_t k) {
      const double x = phi.grid(k);
      const double y = i == 1 ? x : homotopy.preimage(x);
      f[k] = x + (phi(y) - y) * inv_m;
    });
    out.push_back(checked(std::move(f), "factor_lift"));
  }
  std::reverse(out.begin(), out.end());
  return out;
}

bool fixes_point(const CircleDiffeo& phi, double p, double tol) {
  const double h = phi.step();
  const double f0 = phi(p) - p;
  const double fp = phi(p + h) - (p + h);
  const double fm = phi(p - h) - (p - h);
  const double first = (fp - fm) / (2.0 * h);
  const double second = (fp - 2.0 * f0 + fm) / (h * h);
  return std::abs(f0) <= tol && std::abs(first) <= tol && std::abs(second) <= tol;
}

CircleDiffeo restrict_to_arc(const CircleDiffeo& phi, const Interval& arc) {
  std::vector<double> out(phi.size());
  for (std::size_t k = 0; k < phi.size(); ++k) out[k] = arc.contains(phi.grid(k)) ? phi.lift()[k] : phi.grid(k);
  return checked(std::move(out), "restrict_to_arc");
}

}  // namespace circle_colim
