#include "circle_colim/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "circle_colim/errors.hpp"

namespace circle_colim {

double wrap_angle(double angle) {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

// ---------------------------------------------------------------- Interval

Interval::Interval(double start, double length) : start_(wrap_angle(start)), length_(length) {
  if (!(length > 0.0) || !(length < kTwoPi) || !std::isfinite(start)) {
    std::ostringstream os;
    os << "malformed interval: start=" << start << " length=" << length
       << " (length must lie in (0, 2pi))";
    throw PreconditionError(os.str());
  }
}

bool Interval::contains(double angle, double tol) const {
  const double off = offset(angle);
  return off <= length_ + tol || off >= kTwoPi - tol;
}

bool Interval::contains_in_interior(double angle) const {
  const double off = offset(angle);
  return off > 0.0 && off < length_;
}

bool Interval::contains(const Interval& other, double tol) const {
  double off = offset(other.start());
  if (off > kTwoPi - tol) off -= kTwoPi;
  return off >= -tol && off + other.length() <= length_ + tol;
}

Interval Interval::enlarged(double delta) const { return Interval(start_ - delta, length_ + 2.0 * delta); }

std::vector<ArcSpan> intersect(const Interval& a, const Interval& b) {
  std::vector<ArcSpan> out;
  const double ob = a.offset(b.start());
  // b occupies [ob, ob + Lb] and, wrapped once, [ob - 2π, ob + Lb - 2π].
  const std::array<std::pair<double, double>, 2> copies{
      std::pair{ob - kTwoPi, ob - kTwoPi + b.length()}, std::pair{ob, ob + b.length()}};
  for (const auto& [lo, hi] : copies) {
    const double s = std::max(0.0, lo);
    const double e = std::min(a.length(), hi);
    if (s <= e) out.push_back({wrap_angle(a.start() + s), e - s});
  }
  return out;
}

double distance(const Interval& a, const Interval& b) {
  if (!intersect(a, b).empty()) return 0.0;
  const double g1 = wrap_angle(b.start() - a.end());
  const double g2 = wrap_angle(a.start() - b.end());
  return std::min(g1, g2);
}

// ------------------------------------------------------------------- Cover

CoverReport validate_cover(const Cover& cover, double tol) {
  const std::size_t n = cover.size();
  if (n < 3) throw PreconditionError("a cover needs at least 3 intervals, got " + std::to_string(n));
  if (!(cover.d > 0.0)) throw PreconditionError("cover overlap half-width d must be positive");

  CoverReport rep;
  rep.overlap_lengths.resize(n);
  rep.overlap_components.resize(n);
  rep.separations.resize(n);
  rep.overlaps_ok = true;
  rep.nonadjacent_disjoint = true;
  rep.strongly_separated = true;

  const auto fail = [&rep](std::string msg) { rep.failures.push_back(std::move(msg)); };

  for (std::size_t j = 0; j < n; ++j) {
    const Interval& a = cover.at(j);
    const Interval& b = cover.at(j + 1);
    const auto parts = intersect(a, b);
    double total = 0.0;
    for (const auto& p : parts) total += p.length;
    rep.overlap_lengths[j] = total;
    rep.overlap_components[j] = parts.size();
    const bool based_junction = cover.based && j + 1 == n;
    const double want = based_junction ? 0.0 : 2.0 * cover.d;
    if (parts.size() != 1 || std::abs(total - want) > tol) {
      rep.overlaps_ok = false;
      std::ostringstream os;
      os << "overlap J" << j + 1 << " ∩ J" << (j + 1) % n + 1 << ": " << parts.size()
         << " component(s), length " << total << ", expected one of length " << want;
      fail(os.str());
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // cyclic neighbours
      if (!intersect(cover.at(i), cover.at(j)).empty()) {
        rep.nonadjacent_disjoint = false;
        fail("non-adjacent intervals J" + std::to_string(i + 1) + " and J" + std::to_string(j + 1) +
             " intersect");
      }
    }
  }

  for (std::size_t j = 0; j < n; ++j) {
    rep.separations[j] = distance(cover.at(j), cover.at(j + 2));
    if (!(rep.separations[j] > 6.0 * cover.d)) rep.strongly_separated = false;
  }

  // Starts must advance once around the circle, and consecutive arcs must
  // reach their successor; together with the overlap checks this means the
  // interiors cover the circle (minus p in based mode).
  double winding = 0.0;
  bool reaches = true;
  for (std::size_t j = 0; j < n; ++j) {
    const double step = wrap_angle(cover.at(j + 1).start() - cover.at(j).start());
    winding += step;
    if (step > cover.at(j).length() + tol) reaches = false;
  }
  rep.covers_circle = reaches && std::abs(winding - kTwoPi) <= 1e-9;
  if (!rep.covers_circle) fail("intervals do not wind once around the circle");

  if (cover.based) {
    const double p = cover.based->angle();
    const double to_start = std::abs(wrap_angle(cover.at(0).start() - p + 0.5) - 0.5);
    const double to_end = std::abs(wrap_angle(cover.at(n - 1).end() - p + 0.5) - 0.5);
    rep.based_ok = to_start <= tol && to_end <= tol;
    for (std::size_t j = 0; j < n; ++j)
      if (cover.at(j).contains_in_interior(p)) rep.based_ok = false;
    if (!rep.based_ok) fail("based cover: J1 must start and Jn end at the base point, no interior may contain it");
  }

  rep.valid = rep.overlaps_ok && rep.nonadjacent_disjoint && rep.covers_circle && rep.based_ok;
  return rep;
}

Cover uniform_cover(std::size_t n, double d, double offset) {
  Cover c;
  c.d = d;
  const double step = kTwoPi / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) c.intervals.emplace_back(offset + step * static_cast<double>(j) - d, step + 2.0 * d);
  return c;
}

Cover uniform_based_cover(std::size_t n, double d, double p) {
  Cover c;
  c.d = d;
  c.based = CirclePoint(p);
  const double step = kTwoPi / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double lo = j == 0 ? 0.0 : step * static_cast<double>(j) - d;
    const double hi = j + 1 == n ? kTwoPi : step * static_cast<double>(j + 1) + d;
    c.intervals.emplace_back(p + lo, hi - lo);
  }
  return c;
}

// ----------------------------------------------------------------- profile

namespace profile {
namespace {

constexpr std::size_t kCells = 2048;
constexpr std::size_t kGauss = 16;

double mollifier(double x) {
  if (x <= -1.0 || x >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - x * x));
}

double mollifier_derivative(double x) {
  if (x <= -1.0 || x >= 1.0) return 0.0;
  const double q = 1.0 - x * x;
  return mollifier(x) * (-2.0 * x / (q * q));
}

struct GaussRule {
  std::array<double, kGauss> x{};
  std::array<double, kGauss> w{};
};

GaussRule gauss_legendre() {
  GaussRule r;
  const int n = static_cast<int>(kGauss);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    r.x[static_cast<std::size_t>(i)] = z;
    r.w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return r;
}

struct StepTable {
  double scale = 0.0;  // 1 / ∫ρ over [-1, 1], times 2 for the map to [0, 1]
  std::array<double, kCells + 1> value{};
  std::array<double, kCells + 1> first{};
  std::array<double, kCells + 1> second{};

  StepTable() {
    const GaussRule g = gauss_legendre();
    const double h = 1.0 / static_cast<double>(kCells);
    std::array<double, kCells> cell{};
    for (std::size_t c = 0; c < kCells; ++c) {
      // ∫ over s-cell [c h, (c+1) h] of ρ(2s - 1) ds
      double acc = 0.0;
      for (std::size_t q = 0; q < kGauss; ++q) {
        const double s = (static_cast<double>(c) + 0.5 * (g.x[q] + 1.0)) * h;
        acc += g.w[q] * mollifier(2.0 * s - 1.0);
      }
      cell[c] = 0.5 * h * acc;
    }
    // Accumulate the left half and mirror so that step(1 - s) = 1 - step(s).
    double half = 0.0;
    for (std::size_t c = 0; c < kCells / 2; ++c) half += cell[c];
    const double total = 2.0 * half;
    scale = 1.0 / total;
    value[0] = 0.0;
    for (std::size_t c = 0; c < kCells / 2; ++c) value[c + 1] = value[c] + cell[c] * scale;
    value[kCells / 2] = 0.5;
    for (std::size_t c = 0; c < kCells / 2; ++c) value[kCells - c] = 1.0 - value[c];
    for (std::size_t c = 0; c <= kCells; ++c) {
      const double s = static_cast<double>(c) * h;
      first[c] = scale * mollifier(2.0 * s - 1.0);
      second[c] = 2.0 * scale * mollifier_derivative(2.0 * s - 1.0);
    }
  }
};

const StepTable& table() {
  static const StepTable t;
  return t;
}

}  // namespace

double bump(double s) { return table().scale * mollifier(2.0 * s - 1.0); }

double bump_derivative(double s) { return 2.0 * table().scale * mollifier_derivative(2.0 * s - 1.0); }

double bump_peak() { return bump(0.5); }

double step(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const StepTable& t = table();
  const double h = 1.0 / static_cast<double>(kCells);
  const double pos = s * static_cast<double>(kCells);
  std::size_t c = static_cast<std::size_t>(pos);
  if (c >= kCells) c = kCells - 1;
  const double u = pos - static_cast<double>(c);
  const double u2 = u * u, u3 = u2 * u, u4 = u3 * u, u5 = u4 * u;
  // Quintic Hermite basis on the unit cell.
  const double h0 = 1.0 - 10.0 * u3 + 15.0 * u4 - 6.0 * u5;
  const double h1 = u - 6.0 * u3 + 8.0 * u4 - 3.0 * u5;
  const double h2 = 0.5 * u2 - 1.5 * u3 + 1.5 * u4 - 0.5 * u5;
  const double h3 = 0.5 * u3 - u4 + 0.5 * u5;
  const double h4 = -4.0 * u3 + 7.0 * u4 - 3.0 * u5;
  const double h5 = 10.0 * u3 - 15.0 * u4 + 6.0 * u5;
  return h0 * t.value[c] + h1 * h * t.first[c] + h2 * h * h * t.second[c] + h3 * h * h * t.second[c + 1] +
         h4 * h * t.first[c + 1] + h5 * t.value[c + 1];
}

}  // namespace profile

// ------------------------------------------------------------------- sigma

SigmaFunction::SigmaFunction(double d, double start, double length, bool increasing)
    : d_(d), start_(start), length_(length), increasing_(increasing) {}

double SigmaFunction::value(double x) const {
  const double r = d_ * profile::step((x - start_) / length_);
  return increasing_ ? r : d_ - r;
}

double SigmaFunction::slope(double x) const {
  const double r = d_ / length_ * profile::bump((x - start_) / length_);
  return increasing_ ? r : -r;
}

double SigmaFunction::max_slope() const { return d_ / length_ * profile::bump_peak(); }

double probe_max_slope(const SigmaFunction& sigma, std::size_t points) {
  const double lo = sigma.start() - 0.25 * sigma.length();
  const double hi = sigma.start() + 1.25 * sigma.length();
  const double h = (hi - lo) / static_cast<double>(points - 1);
  double worst = 0.0;
  double prev = sigma.value(lo);
  for (std::size_t k = 1; k < points; ++k) {
    const double cur = sigma.value(lo + h * static_cast<double>(k));
    worst = std::max(worst, std::abs(cur - prev) / h);
    prev = cur;
  }
  return worst;
}

SigmaFunction build_sigma_on_line(double d, double lo, double hi, bool increasing) {
  if (!(d > 0.0)) throw PreconditionError("sigma: d must be positive");
  const double length = hi - lo;
  if (!(length >= 2.0 * d * (1.0 - 1e-12))) {
    std::ostringstream os;
    os << "sigma: transition length " << length << " is shorter than 2d = " << 2.0 * d;
    throw PreconditionError(os.str());
  }
  SigmaFunction s(d, lo, length, increasing);
  if (s.max_slope() > 1.0 - 1e-6 || probe_max_slope(s) > 1.0 - 1e-6)
    throw PreconditionError("sigma: slope bound 1 - 1e-6 not met");
  return s;
}

SigmaFunction build_sigma(double d, const Interval& transition, bool increasing) {
  return build_sigma_on_line(d, transition.start(), transition.start() + transition.length(), increasing);
}

std::optional<Interval> arc_hull(const std::vector<Interval>& arcs) {
  if (arcs.empty()) throw PreconditionError("arc_hull: no arcs");
  // Unroll from the first start and sweep the arcs in offset order.
  const double base = arcs.front().start();
  std::vector<std::pair<double, double>> spans;
  for (const auto& a : arcs) {
    const double s = wrap_angle(a.start() - base);
    spans.emplace_back(s, s + a.length());
  }
  std::sort(spans.begin(), spans.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& sp : spans) {
    if (!merged.empty() && sp.first <= merged.back().second)
      merged.back().second = std::max(merged.back().second, sp.second);
    else
      merged.push_back(sp);
  }
  // A component reaching past 2π absorbs the leading components it covers.
  while (merged.size() > 1 && merged.back().second - kTwoPi >= merged.front().first) {
    merged.back().second = std::max(merged.back().second, merged.front().second + kTwoPi);
    merged.erase(merged.begin());
  }
  if (merged.size() == 1) {
    const double len = merged.front().second - merged.front().first;
    if (len >= kTwoPi) return std::nullopt;
    return Interval(base + merged.front().first, len);
  }
  // Largest gap between consecutive components (cyclically).
  double best_gap = -1.0;
  std::size_t best = 0;
  for (std::size_t i = 0; i < merged.size(); ++i) {
    const double end = merged[i].second;
    const double next = i + 1 < merged.size() ? merged[i + 1].first : merged.front().first + kTwoPi;
    if (next - end > best_gap) best_gap = next - end, best = i;
  }
  if (best_gap <= 0.0) return std::nullopt;
  const double start = best + 1 < merged.size() ? merged[best + 1].first : merged.front().first;
  return Interval(base + start, kTwoPi - best_gap);
}

// -------------------------------------------------------------- FlaggedArc

FlaggedArc flagged_arc(const std::vector<char>& flags) {
  const std::size_t n = flags.size();
  FlaggedArc out;
  const std::size_t count = static_cast<std::size_t>(std::count(flags.begin(), flags.end(), char{1}));
  if (count == 0) {
    out.gap_length = n;
    return out;
  }
  if (count == n) {
    out.whole_circle = true;
    return out;
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (flags[k] || !flags[(k + n - 1) % n]) continue;  // runs start right after a flagged sample
    std::size_t len = 0;
    while (!flags[(k + len) % n]) ++len;
    if (len > out.gap_length) out.gap_length = len, out.gap_start = k;
  }
  const double h = kTwoPi / static_cast<double>(n);
  const std::size_t first = (out.gap_start + out.gap_length) % n;
  const std::size_t cells = n - out.gap_length - 1;
  out.interval = Interval(h * static_cast<double>(first), std::max(static_cast<double>(cells) * h, 1e-12));
  return out;
}

// ------------------------------------------------------------ CircleWeight

CircleWeight::CircleWeight(double d, double base, std::vector<Segment> segments)
    : d_(d), base_(base), segments_(std::move(segments)) {}

CircleWeight CircleWeight::two_sided(double d, const Interval& rise, const Interval& fall) {
  if (rise.length() < 2.0 * d * (1.0 - 1e-12) || fall.length() < 2.0 * d * (1.0 - 1e-12))
    throw PreconditionError("circle weight: overlap shorter than 2d");
  const double base = rise.start();
  const double fall_at = wrap_angle(fall.start() - base);
  if (fall_at < rise.length() || fall_at + fall.length() > kTwoPi + 1e-12)
    throw PreconditionError("circle weight: overlap components out of order");
  std::vector<Segment> seg{{0.0, rise.length(), Piece::rise},
                           {rise.length(), fall_at, Piece::full},
                           {fall_at, fall_at + fall.length(), Piece::fall},
                           {fall_at + fall.length(), kTwoPi, Piece::zero}};
  return CircleWeight(d, base, std::move(seg));
}

CircleWeight CircleWeight::one_sided(double d, const Interval& rise, double cut) {
  if (rise.length() < 2.0 * d * (1.0 - 1e-12)) throw PreconditionError("arc weight: overlap shorter than 2d");
  const double base = wrap_angle(cut);
  const double at = wrap_angle(rise.start() - base);
  if (at + rise.length() > kTwoPi) throw PreconditionError("arc weight: cut lies inside the transition");
  std::vector<Segment> seg{{0.0, at, Piece::zero},
                           {at, at + rise.length(), Piece::rise},
                           {at + rise.length(), kTwoPi, Piece::full}};
  return CircleWeight(d, base, std::move(seg));
}

double CircleWeight::value(double x) const {
  const double u = wrap_angle(x - base_);
  for (const Segment& s : segments_) {
    if (u > s.end) continue;
    switch (s.piece) {
      case Piece::zero:
        return 0.0;
      case Piece::full:
        return d_;
      case Piece::rise:
        return d_ * profile::step((u - s.begin) / (s.end - s.begin));
      case Piece::fall:
        return d_ - d_ * profile::step((u - s.begin) / (s.end - s.begin));
    }
  }
  return segments_.back().piece == Piece::full ? d_ : 0.0;
}

std::optional<double> CircleWeight::flat_value(double lo, double hi) const {
  const double ulo = wrap_angle(lo - base_);
  const double uhi = ulo + (hi - lo);
  for (const Segment& s : segments_) {
    if (ulo >= s.begin && uhi <= s.end) {
      if (s.piece == Piece::zero) return 0.0;
      if (s.piece == Piece::full) return d_;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

double CircleWeight::max_slope() const {
  double worst = 0.0;
  for (const Segment& s : segments_)
    if (s.piece == Piece::rise || s.piece == Piece::fall)
      worst = std::max(worst, d_ / (s.end - s.begin) * profile::bump_peak());
  return worst;
}

// -------------------------------------------------------- PartitionOfUnity

PartitionOfUnity::PartitionOfUnity(Cover cover) : cover_(std::move(cover)) {
  const std::size_t n = cover_.size();
  lead_.resize(n);
  trail_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    double len = 0.0;
    for (const auto& p : intersect(cover_.at(j), cover_.at(j + 1))) len += p.length;
    trail_[j] = len;
    lead_[(j + 1) % n] = len;
  }
}

double PartitionOfUnity::value(std::size_t j, double angle) const {
  const Interval& J = cover_.at(j);
  const double u = J.offset(angle);
  const double lead = lead_[j];
  const double trail = trail_[j];
  // Zero-length junctions (the base point) are half-open: the point belongs
  // to the arc that starts there.
  if (trail == 0.0) {
    if (u >= J.length()) return 0.0;
  } else if (u > J.length()) {
    return 0.0;
  }
  double v = 1.0;
  if (lead > 0.0 && u < lead) v = profile::step(u / lead);
  if (trail > 0.0 && u > J.length() - trail) v = 1.0 - profile::step((u - (J.length() - trail)) / trail);
  return v;
}

std::vector<double> PartitionOfUnity::values(double angle) const {
  std::vector<double> out(size());
  for (std::size_t j = 0; j < size(); ++j) out[j] = value(j, angle);
  return out;
}

std::vector<double> PartitionOfUnity::sample(std::size_t j, std::size_t n, Exec exec) const {
  std::vector<double> out(n);
  const double h = kTwoPi / static_cast<double>(n);
  for_each_index(n, exec, [&](std::size_t k) { out[k] = value(j, h * static_cast<double>(k)); });
  return out;
}

PartitionOfUnity build_partition_of_unity(const Cover& cover) {
  const CoverReport rep = validate_cover(cover);
  if (!rep.valid) {
    std::string msg = "partition of unity needs a valid cover:";
    for (const auto& f : rep.failures) msg += " " + f + ";";
    throw PreconditionError(msg);
  }
  return PartitionOfUnity(cover);
}

}  // namespace circle_colim
