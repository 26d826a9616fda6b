#pragma once

#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "circle_colim/parallel.hpp"

namespace circle_colim {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Representative of `angle` in [0, 2π).
double wrap_angle(double angle);

/// A point of the standard circle, stored as its angle in [0, 2π).
class CirclePoint {
 public:
  CirclePoint() = default;
  explicit CirclePoint(double angle) : angle_(wrap_angle(angle)) {}
  double angle() const { return angle_; }

 private:
  double angle_ = 0.0;
};

/// Unvalidated arc used for intersection results; `length` may be zero.
struct ArcSpan {
  double start = 0.0;
  double length = 0.0;
};

/// A proper closed arc [start, start + length] of the circle, traversed
/// counterclockwise. The length is strictly between 0 and 2π.
class Interval {
 public:
  Interval(double start, double length);

  double start() const { return start_; }
  double length() const { return length_; }
  /// Unwrapped end point, start() + length().
  double end() const { return start_ + length_; }
  double midpoint() const { return wrap_angle(start_ + 0.5 * length_); }

  /// Counterclockwise offset of `angle` from start(), in [0, 2π).
  double offset(double angle) const { return wrap_angle(angle - start_); }

  bool contains(double angle, double tol = 0.0) const;
  bool contains_in_interior(double angle) const;
  bool contains(const Interval& other, double tol = 0.0) const;

  /// The arc grown by `delta` on each side.
  Interval enlarged(double delta) const;

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double start_;
  double length_;
};

/// Connected components of a ∩ b, ordered by offset from a.start().
std::vector<ArcSpan> intersect(const Interval& a, const Interval& b);

/// Smallest arc through the grid angles 2πk/n (n = flags.size()) that
/// contains every flagged angle: the complement of the longest cyclic run of
/// unflagged samples.
struct FlaggedArc {
  std::optional<Interval> interval;
  bool whole_circle = false;
  /// Index of the first unflagged sample of that run, and its length.
  std::size_t gap_start = 0;
  std::size_t gap_length = 0;
};
FlaggedArc flagged_arc(const std::vector<char>& flags);

/// Smallest arc containing every given arc (the complement of the largest
/// gap in their union); empty when the union is the whole circle.
std::optional<Interval> arc_hull(const std::vector<Interval>& arcs);

/// Shortest circular gap between two arcs; zero if they meet.
double distance(const Interval& a, const Interval& b);

/// A cyclically ordered family J_1..J_n of arcs with neighbouring overlaps
/// of length 2d. In based mode the base point p is the junction of J_n and
/// J_1, which meet only at p.
struct Cover {
  std::vector<Interval> intervals;
  double d = 0.0;
  std::optional<CirclePoint> based;

  std::size_t size() const { return intervals.size(); }
  const Interval& at(std::size_t j) const { return intervals[j % intervals.size()]; }
};

struct CoverReport {
  bool valid = false;
  bool overlaps_ok = false;
  bool nonadjacent_disjoint = false;
  bool covers_circle = false;
  bool based_ok = true;
  /// distance(J_j, J_{j+2}) > 6d for every j.
  bool strongly_separated = false;
  /// Length of J_j ∩ J_{j+1} (cyclic), summed over components.
  std::vector<double> overlap_lengths;
  std::vector<std::size_t> overlap_components;
  /// distance(J_j, J_{j+2}).
  std::vector<double> separations;
  std::vector<std::string> failures;
};

/// Checks the arc arithmetic of a cover. Throws PreconditionError for fewer
/// than three intervals or a non-positive d.
CoverReport validate_cover(const Cover& cover, double tol = 1e-12);

/// Smooth monotone step built from the mollifier exp(-1/(1-x²)).
namespace profile {
/// Normalized bump on [0, 1]: integrates to one, zero outside (0, 1).
double bump(double s);
double bump_derivative(double s);
/// Integral of bump from 0 to s; 0 for s <= 0 and 1 for s >= 1.
double step(double s);
/// sup of bump, attained at s = 1/2.
double bump_peak();
}  // namespace profile

/// Monotone transition on the real line: constant outside
/// [start, start + length], climbing (or falling) by d across it.
class SigmaFunction {
 public:
  SigmaFunction(double d, double start, double length, bool increasing);

  double d() const { return d_; }
  double start() const { return start_; }
  double length() const { return length_; }
  bool increasing() const { return increasing_; }

  double value(double x) const;
  double slope(double x) const;
  /// sup |σ'|, attained at the centre of the transition.
  double max_slope() const;

 private:
  double d_;
  double start_;
  double length_;
  bool increasing_;
};

/// Builds σ rising (or falling) by d across `transition`, measured on the
/// line coordinate that starts at transition.start(). Throws
/// PreconditionError when the arc is shorter than 2d or the probed slope
/// exceeds 1 - 1e-6.
SigmaFunction build_sigma(double d, const Interval& transition, bool increasing);
SigmaFunction build_sigma_on_line(double d, double lo, double hi, bool increasing);

/// Largest forward-difference slope of σ on a uniform grid of `points`
/// covering the transition and a margin either side.
double probe_max_slope(const SigmaFunction& sigma, std::size_t points = 1u << 14);

/// Periodic weight on the circle assembled from flat pieces and σ
/// transitions; the root-finding target of the diffeomorphism splits.
class CircleWeight {
 public:
  enum class Piece { zero, full, rise, fall };

  struct Segment {
    double begin;  // offset from base, in [0, 2π]
    double end;
    Piece piece;
  };

  /// 0 on I₋ \ I₊, d on I₊ \ I₋, rising across `rise` and falling across
  /// `fall` (the two overlap components).
  static CircleWeight two_sided(double d, const Interval& rise, const Interval& fall);

  /// 0 before `rise`, d after, along the arc that starts at `cut`. The
  /// discontinuity sits at `cut`, which must lie where the split element is
  /// the identity.
  static CircleWeight one_sided(double d, const Interval& rise, double cut);

  double d() const { return d_; }
  double value(double x) const;
  /// If σ is constant on [lo, hi] (lifted coordinates), that constant.
  std::optional<double> flat_value(double lo, double hi) const;
  double max_slope() const;
  const std::vector<Segment>& segments() const { return segments_; }
  double base() const { return base_; }

 private:
  CircleWeight(double d, double base, std::vector<Segment> segments);

  double d_;
  double base_;
  std::vector<Segment> segments_;
};

/// Smooth partition of unity subordinate to a valid cover: φ_j is 1 on
/// J_j away from its overlaps and 0 off J_j, with complementary profile
/// steps across each overlap.
class PartitionOfUnity {
 public:
  explicit PartitionOfUnity(Cover cover);

  std::size_t size() const { return cover_.size(); }
  const Cover& cover() const { return cover_; }

  double value(std::size_t j, double angle) const;
  std::vector<double> values(double angle) const;
  /// φ_j at the n uniform angles 2πk/n.
  std::vector<double> sample(std::size_t j, std::size_t n, Exec exec = Exec::parallel) const;

 private:
  Cover cover_;
  std::vector<double> lead_;   // length of J_{j-1} ∩ J_j
  std::vector<double> trail_;  // length of J_j ∩ J_{j+1}
};

/// Throws PreconditionError unless validate_cover passes.
PartitionOfUnity build_partition_of_unity(const Cover& cover);

/// Evenly spaced cover: J_j starts at offset + 2π j/n - d with length
/// 2π/n + 2d.
Cover uniform_cover(std::size_t n, double d, double offset = 0.0);

/// Evenly spaced based cover: J_1 starts at p, J_n ends at p; interior
/// junctions overlap by 2d.
Cover uniform_based_cover(std::size_t n, double d, double p);

}  // namespace circle_colim
