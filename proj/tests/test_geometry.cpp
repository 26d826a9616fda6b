#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "circle_colim/errors.hpp"
#include "circle_colim/geometry.hpp"

using namespace circle_colim;

TEST_CASE("wrap_angle and interval arithmetic") {
  CHECK(wrap_angle(-0.5) == doctest::Approx(kTwoPi - 0.5));
  CHECK(wrap_angle(kTwoPi + 1.0) == doctest::Approx(1.0));
  const Interval a(kTwoPi - 0.5, 1.0);
  CHECK(a.contains(0.2));
  CHECK(a.contains(kTwoPi - 0.4));
  CHECK_FALSE(a.contains(1.0));
  CHECK(a.contains(Interval(kTwoPi - 0.2, 0.4)));
  CHECK(a.enlarged(0.1).length() == doctest::Approx(1.2));
  CHECK_THROWS_AS(Interval(0.0, 0.0), PreconditionError);
  CHECK_THROWS_AS(Interval(0.0, kTwoPi), PreconditionError);
}

TEST_CASE("intersect finds both components of two half circles") {
  const double d = 0.1;
  const Interval plus(1.0, std::numbers::pi + 2 * d), minus(1.0 + std::numbers::pi, std::numbers::pi + 2 * d);
  const auto parts = intersect(minus, plus);
  REQUIRE(parts.size() == 2);
  for (const auto& p : parts) CHECK(p.length == doctest::Approx(2 * d));
  CHECK(intersect(Interval(0.0, 1.0), Interval(2.0, 1.0)).empty());
  CHECK(distance(Interval(0.0, 1.0), Interval(2.0, 1.0)) == doctest::Approx(1.0));
  CHECK(distance(Interval(0.0, 1.0), Interval(0.5, 1.0)) == 0.0);
}

TEST_CASE("flagged_arc takes the complement of the longest gap") {
  std::vector<char> flags(16, 0);
  CHECK_FALSE(flagged_arc(flags).interval);
  flags[15] = flags[0] = flags[1] = 1;
  const auto arc = flagged_arc(flags);
  REQUIRE(arc.interval);
  const double h = kTwoPi / 16;
  CHECK(arc.interval->start() == doctest::Approx(15 * h));
  CHECK(arc.interval->length() == doctest::Approx(2 * h));
  std::fill(flags.begin(), flags.end(), 1);
  CHECK(flagged_arc(flags).whole_circle);
}

TEST_CASE("validate_cover") {
  SUBCASE("five even arcs of length 2π/5 + 0.2 pass") {
    const auto rep = validate_cover(uniform_cover(5, 0.1));
    CHECK(rep.valid);
    CHECK(rep.strongly_separated);
    REQUIRE(rep.overlap_lengths.size() == 5);
    for (double len : rep.overlap_lengths) CHECK(len == doctest::Approx(0.2).epsilon(1e-12));
  }
  SUBCASE("two intervals are rejected") {
    Cover c;
    c.d = 0.1;
    c.intervals = {Interval(0.0, 4.0), Interval(3.8, 3.0)};
    CHECK_THROWS_AS(validate_cover(c), PreconditionError);
  }
  SUBCASE("unequal overlaps fail with a per-pair report") {
    Cover c = uniform_cover(5, 0.1);
    c.intervals[2] = Interval(c.intervals[2].start(), c.intervals[2].length() + 0.05);
    const auto rep = validate_cover(c);
    CHECK_FALSE(rep.valid);
    CHECK_FALSE(rep.overlaps_ok);
    CHECK(rep.overlap_lengths[2] == doctest::Approx(0.25));
    CHECK_FALSE(rep.failures.empty());
  }
  SUBCASE("based cover") {
    const auto rep = validate_cover(uniform_based_cover(4, 0.1, 0.7));
    CHECK(rep.valid);
    CHECK(rep.based_ok);
  }
}

TEST_CASE("mollifier profile") {
  // mpmath quadrature of exp(-1/(1-x²)), normalized on [0, 1].
  CHECK(profile::bump_peak() == doctest::Approx(1.6571376797382103).epsilon(1e-12));
  CHECK(profile::step(0.1) == doctest::Approx(0.0067909995294346228).epsilon(1e-10));
  CHECK(profile::step(0.3) == doctest::Approx(0.18712776568876771).epsilon(1e-10));
  CHECK(profile::step(0.7) == doctest::Approx(0.81287223431123221).epsilon(1e-10));
  CHECK(profile::step(0.5) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(profile::step(-1.0) == 0.0);
  CHECK(profile::step(1.0) == 1.0);
  CHECK(profile::bump(1.2) == 0.0);
}

TEST_CASE("sigma functions") {
  const double d = 0.1;
  const auto sigma = build_sigma(d, Interval(0.0, 0.25), true);
  CHECK(probe_max_slope(sigma) <= 0.999999);
  CHECK(sigma.value(-0.3) == 0.0);
  CHECK(sigma.value(0.26) == d);
  CHECK(sigma.value(5.0) == d);
  const auto falling = build_sigma_on_line(d, 1.0, 1.3, false);
  CHECK(falling.value(0.9) == d);
  CHECK(falling.value(1.4) == 0.0);
  CHECK_THROWS_AS(build_sigma(d, Interval(0.0, 0.19), true), PreconditionError);
}

TEST_CASE("partition of unity") {
  SUBCASE("three-interval cover sums to one") {
    const auto pu = build_partition_of_unity(uniform_cover(3, 0.1));
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    for (int i = 0; i < 500; ++i) {
      double sum = 0.0;
      for (double v : pu.values(u(rng))) {
        CHECK(v >= 0.0);
        sum += v;
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
  const Cover cover = uniform_cover(5, 0.1);
  const auto pu = build_partition_of_unity(cover);
  SUBCASE("a point of J_2 only") {
    const double t = cover.at(1).midpoint();
    const auto v = pu.values(t);
    CHECK(v[1] == 1.0);
    CHECK(v[0] == 0.0);
    CHECK(v[2] == 0.0);
  }
  SUBCASE("overlap centre of a symmetric cover") {
    const double centre = cover.at(1).start() + 0.1;
    CHECK(pu.value(0, centre) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(pu.value(1, centre) == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("zero off the interval") {
    const auto samples = pu.sample(3, 1024);
    for (std::size_t k = 0; k < samples.size(); ++k)
      if (!cover.at(3).contains(kTwoPi * static_cast<double>(k) / 1024.0)) CHECK(samples[k] == 0.0);
  }
  SUBCASE("invalid covers are refused") {
    Cover bad = cover;
    bad.intervals[0] = Interval(bad.intervals[0].start() + 0.05, bad.intervals[0].length() - 0.05);
    CHECK_THROWS_AS(build_partition_of_unity(bad), PreconditionError);
  }
}
