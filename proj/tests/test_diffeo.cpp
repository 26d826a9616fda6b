#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "circle_colim/diffeo.hpp"
#include "circle_colim/errors.hpp"
#include "circle_colim/fixtures.hpp"

using namespace circle_colim;

namespace {

// Bump of height `amp` centred in `arc`, vanishing outside it.
CircleDiffeo bump_diffeo(std::size_t n, const Interval& arc, double amp) {
  return CircleDiffeo::from_lift(n, [&](double t) {
    const double s = arc.offset(t) / arc.length();
    return t + amp * arc.length() / profile::bump_peak() / 6.0 * profile::bump(s);
  });
}

}  // namespace

TEST_CASE("monotone interpolation") {
  const CircleDiffeo phi = CircleDiffeo::from_lift(4096, [](double t) { return t + 0.05 * std::sin(3 * t); });
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double t = 0.0063 * i;
    worst = std::max(worst, std::abs(phi(t) - (t + 0.05 * std::sin(3 * t))));
  }
  CHECK(worst < 1e-12);
  CHECK(phi(kTwoPi + 1.0) == doctest::Approx(phi(1.0) + kTwoPi).epsilon(1e-15));
  CHECK(phi.derivative(0.0) == doctest::Approx(1.15).epsilon(1e-9));
}

TEST_CASE("composition") {
  const std::size_t n = 4096;
  const auto psi = CircleDiffeo::from_lift(n, [](double t) { return t + 0.05 * std::sin(3 * t); });
  CHECK(sup_distance(compose(CircleDiffeo::identity(n), psi), psi) < 1e-14);
  const auto ab = compose(CircleDiffeo::rotation(n, 0.3), CircleDiffeo::rotation(n, 0.4));
  CHECK(sup_distance(ab, CircleDiffeo::rotation(n, 0.7)) < 1e-14);
  CHECK(sup_distance(compose(psi, invert(psi)), CircleDiffeo::identity(n)) < 1e-9);
  const std::vector<CircleDiffeo> three{CircleDiffeo::rotation(n, 0.1), psi, CircleDiffeo::rotation(n, -0.1)};
  CHECK(sup_distance(compose_all(three), compose(three[0], compose(psi, three[2]))) < 1e-13);
}

TEST_CASE("inversion") {
  const std::size_t n = 4096;
  CHECK(sup_distance(invert(CircleDiffeo::identity(n)), CircleDiffeo::identity(n)) == 0.0);
  CHECK(sup_distance(invert(CircleDiffeo::rotation(n, 0.4)), CircleDiffeo::rotation(n, -0.4)) < 1e-14);
  const auto phi = CircleDiffeo::from_lift(n, [](double t) { return t + 0.05 * std::sin(3 * t); });
  const auto inv = invert(phi);
  CHECK(inverse_residual(phi, inv) < 1e-10);
  // Roots of t + 0.05 sin 3t = y from mpmath.
  CHECK(phi.preimage(1.0) == doctest::Approx(0.99171616477968418895).epsilon(1e-12));
  CHECK(phi.preimage(4.0) == doctest::Approx(4.0237560859635909093).epsilon(1e-12));
}

TEST_CASE("displacement and support") {
  const std::size_t n = 2048;
  CHECK(displacement(CircleDiffeo::identity(n)) == 0.0);
  CHECK(support(CircleDiffeo::identity(n), 1e-12).empty());
  const auto rot = CircleDiffeo::rotation(n, 0.3);
  CHECK(displacement(rot) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(support(rot, 1e-12).whole_circle);
  CHECK_THROWS_AS(proper_support(rot, 1e-12), PreconditionError);
  const Interval arc(5.5, 1.4);
  const auto phi = bump_diffeo(n, arc, 0.5);
  const auto cert = support(phi, 1e-12);
  REQUIRE(cert.interval);
  CHECK(cert.within(arc, phi.step()));
}

TEST_CASE("split_line") {
  const double d = 0.1;
  const auto sigma = build_sigma_on_line(d, 1.0, 1.5, true);
  SUBCASE("identity splits into identities") {
    const auto s = split_line(LineDiffeo::identity(0.0, 3.0, 4097), d, sigma);
    CHECK(displacement(s.minus) == 0.0);
    CHECK(displacement(s.plus) == 0.0);
  }
  SUBCASE("support right of the transition goes to the plus factor") {
    const auto phi = LineDiffeo::from_function(0.0, 3.0, 4097, [](double x) {
      return x + (x > 1.8 && x < 2.8 ? 0.06 * profile::bump(x - 1.8) / profile::bump_peak() : 0.0);
    });
    const auto s = split_line(phi, d, sigma);
    CHECK(displacement(s.minus) == 0.0);
    CHECK(sup_distance(s.plus, phi) == 0.0);
  }
  SUBCASE("bump of height 0.08 straddling the transition") {
    const auto phi = LineDiffeo::from_function(0.0, 3.0, 4097, [](double x) {
      return x + 0.08 * profile::bump((x - 0.5) / 2.0) / profile::bump_peak();
    });
    const auto s = split_line(phi, d, sigma);
    CHECK(sup_distance(compose(s.minus, s.plus), phi) < 1e-8);
    const auto sp = support(s.plus, 1e-12);
    const auto sm = support(s.minus, 1e-12);
    REQUIRE(sp);
    REQUIRE(sm);
    CHECK(sp->first >= sigma.start() - phi.step());
    CHECK(sm->second <= sigma.start() + sigma.length() + phi.step());
    CHECK(displacement(s.plus) < d);
    CHECK(displacement(s.minus) < d);
  }
  SUBCASE("displacement at the bound is refused") {
    const auto phi = LineDiffeo::from_function(0.0, 3.0, 4097, [](double x) {
      return x + 0.12 * profile::bump(x / 3.0) / profile::bump_peak();
    });
    CHECK_THROWS_AS(split_line(phi, d, sigma), PreconditionError);
  }
}

TEST_CASE("split_circle") {
  const double d = 0.1;
  const std::size_t n = 4096;
  const Interval plus(1.0, std::numbers::pi + 2 * d), minus(1.0 + std::numbers::pi, std::numbers::pi + 2 * d);
  SUBCASE("identity") {
    const auto s = split_circle(CircleDiffeo::identity(n), minus, plus, d);
    CHECK(displacement(s.minus) == 0.0);
    CHECK(displacement(s.plus) == 0.0);
  }
  SUBCASE("support inside I+ minus I-") {
    const auto phi = bump_diffeo(n, Interval(1.5, 2.0), 0.3);
    const auto s = split_circle(phi, minus, plus, d);
    CHECK(displacement(s.minus) == 0.0);
    CHECK(sup_distance(s.plus, phi) == 0.0);
  }
  SUBCASE("generic displacement 0.05") {
    std::mt19937_64 rng(11);
    const auto phi = fixtures::random_diffeo(n, 0.05, rng);
    const auto s = split_circle(phi, minus, plus, d);
    CHECK(sup_distance(compose(s.minus, s.plus), phi) < 1e-8);
    CHECK(support(s.plus, 1e-12).within(plus, phi.step()));
    CHECK(support(s.minus, 1e-12).within(minus, phi.step()));
    CHECK(displacement(s.plus) < d);
    CHECK(displacement(s.minus) < d);
  }
  SUBCASE("cover shape violations") {
    CHECK_THROWS_AS(split_circle(CircleDiffeo::identity(n), Interval(4.0, 3.0), plus, d), PreconditionError);
  }
}

TEST_CASE("factor_over_cover") {
  const std::size_t n = 4096;
  const Cover cover = uniform_cover(5, 0.1, 0.3);
  SUBCASE("identity") {
    for (const auto& f : factor_over_cover(CircleDiffeo::identity(n), cover)) CHECK(displacement(f) == 0.0);
  }
  SUBCASE("support inside one interval") {
    const Interval inner(cover.at(2).start() + 0.3, cover.at(2).length() - 0.6);
    const auto phi = bump_diffeo(n, inner, 0.3);
    const auto f = factor_over_cover(phi, cover);
    REQUIRE(f.size() == 5);
    for (std::size_t j = 0; j < 5; ++j) {
      if (j == 2)
        CHECK(sup_distance(f[j], phi) < 1e-12);
      else
        CHECK(displacement(f[j]) < 1e-12);
    }
  }
  SUBCASE("t + 0.04 sin t") {
    const auto phi = CircleDiffeo::from_lift(n, [](double t) { return t + 0.04 * std::sin(t); });
    const auto f = factor_over_cover(phi, cover);
    CHECK(sup_distance(compose_all(f), phi) < 1e-8);
    for (std::size_t j = 0; j < f.size(); ++j) {
      CHECK(support(f[j], 1e-12).within(cover.at(j), phi.step()));
      CHECK(displacement(f[j]) < cover.d);
    }
  }
  SUBCASE("based cover keeps the base point fixed") {
    const Cover based = uniform_based_cover(5, 0.1, 0.0);
    const auto phi = bump_diffeo(n, Interval(0.5, 5.0), 0.06);
    const auto f = factor_over_cover(phi, based);
    CHECK(sup_distance(compose_all(f), phi) < 1e-8);
    for (const auto& g : f) CHECK(fixes_point(g, 0.0, 1e-9));
  }
}

TEST_CASE("factor_lift") {
  const std::size_t n = 4096;
  SUBCASE("rotation by π into 32 pieces") {
    const auto f = factor_lift(CircleDiffeo::rotation(n, std::numbers::pi), 32, 0.1);
    REQUIRE(f.size() == 32);
    for (const auto& g : f) CHECK(sup_distance(g, CircleDiffeo::rotation(n, std::numbers::pi / 32)) < 1e-14);
  }
  SUBCASE("identity") {
    for (const auto& g : factor_lift(CircleDiffeo::identity(n), 7, 0.1)) CHECK(displacement(g) == 0.0);
  }
  SUBCASE("displacement 0.7 into 16 pieces") {
    std::mt19937_64 rng(5);
    const auto phi = fixtures::random_diffeo(n, 0.7, rng);
    const auto f = factor_lift(phi, 16, 0.1);
    // Exactly 0.7/16 for the continuous lifts; resampling through the
    // interpolant moves it by ~1e-8.
    for (const auto& g : f) CHECK(std::abs(displacement(g) - 0.04375) < 1e-7);
    CHECK(displacement(phi) == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(sup_distance(compose_all(f), phi) < 1e-8);
  }
  SUBCASE("too few pieces") {
    CHECK_THROWS_AS(factor_lift(CircleDiffeo::rotation(n, 1.0), 5, 0.1), PreconditionError);
  }
}
