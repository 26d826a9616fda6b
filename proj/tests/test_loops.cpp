#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "circle_colim/errors.hpp"
#include "circle_colim/fixtures.hpp"
#include "circle_colim/loops.hpp"

using namespace circle_colim;

namespace {

const GroupDescriptor kSU2{2};

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}
Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}
const Complex I(0.0, 1.0);

// exp(amp·bump·iσ_z) on `arc`, identity elsewhere.
Loop bump_loop(std::size_t n, const Interval& arc, double amp) {
  return Loop::from_function(kSU2, n, [&](double t) -> Matrix {
    const double s = arc.offset(t) / arc.length();
    return exp_algebra(Matrix(amp * profile::bump(s) / profile::bump_peak() * I * pauli_z()));
  });
}

}  // namespace

TEST_CASE("su(n) exp and log") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  auto gauss = [&] { return g(rng); };
  for (int n : {2, 3, 4}) {
    const Matrix u = random_special_unitary(n, gauss);
    CHECK(is_special_unitary(u));
    Matrix x = random_algebra(n, gauss);
    x *= 1.5 / algebra_spectrum(x).radius();
    CHECK(max_abs_diff(log_group(exp_algebra(x)), x) < 1e-12);
  }
  CHECK(basic_inner_product(Matrix(I * pauli_z()), Matrix(I * pauli_z())) == Complex(2.0, 0.0));
  CHECK(parse_group("SU(3)").n == 3);
  CHECK(parse_group("su2").n == 2);
  CHECK_THROWS_AS(parse_group("so3"), PreconditionError);
  CHECK_THROWS_AS(log_group(Matrix(-Matrix::Identity(2, 2))), PreconditionError);
}

TEST_CASE("pointwise group operations") {
  std::mt19937_64 rng(2);
  const Loop gamma = fixtures::random_chart_loop(kSU2, 256, 2.0, rng);
  const Loop delta = fixtures::random_chart_loop(kSU2, 256, 2.0, rng);
  const Loop e = Loop::identity(kSU2, 256);
  CHECK(sup_distance(multiply(gamma, invert(gamma)), e) < 1e-14);
  CHECK(sup_distance(multiply(e, delta), delta) == 0.0);
  const std::vector<Loop> three{gamma, delta, gamma};
  CHECK(sup_distance(product(three), multiply(multiply(gamma, delta), gamma)) < 1e-14);
  CHECK_THROWS_AS(Loop(kSU2, std::vector<Matrix>(100, Matrix::Identity(2, 2))), PreconditionError);
}

TEST_CASE("disjointly supported loops commute") {
  const Loop a = bump_loop(512, Interval(0.5, 1.0), 1.0);
  const Loop b = bump_loop(512, Interval(3.0, 1.5), 2.0);
  CHECK(max_commutator(a, b) < 1e-15);
  const auto cert = support(multiply(a, b), 1e-12);
  REQUIRE(cert.interval);
  CHECK(cert.within(Interval(0.5, 4.0), kTwoPi / 512));
  CHECK(support(Loop::identity(kSU2, 64), 1e-12).empty());
}

TEST_CASE("log_chart") {
  const std::size_t n = 256;
  const LieLoop zero = log_chart(Loop::identity(kSU2, n));
  for (const auto& x : zero.values) CHECK(x.cwiseAbs().maxCoeff() == 0.0);

  const Matrix h = I * pauli_x();
  const Loop gamma = Loop::from_function(kSU2, n, [&](double t) { return exp_algebra(Matrix(0.3 * std::sin(t) * h)); });
  const LieLoop x = log_chart(gamma);
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, max_abs_diff(x.values[k], Matrix(0.3 * std::sin(gamma.grid(k)) * h)));
  CHECK(worst < 1e-10);
  CHECK(sup_distance(exp_loop(x), gamma) < 1e-13);

  const Loop through_minus_one = Loop::from_function(kSU2, n, [&](double t) {
    return exp_algebra(Matrix(std::numbers::pi * 0.5 * (1.0 + std::cos(t)) * I * pauli_z()));
  });
  CHECK_THROWS_AS(log_chart(through_minus_one), PreconditionError);
  CHECK_FALSE(in_chart(through_minus_one));
}

TEST_CASE("factor_over_cover for loops") {
  const std::size_t n = 1024;
  const Cover cover = uniform_cover(3, 0.1);
  SUBCASE("identity") {
    for (const auto& f : factor_over_cover(Loop::identity(kSU2, n), cover))
      CHECK(sup_distance(f, Loop::identity(kSU2, n)) == 0.0);
  }
  SUBCASE("support where only φ_2 is one") {
    const Interval inner(cover.at(1).start() + 0.3, cover.at(1).length() - 0.6);
    const Loop gamma = bump_loop(n, inner, 1.2);
    const auto f = factor_over_cover(gamma, cover);
    CHECK(sup_distance(f[1], gamma) < 1e-14);
    CHECK(sup_distance(f[0], Loop::identity(kSU2, n)) < 1e-15);
    CHECK(sup_distance(f[2], Loop::identity(kSU2, n)) < 1e-15);
  }
  SUBCASE("exp(0.5 sin t iσ_z)") {
    const Loop gamma = Loop::from_function(kSU2, n, [](double t) { return exp_algebra(Matrix(0.5 * std::sin(t) * I * pauli_z())); });
    const auto f = factor_over_cover(gamma, cover);
    CHECK(sup_distance(product(f), gamma) < 1e-10);
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = i + 1; j < f.size(); ++j) CHECK(max_commutator(f[i], f[j]) < 1e-12);
  }
  SUBCASE("SU(3) random chart loop") {
    std::mt19937_64 rng(8);
    const Loop gamma = fixtures::random_chart_loop(GroupDescriptor{3}, n, 2.5, rng);
    const auto f = factor_over_cover(gamma, uniform_cover(5, 0.1, 0.4));
    CHECK(sup_distance(product(f), gamma) < 1e-10);
    for (std::size_t j = 0; j < f.size(); ++j) CHECK(support(f[j], 1e-12).within(uniform_cover(5, 0.1, 0.4).at(j), gamma.step()));
  }
}

TEST_CASE("factor_small") {
  const std::size_t n = 256;
  SUBCASE("m = 1 returns the loop") {
    std::mt19937_64 rng(4);
    const Loop gamma = fixtures::random_chart_loop(kSU2, n, 1.0, rng);
    const auto f = factor_small(gamma, 1);
    REQUIRE(f.size() == 1);
    CHECK(sup_distance(f[0], gamma) < 1e-13);
  }
  SUBCASE("constant loop at exp(X)") {
    const Matrix x = 2.9 * I * pauli_x();
    const auto f = factor_small(Loop::constant(kSU2, n, exp_algebra(x)), 8);
    REQUIRE(f.size() == 8);
    const Loop expected = Loop::constant(kSU2, n, exp_algebra(Matrix(x / 8.0)));
    for (const auto& g : f) CHECK(sup_distance(g, expected) < 1e-12);
  }
  SUBCASE("logarithm winding around a great circle") {
    const Loop gamma = Loop::from_function(kSU2, n, [](double t) {
      return exp_algebra(Matrix(3.0 * (std::cos(t) * I * pauli_z() + std::sin(t) * I * pauli_x())));
    });
    const auto f = factor_small(gamma, 16);
    REQUIRE(f.size() == 16);
    for (const auto& g : f) CHECK(in_chart(g));
    CHECK(sup_distance(product(f), gamma) < 1e-9);
  }
}

TEST_CASE("based_check") {
  CHECK(based_check(Loop::identity(kSU2, 256), 0.0));
  const Loop rot = Loop::from_function(kSU2, 256, [](double t) { return exp_algebra(Matrix((0.5 + 0.1 * std::cos(t)) * I * pauli_z())); });
  CHECK_FALSE(based_check(rot, 0.0));
  CHECK(based_check(bump_loop(256, Interval(1.0, 2.0), 1.0), 0.0));
}
