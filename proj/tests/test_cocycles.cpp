#include <doctest.h>

#include <cmath>
#include <random>

#include "circle_colim/cocycles.hpp"
#include "circle_colim/errors.hpp"
#include "circle_colim/fixtures.hpp"

using namespace circle_colim;

namespace {

ExactField l(int n) { return ExactField::basis(n); }
ComplexField lc(int n) { return ComplexField::basis(n); }
GaussianRational q(long long a, long long b = 1) { return GaussianRational(Rational(a, b)); }

}  // namespace

TEST_CASE("Witt bracket") {
  CHECK(witt_bracket(l(1), l(-1)) == ExactField::basis(0, q(2)));
  for (int n : {-3, 2, 5}) CHECK(witt_bracket(l(0), l(n)) == ExactField::basis(n, q(-n)));
  const ExactField f = l(2) + ExactField::basis(-1, q(1, 3));
  CHECK(witt_bracket(f, f).modes.empty());
}

TEST_CASE("Virasoro cocycle, mode form") {
  CHECK(virasoro_cocycle_modes(l(2), l(-2)) == q(1, 2));
  CHECK(virasoro_cocycle_modes(l(3), l(-3)) == q(2));
  CHECK(virasoro_cocycle_modes(l(1), l(-1)) == q(0));
  CHECK(virasoro_cocycle_modes(l(2), l(3)) == q(0));
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b) CHECK(virasoro_cocycle_modes(l(a), l(b)).is_zero());
}

TEST_CASE("Virasoro cocycle, quadrature") {
  CHECK(virasoro_cocycle_quadrature(lc(2), lc(-2)).real() == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(virasoro_cocycle_quadrature(lc(3), lc(-3)).real() == doctest::Approx(2.0).epsilon(1e-13));
  // Contour integral evaluated with mpmath.
  ComplexField f = lc(2) + ComplexField::basis(-1, 0.5) + ComplexField::basis(3, 2.0);
  ComplexField g = lc(-2) + ComplexField::basis(1, 3.0) + ComplexField::basis(-3, -0.25);
  const Complex v = virasoro_cocycle_quadrature(f, g);
  CHECK(v.real() == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(std::abs(v.imag()) < 1e-13);
  CHECK(std::abs(virasoro_cocycle_quadrature(f, f)) < 1e-12);
  CHECK_THROWS_AS(virasoro_cocycle_quadrature(lc(8), lc(-8), 16), PreconditionError);

  std::mt19937_64 rng(21);
  for (int i = 0; i < 50; ++i) {
    const ComplexField a = fixtures::random_field(16, rng), b = fixtures::random_field(16, rng);
    CHECK(std::abs(virasoro_cocycle_quadrature(a, b) - virasoro_cocycle_modes(a, b)) < 1e-10);
  }
}

TEST_CASE("cocycle identity on random triples") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 100; ++i) {
    const ComplexField a = fixtures::random_field(8, rng), b = fixtures::random_field(8, rng),
                       c = fixtures::random_field(8, rng);
    const Complex r = virasoro_cocycle_modes(witt_bracket(a, b), c) + virasoro_cocycle_modes(witt_bracket(b, c), a) +
                      virasoro_cocycle_modes(witt_bracket(c, a), b);
    CHECK(std::abs(r) < 1e-10);
    CHECK(std::abs(virasoro_cocycle_modes(a, b) + virasoro_cocycle_modes(b, a)) < 1e-12);
  }
}

TEST_CASE("coboundary") {
  const auto lambda = cubic_shift_functional();
  for (int m = -32; m <= 32; ++m) {
    CHECK(coboundary(lambda, l(m), l(-m)) == q(-m, 12));
    CHECK(virasoro_cocycle_modes(l(m), l(-m)) - cubic_cocycle_modes(l(m), l(-m)) == coboundary(lambda, l(m), l(-m)));
  }
  const LinearFunctional<GaussianRational> zero;
  CHECK(coboundary(zero, l(3), l(-3)).is_zero());
  const ExactField f = l(4) + ExactField::basis(0, q(2, 7));
  CHECK(coboundary(lambda, f, f).is_zero());
}

TEST_CASE("lifted sl(2) copies") {
  for (int n = 1; n <= 6; ++n) {
    const auto rep = verify_psl2n_lift(n);
    CHECK(rep.closed);
    CHECK(rep.cocycle_value == q(static_cast<long long>(n) * n * n - n, 12));
    CHECK(rep.lift_central == GaussianRational(0, Rational(n * n - 1, 24)));
  }
  const auto c12 = compare_sl2_sections(1, 2);
  CHECK(c12.central_n == GaussianRational(0, 0));
  CHECK(c12.central_m == GaussianRational(0, Rational(1, 8)));
  CHECK(c12.distinct);
  const auto c23 = compare_sl2_sections(2, 3);
  CHECK(c23.central_m == GaussianRational(0, Rational(1, 3)));
  CHECK(c23.distinct);
  CHECK_THROWS_AS(compare_sl2_sections(2, 2), PreconditionError);
}

TEST_CASE("affine cocycle") {
  const GroupDescriptor su2{2};
  Matrix x(2, 2);
  x << Complex(0, 1), 0.0, 0.0, Complex(0, -1);
  for (int m : {1, 3}) {
    LieModes f{su2, {{m, x}}}, g{su2, {{-m, x}}};
    // Trapezoid quadrature of ⟨f, g'⟩/(2πi), done with numpy.
    CHECK(std::abs(affine_cocycle_modes(f, g) - Complex(-2.0 * m, 0.0)) < 1e-13);
    CHECK(std::abs(affine_cocycle_quadrature(f.sample(64), g.sample(64)) - Complex(-2.0 * m, 0.0)) < 1e-12);
  }
  SUBCASE("constant fields") {
    LieModes c{su2, {{0, x}}};
    CHECK(std::abs(affine_cocycle_modes(c, c)) == 0.0);
    CHECK(std::abs(affine_cocycle_quadrature(c.sample(32), c.sample(32))) < 1e-14);
  }
  SUBCASE("random fields: both paths, antisymmetry, cocycle identity") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 20; ++i) {
      const LieModes a = fixtures::random_lie_modes(GroupDescriptor{3}, 6, rng);
      const LieModes b = fixtures::random_lie_modes(GroupDescriptor{3}, 6, rng);
      const LieModes c = fixtures::random_lie_modes(GroupDescriptor{3}, 6, rng);
      const Complex modes = affine_cocycle_modes(a, b);
      CHECK(std::abs(affine_cocycle_quadrature(a.sample(64), b.sample(64)) - modes) < 1e-10);
      CHECK(std::abs(affine_cocycle_quadrature(a.sample(64), b.sample(64), b.sample_derivative(64)) - modes) < 1e-10);
      CHECK(std::abs(modes + affine_cocycle_modes(b, a)) < 1e-10);
      const Complex r = affine_cocycle_modes(lie_bracket(a, b), c) + affine_cocycle_modes(lie_bracket(b, c), a) +
                        affine_cocycle_modes(lie_bracket(c, a), b);
      CHECK(std::abs(r) < 1e-10);
      const LieModes back = to_modes(a.sample(64), 6);
      for (const auto& [m, xm] : a.modes) CHECK(max_abs_diff(back.modes.at(m), xm) < 1e-13);
    }
  }
}
