#include "circle_colim/cocycles.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "circle_colim/errors.hpp"

namespace circle_colim {
namespace {

// Forward (sign = -1) or backward DFT of n complex values.
std::vector<Complex> dft(const std::vector<Complex>& in, int sign) {
  const int n = static_cast<int>(in.size());
  std::vector<Complex> out(in.size());
  std::vector<Complex> buf = in;
  fftw_plan plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(buf.data()),
                                    reinterpret_cast<fftw_complex*>(out.data()), sign, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  return out;
}

int signed_frequency(std::size_t j, std::size_t n) {
  return j <= n / 2 ? static_cast<int>(j) : static_cast<int>(j) - static_cast<int>(n);
}

void require_matching(const LieLoop& f, const LieLoop& g) {
  if (!(f.group == g.group)) throw PreconditionError("Lie loops belong to different groups");
  if (f.size() != g.size()) throw PreconditionError("Lie loops are sampled on different grids");
  if (f.size() == 0) throw PreconditionError("empty Lie loop");
}

}  // namespace

ComplexField to_complex(const ExactField& f) {
  ComplexField out;
  for (const auto& [n, c] : f.modes) out.add(n, c.to_complex());
  return out;
}

ExactField to_exact(const ComplexField& f) {
  ExactField out;
  for (const auto& [n, c] : f.modes) out.add(n, GaussianRational::from_complex(c));
  return out;
}

LinearFunctional<GaussianRational> cubic_shift_functional() {
  LinearFunctional<GaussianRational> lambda;
  lambda.values[0] = GaussianRational(Rational(-1, 24));
  return lambda;
}

std::size_t min_quadrature_points(int max_mode) { return 4 * static_cast<std::size_t>(max_mode) + 8; }

Complex virasoro_cocycle_quadrature(const ComplexField& f, const ComplexField& g, std::size_t points) {
  const std::size_t need = min_quadrature_points(std::max(f.max_mode(), g.max_mode()));
  if (points == 0) points = need;
  if (points < need) {
    std::ostringstream os;
    os << "quadrature grid of " << points << " points is below the required " << need;
    throw PreconditionError(os.str());
  }
  Complex sum(0.0, 0.0);
  for (std::size_t k = 0; k < points; ++k) {
    const double t = kTwoPi * static_cast<double>(k) / static_cast<double>(points);
    Complex fp(0.0, 0.0), gpp(0.0, 0.0);
    for (const auto& [n, c] : f.modes) fp -= c * static_cast<double>(n + 1) * std::polar(1.0, n * t);
    for (const auto& [n, c] : g.modes)
      gpp -= c * static_cast<double>(n + 1) * static_cast<double>(n) * std::polar(1.0, (n - 1) * t);
    sum += fp * gpp * std::polar(1.0, t);
  }
  return sum / (12.0 * static_cast<double>(points));
}

std::array<ExtendedField<GaussianRational>, 3> psl2_lift_basis(int n) {
  if (n < 1) throw PreconditionError("psl2 lift: n must be positive");
  const GaussianRational i = GaussianRational::i();
  const long long nn = n;
  ExtendedField<GaussianRational> a{ExactField::basis(0, i), i * GaussianRational(Rational(nn * nn - 1, 24))};
  ExtendedField<GaussianRational> b{ExactField::basis(n) - ExactField::basis(-n), {}};
  ExtendedField<GaussianRational> c{ExactField::basis(n, i) + ExactField::basis(-n, i), {}};
  return {a, b, c};
}

Psl2LiftReport verify_psl2n_lift(int n) {
  const auto basis = psl2_lift_basis(n);
  const GaussianRational i = GaussianRational::i();
  Psl2LiftReport report;
  report.n = n;
  report.lift_central = basis[0].central;
  const long long nn = n;
  report.cocycle_value = GaussianRational(Rational(nn * nn * nn - nn, 12));
  const std::array<std::pair<int, int>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
  const char* names[3] = {"[A,B]", "[A,C]", "[B,C]"};
  report.closed = true;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    Psl2Bracket br;
    br.name = names[p];
    br.value = extended_bracket(basis[static_cast<std::size_t>(pairs[p].first)],
                                basis[static_cast<std::size_t>(pairs[p].second)]);
    const ExactField& x = br.value.field;
    const GaussianRational x0 = x.coefficient(0), xp = x.coefficient(n), xm = x.coefficient(-n);
    const GaussianRational ca = x0 / i;
    const GaussianRational cb = (xp - xm) / GaussianRational(2);
    const GaussianRational cc = (xp + xm) / (GaussianRational(2) * i);
    const ExtendedField<GaussianRational> rebuilt{
        ca * basis[0].field + cb * basis[1].field + cc * basis[2].field,
        ca * basis[0].central + cb * basis[1].central + cc * basis[2].central};
    const bool real = ca.im == 0 && cb.im == 0 && cc.im == 0;
    br.closed = real && rebuilt.field == x && rebuilt.central == br.value.central;
    if (real) br.coordinates = std::array<Rational, 3>{ca.re, cb.re, cc.re};
    report.closed = report.closed && br.closed;
    report.brackets.push_back(std::move(br));
  }
  return report;
}

SectionComparison compare_sl2_sections(int n, int m) {
  if (n == m) throw PreconditionError("compare_sl2_sections: n and m must differ");
  SectionComparison out;
  out.n = n;
  out.m = m;
  out.central_n = psl2_lift_basis(n)[0].central;
  out.central_m = psl2_lift_basis(m)[0].central;
  out.distinct = !(out.central_n == out.central_m);
  return out;
}

// ----------------------------------------------------------------- affine

int LieModes::max_mode() const {
  int m = 0;
  for (const auto& [k, x] : modes) m = std::max(m, std::abs(k));
  return m;
}

LieLoop LieModes::sample(std::size_t n) const {
  std::vector<Matrix> out(n, Matrix::Zero(group.n, group.n));
  for (std::size_t k = 0; k < n; ++k) {
    const double t = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    for (const auto& [m, x] : modes) out[k] += std::polar(1.0, m * t) * x;
  }
  return LieLoop{group, std::move(out)};
}

LieLoop LieModes::sample_derivative(std::size_t n) const {
  std::vector<Matrix> out(n, Matrix::Zero(group.n, group.n));
  for (std::size_t k = 0; k < n; ++k) {
    const double t = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    for (const auto& [m, x] : modes) out[k] += Complex(0.0, m) * std::polar(1.0, m * t) * x;
  }
  return LieLoop{group, std::move(out)};
}

LieModes lie_bracket(const LieModes& f, const LieModes& g) {
  if (!(f.group == g.group)) throw PreconditionError("Lie loops belong to different groups");
  LieModes out{f.group, {}};
  for (const auto& [a, x] : f.modes)
    for (const auto& [b, y] : g.modes) {
      const Matrix c = x * y - y * x;
      auto [it, inserted] = out.modes.try_emplace(a + b, c);
      if (!inserted) it->second += c;
    }
  return out;
}

LieModes to_modes(const LieLoop& f, int max_mode) {
  const std::size_t n = f.size();
  if (n < 2 * static_cast<std::size_t>(max_mode) + 1) throw PreconditionError("to_modes: too few samples");
  const int dim = f.group.n;
  LieModes out{f.group, {}};
  for (int m = -max_mode; m <= max_mode; ++m) out.modes[m] = Matrix::Zero(dim, dim);
  std::vector<Complex> buf(n);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      for (std::size_t k = 0; k < n; ++k) buf[k] = f.values[k](r, c);
      const auto spec = dft(buf, FFTW_FORWARD);
      for (int m = -max_mode; m <= max_mode; ++m) {
        const std::size_t j = m >= 0 ? static_cast<std::size_t>(m) : n - static_cast<std::size_t>(-m);
        out.modes[m](r, c) = spec[j] / static_cast<double>(n);
      }
    }
  return out;
}

LieLoop spectral_derivative(const LieLoop& f) {
  const std::size_t n = f.size();
  const int dim = f.group.n;
  std::vector<Matrix> out(n, Matrix::Zero(dim, dim));
  std::vector<Complex> buf(n);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      for (std::size_t k = 0; k < n; ++k) buf[k] = f.values[k](r, c);
      auto spec = dft(buf, FFTW_FORWARD);
      for (std::size_t j = 0; j < n; ++j) {
        const int m = signed_frequency(j, n);
        spec[j] *= (n % 2 == 0 && j == n / 2) ? Complex(0.0, 0.0) : Complex(0.0, m) / static_cast<double>(n);
      }
      const auto back = dft(spec, FFTW_BACKWARD);
      for (std::size_t k = 0; k < n; ++k) out[k](r, c) = back[k];
    }
  return LieLoop{f.group, std::move(out)};
}

Complex affine_cocycle_modes(const LieModes& f, const LieModes& g) {
  if (!(f.group == g.group)) throw PreconditionError("Lie loops belong to different groups");
  Complex sum(0.0, 0.0);
  for (const auto& [m, x] : f.modes) {
    const auto it = g.modes.find(-m);
    if (it == g.modes.end()) continue;
    sum += -static_cast<double>(m) * basic_inner_product(x, it->second);
  }
  return sum;
}

Complex affine_cocycle_quadrature(const LieLoop& f, const LieLoop& g, const std::optional<LieLoop>& g_derivative) {
  require_matching(f, g);
  const LieLoop dg = g_derivative ? *g_derivative : spectral_derivative(g);
  require_matching(g, dg);
  Complex sum(0.0, 0.0);
  for (std::size_t k = 0; k < f.size(); ++k) sum += basic_inner_product(f.values[k], dg.values[k]);
  return sum / (Complex(0.0, 1.0) * static_cast<double>(f.size()));
}

}  // namespace circle_colim
