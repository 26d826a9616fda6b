#pragma once

#include <array>
#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "circle_colim/loops.hpp"
#include "circle_colim/rational.hpp"
#include "circle_colim/su_n.hpp"

namespace circle_colim {

template <class S>
S ratio(long long num, long long den);
template <>
inline Complex ratio<Complex>(long long num, long long den) {
  return Complex(static_cast<double>(num) / static_cast<double>(den), 0.0);
}
template <>
inline GaussianRational ratio<GaussianRational>(long long num, long long den) {
  return GaussianRational(Rational(num, den));
}

inline bool is_zero(const Complex& z) { return z == Complex(0.0, 0.0); }
inline bool is_zero(const GaussianRational& z) { return z.is_zero(); }

/// Σ c_n ℓ_n with ℓ_n = -z^{n+1} ∂/∂z. Zero coefficients are not stored.
template <class S>
struct VectorField {
  std::map<int, S> modes;

  static VectorField basis(int n, S c = ratio<S>(1, 1)) {
    VectorField f;
    f.add(n, c);
    return f;
  }

  void add(int n, const S& c) {
    auto [it, inserted] = modes.try_emplace(n, c);
    if (!inserted) it->second += c;
    if (is_zero(it->second)) modes.erase(it);
  }
  S coefficient(int n) const {
    const auto it = modes.find(n);
    return it == modes.end() ? S{} : it->second;
  }
  int max_mode() const {
    int m = 0;
    for (const auto& [n, c] : modes) m = std::max(m, std::abs(n));
    return m;
  }

  friend VectorField operator+(VectorField a, const VectorField& b) {
    for (const auto& [n, c] : b.modes) a.add(n, c);
    return a;
  }
  friend VectorField operator-(VectorField a, const VectorField& b) {
    for (const auto& [n, c] : b.modes) a.add(n, -c);
    return a;
  }
  friend VectorField operator*(const S& s, const VectorField& a) {
    VectorField out;
    for (const auto& [n, c] : a.modes) out.add(n, s * c);
    return out;
  }
  friend bool operator==(const VectorField& a, const VectorField& b) { return a.modes == b.modes; }
};

using ExactField = VectorField<GaussianRational>;
using ComplexField = VectorField<Complex>;

ComplexField to_complex(const ExactField& f);
ExactField to_exact(const ComplexField& f);

/// [ℓ_m, ℓ_n] = (m - n) ℓ_{m+n}.
template <class S>
VectorField<S> witt_bracket(const VectorField<S>& f, const VectorField<S>& g) {
  VectorField<S> out;
  for (const auto& [m, a] : f.modes)
    for (const auto& [n, b] : g.modes) out.add(m + n, ratio<S>(m - n, 1) * a * b);
  return out;
}

/// Σ_m c_m d_{-m} (m³ - m)/12.
template <class S>
S virasoro_cocycle_modes(const VectorField<S>& f, const VectorField<S>& g) {
  S sum{};
  for (const auto& [m, a] : f.modes) {
    const auto it = g.modes.find(-m);
    if (it == g.modes.end()) continue;
    const long long mm = m;
    sum += ratio<S>(mm * mm * mm - mm, 12) * a * it->second;
  }
  return sum;
}

/// Σ_m c_m d_{-m} m³/12, the cohomologous cubic form.
template <class S>
S cubic_cocycle_modes(const VectorField<S>& f, const VectorField<S>& g) {
  S sum{};
  for (const auto& [m, a] : f.modes) {
    const auto it = g.modes.find(-m);
    if (it == g.modes.end()) continue;
    const long long mm = m;
    sum += ratio<S>(mm * mm * mm, 12) * a * it->second;
  }
  return sum;
}

/// λ(ℓ_n) for finitely many n.
template <class S>
struct LinearFunctional {
  std::map<int, S> values;

  S operator()(const VectorField<S>& f) const {
    S sum{};
    for (const auto& [n, c] : f.modes) {
      const auto it = values.find(n);
      if (it != values.end()) sum += it->second * c;
    }
    return sum;
  }
};

/// (f, g) ↦ λ([f, g]).
template <class S>
S coboundary(const LinearFunctional<S>& lambda, const VectorField<S>& f, const VectorField<S>& g) {
  return lambda(witt_bracket(f, g));
}

/// λ(ℓ_0) = -1/24, zero elsewhere: virasoro - cubic = coboundary of this λ.
LinearFunctional<GaussianRational> cubic_shift_functional();

/// Smallest trapezoid grid the quadrature accepts for fields with modes up
/// to max_mode: 4·max_mode + 8.
std::size_t min_quadrature_points(int max_mode);

/// (1/12)·(1/2πi)∮ F'(z) G''(z) dz over the counterclockwise unit circle,
/// F = -Σ c_n z^{n+1}, by the trapezoid rule on `points` nodes (0 picks the
/// minimum). Throws PreconditionError when points is below the minimum.
Complex virasoro_cocycle_quadrature(const ComplexField& f, const ComplexField& g, std::size_t points = 0);

/// Vector field together with a central component.
template <class S>
struct ExtendedField {
  VectorField<S> field;
  S central{};
};

/// [(f, a), (g, b)] = ([f, g], ω(f, g)) with ω the Virasoro cocycle.
template <class S>
ExtendedField<S> extended_bracket(const ExtendedField<S>& x, const ExtendedField<S>& y) {
  return {witt_bracket(x.field, y.field), virasoro_cocycle_modes(x.field, y.field)};
}

/// The lifted sl(2) copy at level n: A = (iℓ_0, a), B = (ℓ_n - ℓ_{-n}, 0),
/// C = (iℓ_n + iℓ_{-n}, 0) with a = i(n² - 1)/24.
struct Psl2Bracket {
  std::string name;  // "[A,B]", "[A,C]", "[B,C]"
  ExtendedField<GaussianRational> value;
  /// Real coordinates in the basis A, B, C when the field part lies in the span.
  std::optional<std::array<Rational, 3>> coordinates;
  bool closed = false;
};

struct Psl2LiftReport {
  int n = 0;
  GaussianRational lift_central;  // a
  /// ω(ℓ_n, ℓ_{-n}) = (n³ - n)/12.
  GaussianRational cocycle_value;
  std::vector<Psl2Bracket> brackets;
  bool closed = false;
};

std::array<ExtendedField<GaussianRational>, 3> psl2_lift_basis(int n);
Psl2LiftReport verify_psl2n_lift(int n);

struct SectionComparison {
  int n = 0;
  int m = 0;
  GaussianRational central_n;
  GaussianRational central_m;
  bool distinct = false;
};

/// Central components attached to iℓ_0 by the n- and m-lifts. Throws
/// PreconditionError when n == m.
SectionComparison compare_sl2_sections(int n, int m);

// ----------------------------------------------------------------- affine

/// Σ X_m z^m, z = e^{it}, with X_m in the complexified su(n).
struct LieModes {
  GroupDescriptor group;
  std::map<int, Matrix> modes;

  int max_mode() const;
  /// Samples at t_k = 2πk/n.
  LieLoop sample(std::size_t n) const;
  /// Exact derivative d/dt at the same nodes.
  LieLoop sample_derivative(std::size_t n) const;
};

/// Pointwise bracket [f, g] in mode form.
LieModes lie_bracket(const LieModes& f, const LieModes& g);
/// Modes |m| <= max_mode of sampled values, by FFT.
LieModes to_modes(const LieLoop& f, int max_mode);

/// Σ_m (-m)⟨X_m, Y_{-m}⟩, the residue of ⟨f, dg⟩ at z = 0.
Complex affine_cocycle_modes(const LieModes& f, const LieModes& g);

/// (1/2πi)∫⟨f(t), g'(t)⟩ dt by the trapezoid rule. g' is taken from
/// `g_derivative` when given, otherwise from the spectral derivative of g.
Complex affine_cocycle_quadrature(const LieLoop& f, const LieLoop& g,
                                  const std::optional<LieLoop>& g_derivative = std::nullopt);

/// Spectral derivative d/dt of sampled values (FFT, Nyquist mode dropped).
LieLoop spectral_derivative(const LieLoop& f);

}  // namespace circle_colim
