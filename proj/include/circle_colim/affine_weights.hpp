#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "circle_colim/rational.hpp"

namespace circle_colim {

using IntMatrix = std::vector<std::vector<int>>;
using RationalMatrix = std::vector<std::vector<Rational>>;

/// Generalized Cartan matrix a_ij = ⟨α_i^∨, α_j⟩. Affine diagrams put the
/// extra node first (index 0).
struct DynkinDiagram {
  std::string name;
  IntMatrix cartan;
  bool affine = false;

  std::size_t size() const { return cartan.size(); }
};

/// Checks integrality, diagonal 2, non-positive off-diagonal entries and
/// a_ij = 0 ⇔ a_ji = 0. Throws PreconditionError otherwise.
void validate_cartan(const IntMatrix& a);

/// Finite type X_r, X one of A..G.
DynkinDiagram finite_diagram(char series, int rank);
/// Untwisted affine diagram X̃_r: the finite diagram with node 0 = -θ.
DynkinDiagram affine_diagram(char series, int rank);
/// Ã_1..Ã_8, B̃_3..B̃_8, C̃_2..C̃_8, D̃_4..D̃_8, Ẽ_6..Ẽ_8, F̃_4, G̃_2.
std::vector<DynkinDiagram> builtin_affine_diagrams();

struct Rank2Pair {
  std::size_t i = 0;
  std::size_t j = 0;
  /// "A1xA1", "A2", "B2", "G2" or "affine".
  std::string type;
  bool finite = false;
};

struct Rank2Report {
  std::vector<Rank2Pair> pairs;
  bool pass = false;
};

/// Classifies every two-node induced subdiagram by a_ij·a_ji.
Rank2Report rank2_subdiagram_check(const DynkinDiagram& d);

/// Root data of a finite simple Lie algebra.
class RootSystem {
 public:
  explicit RootSystem(DynkinDiagram finite);

  const DynkinDiagram& diagram() const { return diagram_; }
  std::size_t rank() const { return diagram_.size(); }
  /// |α_i|², long roots normalized to 2.
  const std::vector<Rational>& root_lengths() const { return lengths_; }
  /// Positive roots in simple-root coordinates, sorted by height.
  const std::vector<std::vector<int>>& positive_roots() const { return positive_; }
  /// Highest root θ in simple-root coordinates.
  const std::vector<int>& highest_root() const { return positive_.back(); }
  /// θ^∨ in simple-coroot coordinates (the comarks a_i^∨, i >= 1).
  const std::vector<int>& comarks() const { return comarks_; }
  /// (ω_i, ω_j) in the normalized form.
  const RationalMatrix& weight_form() const { return weight_form_; }

  /// Simple-root vector α_i in fundamental-weight coordinates.
  std::vector<int> simple_root_weight(std::size_t i) const;
  /// θ in fundamental-weight coordinates.
  std::vector<int> highest_root_weight() const;
  /// Image of the coroot α_i^∨ under the normalized form, in
  /// fundamental-weight coordinates.
  std::vector<int> coroot_weight(std::size_t i) const;

  Rational inner(const std::vector<int>& a, const std::vector<int>& b) const;
  Rational norm2(const std::vector<int>& a) const { return inner(a, a); }
  /// ⟨λ, θ^∨⟩.
  int level_of(const std::vector<int>& weight) const;

 private:
  DynkinDiagram diagram_;
  std::vector<Rational> lengths_;
  std::vector<std::vector<int>> positive_;
  std::vector<int> comarks_;
  RationalMatrix weight_form_;
};

/// Lie type from "su3", "SU(3)", "A2", "so5", "B2", "sp4", "C2", "g2", ...
DynkinDiagram parse_lie_type(const std::string& text);

/// Dominant integral λ (fundamental-weight coordinates) with ⟨λ, θ^∨⟩ <= k,
/// in lexicographic order.
std::vector<std::vector<int>> enumerate_level_k_highest_weights(const RootSystem& roots, int k);

/// (energy, λ) ∈ ℤ × Λ_G at a fixed level.
struct AffineWeight {
  long long energy = 0;
  std::vector<int> finite;

  friend auto operator<=>(const AffineWeight&, const AffineWeight&) = default;
};

inline const std::vector<int>& project_pi(const AffineWeight& w) { return w.finite; }

/// Generators of the affine Weyl group acting at level k.
class AffineWeylAction {
 public:
  AffineWeylAction(const RootSystem& roots, int k);

  int level() const { return k_; }
  /// s_0 for node 0, s_i for the finite simple node i >= 1.
  AffineWeight reflect(std::size_t node, const AffineWeight& w) const;
  /// Translation by the coroot image β: λ ↦ λ + kβ,
  /// energy ↦ energy + (λ, β) + k|β|²/2.
  AffineWeight translate(const std::vector<int>& beta, const AffineWeight& w) const;
  /// energy - |λ|²/(2k), preserved by every generator.
  Rational invariant(const AffineWeight& w) const;
  /// Coxeter exponent m_ij of nodes i, j (0 when infinite).
  int coxeter_exponent(std::size_t i, std::size_t j) const;
  std::size_t nodes() const { return roots_.rank() + 1; }

 private:
  const RootSystem& roots_;
  int k_;
  std::vector<int> theta_;
  IntMatrix affine_;
};

struct OrbitReport {
  std::set<AffineWeight> orbit;
  /// max over A_k of |λ|²/(2k).
  Rational paraboloid_constant;
  /// Every orbit point with energy >= 0 satisfies energy >= |λ|²/(2k) - C.
  bool inside_paraboloid = true;
};

/// Orbit of w under all reflections and ± simple-coroot translations, up to
/// `depth` generator applications. Requires k >= 1.
OrbitReport affine_weyl_orbit(const RootSystem& roots, const AffineWeight& w, int k, int depth);

/// max over λ in A_k of |λ|²/(2k).
Rational paraboloid_constant(const RootSystem& roots, int k);

}  // namespace circle_colim
