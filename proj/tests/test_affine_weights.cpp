#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "circle_colim/affine_weights.hpp"
#include "circle_colim/errors.hpp"

using namespace circle_colim;

namespace {

long long binomial(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

int count_pairs(const Rank2Report& rep, const std::string& type) {
  return static_cast<int>(std::count_if(rep.pairs.begin(), rep.pairs.end(), [&](const Rank2Pair& p) { return p.type == type; }));
}

}  // namespace

TEST_CASE("Cartan matrices") {
  CHECK_NOTHROW(validate_cartan(finite_diagram('G', 2).cartan));
  CHECK_THROWS_AS(validate_cartan({{2, -1}, {0, 2}}), PreconditionError);
  CHECK_THROWS_AS(validate_cartan({{2, 1}, {1, 2}}), PreconditionError);
  CHECK(affine_diagram('A', 1).cartan == IntMatrix{{2, -2}, {-2, 2}});
  CHECK(builtin_affine_diagrams().size() == 8 + 6 + 7 + 5 + 3 + 2);
}

TEST_CASE("rank-2 subdiagrams") {
  CHECK_FALSE(rank2_subdiagram_check(affine_diagram('A', 1)).pass);
  const auto a2 = rank2_subdiagram_check(affine_diagram('A', 2));
  CHECK(a2.pass);
  CHECK(count_pairs(a2, "A2") == 3);
  const auto g2 = rank2_subdiagram_check(affine_diagram('G', 2));
  CHECK(g2.pass);
  CHECK(count_pairs(g2, "G2") == 1);
  for (const auto& d : builtin_affine_diagrams())
    if (d.size() > 2) CHECK(rank2_subdiagram_check(d).pass);
}

TEST_CASE("root systems") {
  const RootSystem a2(finite_diagram('A', 2));
  CHECK(a2.positive_roots().size() == 3);
  CHECK(a2.highest_root() == std::vector<int>{1, 1});
  const RootSystem g2(finite_diagram('G', 2));
  CHECK(g2.positive_roots().size() == 6);
  const RootSystem e8(finite_diagram('E', 8));
  CHECK(e8.positive_roots().size() == 120);
  CHECK(std::accumulate(e8.comarks().begin(), e8.comarks().end(), 0) + 1 == 30);
  CHECK(parse_lie_type("SU(3)").cartan == finite_diagram('A', 2).cartan);
  CHECK(parse_lie_type("so5").cartan == finite_diagram('B', 2).cartan);
  CHECK_THROWS_AS(parse_lie_type("xyz"), PreconditionError);
}

TEST_CASE("level-k highest weights") {
  const RootSystem su2(finite_diagram('A', 1));
  const auto w = enumerate_level_k_highest_weights(su2, 2);
  CHECK(w == std::vector<std::vector<int>>{{0}, {1}, {2}});
  CHECK(enumerate_level_k_highest_weights(RootSystem(finite_diagram('A', 2)), 1).size() == 3);
  for (char s : {'A', 'B', 'C', 'G'}) {
    const RootSystem r(finite_diagram(s, s == 'A' ? 3 : 2));
    CHECK(enumerate_level_k_highest_weights(r, 0) == std::vector<std::vector<int>>{std::vector<int>(r.rank(), 0)});
  }
  // Every comark of su(n) is 1, so |A_k| counts compositions.
  for (int rank = 1; rank <= 4; ++rank) {
    const RootSystem r(finite_diagram('A', rank));
    for (int k = 0; k <= 6; ++k)
      CHECK(static_cast<long long>(enumerate_level_k_highest_weights(r, k).size()) == binomial(k + rank, rank));
  }
  // Integrable representation counts of known WZW models.
  CHECK(enumerate_level_k_highest_weights(RootSystem(finite_diagram('G', 2)), 1).size() == 2);
  CHECK(enumerate_level_k_highest_weights(RootSystem(finite_diagram('G', 2)), 2).size() == 4);
  CHECK(enumerate_level_k_highest_weights(RootSystem(finite_diagram('B', 2)), 1).size() == 3);
  CHECK(enumerate_level_k_highest_weights(RootSystem(finite_diagram('E', 8)), 1).size() == 1);
  CHECK(enumerate_level_k_highest_weights(RootSystem(finite_diagram('E', 8)), 2).size() == 3);
}

TEST_CASE("affine Weyl action") {
  const RootSystem su2(finite_diagram('A', 1));
  const AffineWeylAction act(su2, 1);
  const AffineWeight start{0, {0}};
  for (std::size_t node = 0; node < act.nodes(); ++node) {
    const AffineWeight once = act.reflect(node, AffineWeight{3, {1}});
    CHECK(act.reflect(node, once) == AffineWeight{3, {1}});
    CHECK(act.invariant(once) == act.invariant(AffineWeight{3, {1}}));
  }
  const AffineWeight moved = act.translate(su2.coroot_weight(0), start);
  CHECK(moved == AffineWeight{1, {2}});
  CHECK(project_pi(moved) == std::vector<int>{2});
  CHECK(project_pi(AffineWeight{3, {1}}) == std::vector<int>{1});
  CHECK(project_pi(AffineWeight{0, {0}}) == std::vector<int>{0});
  // n translations by α^∨ raise the energy by n².
  AffineWeight w = start;
  for (long long n = 1; n <= 4; ++n) {
    w = act.translate(su2.coroot_weight(0), w);
    CHECK(w.energy == n * n);
  }
  CHECK(act.coxeter_exponent(0, 1) == 0);
  CHECK(AffineWeylAction(RootSystem(finite_diagram('A', 2)), 1).coxeter_exponent(0, 1) == 3);

  const auto orbit = affine_weyl_orbit(su2, start, 1, 3);
  CHECK(orbit.orbit.count(start) == 1);
  CHECK(orbit.inside_paraboloid);
  for (const auto& v : orbit.orbit) CHECK(act.invariant(v) == act.invariant(start));
  CHECK(affine_weyl_orbit(su2, start, 1, 1).orbit.count(start) == 1);
  CHECK(paraboloid_constant(su2, 2) == Rational(1, 2));
}
