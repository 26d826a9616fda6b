#include <doctest.h>

#include <random>

#include "circle_colim/errors.hpp"
#include "circle_colim/van_kampen.hpp"

using namespace circle_colim;

namespace {

bool is_rotation_of(const Word& a, const Word& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t r = 0; r < a.size(); ++r) {
    bool same = true;
    for (std::size_t i = 0; i < a.size() && same; ++i) same = a[i] == b[(i + r) % b.size()];
    if (same) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("finite oracles") {
  const CyclicOracle z5(5);
  CHECK(z5.multiply(z5.element(3), z5.element(4)) == z5.element(2));
  CHECK(z5.is_identity(z5.multiply(z5.element(2), z5.inverse(z5.element(2)))));
  const SymmetricOracle s3(3);
  const GroupOracle::Element a{1, 0, 2}, b{0, 2, 1};
  CHECK(s3.multiply(a, b) == GroupOracle::Element{1, 2, 0});
  CHECK(s3.deviation(a) == 2.0);
  CHECK(make_oracle("z7")->name() == "Z/7");
  CHECK(make_oracle("s4")->name() == "S4");
  CHECK(make_oracle("su2")->name() == "SU(2)");
  CHECK_THROWS_AS(make_oracle("q8"), PreconditionError);
}

TEST_CASE("single triangle gives g·h·(gh)⁻¹") {
  const CyclicOracle z7(7);
  const auto g = z7.element(2), h = z7.element(3);
  const auto disk = make_disk(z7, {z7.identity(), g, z7.multiply(g, h)}, {{0, 1, 2}}, {0, 1, 2});
  CHECK(disk.edges[0].label == g);
  CHECK(disk.edges[1].label == h);
  const auto rep = vk_verify(disk, z7);
  CHECK(rep.valid);
  REQUIRE(rep.derivation.steps.size() == 1);
  CHECK(rep.derivation.steps[0].move == "last-face");
  CHECK(free_equal(rep.derivation.steps[0].relator, disk.boundary_word()));
}

TEST_CASE("square in Z/5") {
  const CyclicOracle z5(5);
  const auto disk = make_disk(z5, {z5.element(0), z5.element(1), z5.element(2), z5.element(1)}, {{0, 1, 2}, {0, 2, 3}},
                              {0, 1, 2, 3});
  const auto rep = vk_verify(disk, z5);
  INFO(rep.message);
  CHECK(rep.valid);
  CHECK(rep.derivation.steps.size() == 2);
  for (const auto& s : rep.derivation.steps) CHECK(s.relator.size() == 3);
}

TEST_CASE("subdivided boundary edge") {
  // Vertex j carries g_j = h_1⋯h_j; the fan from the base vertex relates
  // consecutive partial products.
  const SymmetricOracle s4(4);
  const std::vector<GroupOracle::Element> h{{1, 0, 2, 3}, {0, 2, 1, 3}, {0, 1, 3, 2}};
  std::vector<GroupOracle::Element> v{s4.identity()};
  for (const auto& x : h) v.push_back(s4.multiply(v.back(), x));
  const auto disk = make_disk(s4, v, {{0, 1, 2}, {0, 2, 3}}, {0, 1, 2, 3}, {false, false, false, true});
  const auto rep = vk_verify(disk, s4);
  INFO(rep.message);
  REQUIRE(rep.valid);
  // g_1 h_2 = g_2 and g_2 h_3 = g_3 appear as relators.
  for (int j : {1, 2}) {
    const Word expected{disk.letter(0, j), disk.letter(j, j + 1), disk.letter(j + 1, 0)};
    bool found = false;
    for (const auto& s : rep.derivation.steps) found = found || is_rotation_of(s.relator, expected);
    CHECK(found);
  }
}

TEST_CASE("random disks over finite and SU(2) oracles") {
  std::mt19937_64 rng(51);
  for (const char* spec : {"z5", "z11", "s3", "s5", "su2"}) {
    const auto oracle = make_oracle(spec);
    for (int i = 0; i < 4; ++i) {
      const auto disk = random_grid_disk(*oracle, 2 + i % 2, 3, rng);
      CHECK(disk_structure_problems(disk).empty());
      const auto rep = vk_verify(disk, *oracle);
      INFO(spec << ": " << rep.message);
      CHECK(rep.valid);
      CHECK(rep.derivation.steps.size() == disk.faces.size());
      const auto bad = mutate_edge_label(disk, *oracle, rng);
      CHECK_FALSE(vk_verify(bad, *oracle).valid);
    }
  }
}

TEST_CASE("tampered derivations and malformed disks") {
  std::mt19937_64 rng(52);
  const CyclicOracle z7(7);
  const auto disk = random_grid_disk(z7, 2, 2, rng);
  auto der = vk_derive(disk);
  REQUIRE(der.steps.size() >= 2);
  std::swap(der.steps[0].relator, der.steps[1].relator);
  CHECK_FALSE(check_vk_derivation(disk, z7, der).valid);

  auto broken = disk;
  broken.faces.pop_back();
  CHECK_FALSE(disk_structure_problems(broken).empty());
  CHECK_FALSE(vk_verify(broken, z7).valid);
  CHECK_THROWS_AS(vk_derive(broken), PreconditionError);
}
