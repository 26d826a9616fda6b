#include <doctest.h>

#include <random>

#include "circle_colim/cocycles.hpp"
#include "circle_colim/diffeo.hpp"
#include "circle_colim/fixtures.hpp"
#include "circle_colim/loops.hpp"
#include "circle_colim/parallel.hpp"

using namespace circle_colim;

// Per-sample kernels touch disjoint output, so both policies must agree
// bit for bit.
TEST_CASE("serial and parallel kernels agree exactly") {
  set_max_threads(4);
  std::mt19937_64 rng(71);
  const std::size_t n = 4096;
  const CircleDiffeo phi = fixtures::random_diffeo(n, 0.08, rng);
  const CircleDiffeo psi = fixtures::random_diffeo(n, 0.05, rng);
  CHECK(sup_distance(compose(phi, psi, Exec::serial), compose(phi, psi, Exec::parallel)) == 0.0);
  CHECK(sup_distance(invert(phi, Exec::serial), invert(phi, Exec::parallel)) == 0.0);

  const Cover cover = uniform_cover(5, 0.1, 0.2);
  const auto fs = factor_over_cover(phi, cover, Exec::serial);
  const auto fp = factor_over_cover(phi, cover, Exec::parallel);
  REQUIRE(fs.size() == fp.size());
  for (std::size_t j = 0; j < fs.size(); ++j) CHECK(sup_distance(fs[j], fp[j]) == 0.0);

  const auto ls = factor_lift(phi, 4, 0.1, Exec::serial);
  const auto lp = factor_lift(phi, 4, 0.1, Exec::parallel);
  for (std::size_t j = 0; j < ls.size(); ++j) CHECK(sup_distance(ls[j], lp[j]) == 0.0);

  const Loop gamma = fixtures::random_chart_loop(GroupDescriptor{3}, 512, 2.5, rng);
  const auto gs = factor_over_cover(gamma, cover, Exec::serial);
  const auto gp = factor_over_cover(gamma, cover, Exec::parallel);
  for (std::size_t j = 0; j < gs.size(); ++j) CHECK(sup_distance(gs[j], gp[j]) == 0.0);
  const LieLoop xs = log_chart(gamma, Exec::serial), xp = log_chart(gamma, Exec::parallel);
  for (std::size_t k = 0; k < xs.size(); ++k) CHECK(max_abs_diff(xs.values[k], xp.values[k]) == 0.0);
  CHECK(sup_distance(multiply(gamma, gamma, Exec::serial), multiply(gamma, gamma, Exec::parallel)) == 0.0);

  const auto pu = build_partition_of_unity(cover);
  CHECK(pu.sample(2, 1024, Exec::serial) == pu.sample(2, 1024, Exec::parallel));
  set_max_threads(0);
}
