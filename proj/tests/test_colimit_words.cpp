#include <doctest.h>

#include <algorithm>
#include <memory>
#include <numbers>
#include <random>

#include "circle_colim/colimit_words.hpp"
#include "circle_colim/errors.hpp"
#include "circle_colim/fixtures.hpp"

using namespace circle_colim;

namespace {

const GroupDescriptor kSU2{2};

Matrix i_sigma_z() {
  Matrix m(2, 2);
  m << Complex(0, 1), 0.0, 0.0, Complex(0, -1);
  return m;
}
Matrix i_sigma_x() {
  Matrix m(2, 2);
  m << 0.0, Complex(0, 1), Complex(0, 1), 0.0;
  return m;
}

Loop bump_loop(std::size_t n, const Interval& arc, const Matrix& x) {
  return Loop::from_function(kSU2, n, [&](double t) -> Matrix {
    const double s = arc.offset(t) / arc.length();
    return exp_algebra(Matrix(profile::bump(s) / profile::bump_peak() * x));
  });
}

struct LoopSetup {
  std::shared_ptr<LoopStore> store = std::make_shared<LoopStore>(kSU2, 256);
  Presentation p{store, uniform_cover(5, 0.1)};
};

bool has_kind(const Derivation& d, StepKind kind) {
  return std::any_of(d.steps.begin(), d.steps.end(), [&](const RewriteStep& s) { return s.kind == kind; });
}

}  // namespace

TEST_CASE("evaluation of words") {
  LoopSetup s;
  std::mt19937_64 rng(41);
  const Loop a = bump_loop(256, Interval(0.2, 1.0), 1.1 * i_sigma_x());
  const Loop b = bump_loop(256, Interval(0.6, 1.0), 0.7 * i_sigma_z());
  const int ga = s.p.add_generator(s.store->add(a), Interval(0.1, 1.2));
  const int gb = s.p.add_generator(s.store->add(b), Interval(0.5, 1.2));
  CHECK(s.p.identity_distance({}) == 0.0);
  const int ab = s.store->store_product({{0, 1}, {1, 1}});
  CHECK(sup_distance(s.store->at(ab), multiply(a, b)) < 1e-15);
  CHECK(s.p.distance({{ga, 1}, {gb, 1}}, {}) == doctest::Approx(sup_distance(multiply(a, b), Loop::identity(kSU2, 256))));
  CHECK(s.p.identity_distance({{ga, 1}, {ga, -1}}) < 1e-15);
  CHECK_THROWS_AS(s.p.add_generator(0, Interval(3.0, 1.0)), PreconditionError);
}

TEST_CASE("γ·γ⁻¹ reduces by free reduction") {
  LoopSetup s;
  const int g = s.p.add_generator(s.store->add(bump_loop(256, Interval(0.2, 1.0), i_sigma_x())), Interval(0.1, 1.2));
  Derivation d;
  d.initial = {{g, 1}, {g, -1}};
  d.steps.push_back({StepKind::free_reduce, 0, 2, {}, std::nullopt, ""});
  d.final = {};
  d.complete = true;
  const auto rep = verify_derivation(s.p, d);
  CHECK(rep.valid);
  CHECK(rep.reaches_empty);
}

TEST_CASE("commutator of disjointly supported generators") {
  LoopSetup s;
  const int a = s.p.add_generator(s.store->add(bump_loop(256, Interval(0.2, 1.0), i_sigma_x())), Interval(0.1, 1.2));
  const int b = s.p.add_generator(s.store->add(bump_loop(256, Interval(3.0, 1.0), i_sigma_z())), Interval(2.9, 1.2));
  Derivation d;
  d.initial = {{a, 1}, {b, 1}, {a, -1}, {b, -1}};
  d.steps.push_back({StepKind::disjoint_commute, 0, 2, {{b, 1}, {a, 1}}, std::nullopt, ""});
  d.steps.push_back({StepKind::free_reduce, 0, 4, {}, std::nullopt, ""});
  d.complete = true;
  const auto rep = verify_derivation(s.p, d);
  CHECK(rep.valid);
  CHECK(rep.reaches_empty);
}

TEST_CASE("unsound steps are rejected") {
  LoopSetup s;
  const int a = s.p.add_generator(s.store->add(bump_loop(256, Interval(0.2, 1.0), i_sigma_x())), Interval(0.1, 1.2));
  const int b = s.p.add_generator(s.store->add(bump_loop(256, Interval(0.6, 1.0), i_sigma_z())), Interval(0.5, 1.2));
  const Word w{{a, 1}, {b, 1}};
  SUBCASE("commuting overlapping supports") {
    CHECK(check_step(s.p, w, {StepKind::disjoint_commute, 0, 2, {{b, 1}, {a, 1}}, std::nullopt, ""}));
  }
  SUBCASE("free reduction that changes the free-group element") {
    CHECK(check_step(s.p, w, {StepKind::free_reduce, 0, 2, {}, std::nullopt, ""}));
  }
  SUBCASE("inclusion into an arc that does not contain the label") {
    const int a_small = s.p.add_generator(0, Interval(0.15, 1.1));
    CHECK_FALSE(check_step(s.p, w, {StepKind::interval_inclusion, 0, 1, {{a_small, 1}}, std::nullopt, ""}));
    const int a_other = s.p.add_generator(0, Interval(0.0, 1.5));
    CHECK_FALSE(check_step(s.p, w, {StepKind::interval_inclusion, 0, 1, {{a_other, 1}}, std::nullopt, ""}));
    CHECK(check_step(s.p, w, {StepKind::interval_inclusion, 0, 1, {{b, 1}}, std::nullopt, ""}));
  }
  SUBCASE("merge with the wrong product") {
    const int ba = s.store->store_product({{1, 1}, {0, 1}});
    const int g = s.p.add_generator(ba, Interval(0.1, 1.7));
    CHECK(check_step(s.p, w, {StepKind::merge_in_interval, 0, 2, {{g, 1}}, Interval(0.1, 1.7), ""}));
    const int ab = s.store->store_product({{0, 1}, {1, 1}});
    const int h = s.p.add_generator(ab, Interval(0.1, 1.7));
    CHECK_FALSE(check_step(s.p, w, {StepKind::merge_in_interval, 0, 2, {{h, 1}}, Interval(0.1, 1.7), ""}));
    CHECK(check_step(s.p, w, {StepKind::merge_in_interval, 0, 2, {{h, 1}}, std::nullopt, ""}));
    CHECK(check_step(s.p, w, {StepKind::merge_in_interval, 0, 2, {{h, 1}}, Interval(0.3, 1.3), ""}));
  }
  SUBCASE("a derivation with a bad step reports it") {
    Derivation d;
    d.initial = w;
    d.steps.push_back({StepKind::disjoint_commute, 0, 2, {{b, 1}, {a, 1}}, std::nullopt, ""});
    const auto rep = verify_derivation(s.p, d);
    CHECK_FALSE(rep.valid);
    REQUIRE(rep.failed_step);
    CHECK(*rep.failed_step == 0);
  }
}

TEST_CASE("permutation lemma as a derivation") {
  const Word w{{0, 1}, {1, 1}, {2, 1}, {3, 1}};
  const auto [conj, d] = permute_with_conjugators(w, {2, 0, 3, 1});
  CHECK(conj.size() == 4);
  REQUIRE(d.steps.size() == 1);
  CHECK(d.steps[0].kind == StepKind::free_reduce);
  CHECK(free_equal(d.final, w));
}

TEST_CASE("diagram commutation") {
  LoopSetup s;
  const double d = 0.1;
  const Interval plus(1.0, std::numbers::pi + 2 * d), minus(1.0 + std::numbers::pi, std::numbers::pi + 2 * d);
  const Loop gamma = multiply(bump_loop(256, Interval(1.0, 0.2), i_sigma_x()),
                              bump_loop(256, Interval(1.0 + std::numbers::pi, 0.2), i_sigma_z()));
  const int e = s.store->add(gamma);
  const auto der = diagram_commutation(s.p, e, plus, minus);
  CHECK(der.complete);
  CHECK(has_kind(der, StepKind::split_support));
  CHECK(has_kind(der, StepKind::merge_in_interval));
  REQUIRE(der.final.size() == 1);
  CHECK(s.p.generator(der.final[0].gen).label == minus);
  CHECK(verify_derivation(s.p, der).valid);
  CHECK_THROWS_AS(diagram_commutation(s.p, e, Interval(0.5, 1.0), Interval(1.0, 1.0)), PreconditionError);
}

TEST_CASE("reduce_relation on loop words") {
  std::mt19937_64 rng(42);
  for (int it = 0; it < 4; ++it) {
    const GroupDescriptor g{2 + it % 2};
    auto store = std::make_shared<LoopStore>(g, 256);
    Presentation p(store, fixtures::random_cover(rng));
    const Loop a = fixtures::random_chart_loop(g, 256, 1.2, rng);
    const Loop b = fixtures::random_chart_loop(g, 256, 1.2, rng);
    const Word w = fixtures::loop_relation(p, a, b, rng);
    CHECK(w.size() == 15);
    const auto der = reduce_relation(p, w);
    INFO(der.diagnostic);
    CHECK(der.complete);
    CHECK(der.final.empty());
    CHECK(has_kind(der, StepKind::split_support));
    CHECK(has_kind(der, StepKind::telescope_merge));
    const auto rep = verify_derivation(p, der);
    CHECK(rep.valid);
    CHECK(rep.reaches_empty);
    CHECK(rep.max_drift < p.tolerances().identity);

    const Word bad = fixtures::corrupt_relation(p, w, rng);
    if (p.identity_distance(bad) > 1e-6) {
      const auto partial = reduce_relation(p, bad);
      CHECK_FALSE(partial.complete);
      CHECK_FALSE(partial.diagnostic.empty());
    }
  }
}

TEST_CASE("reduce_relation on a diffeomorphism word") {
  std::mt19937_64 rng(43);
  auto store = std::make_shared<DiffeoStore>(4096);
  Presentation p(store, fixtures::random_cover(rng));
  const CircleDiffeo a = fixtures::random_diffeo(4096, 0.03, rng);
  const CircleDiffeo b = fixtures::random_diffeo(4096, 0.03, rng);
  const Word w = fixtures::diffeo_relation(p, a, b, rng);
  const auto der = reduce_relation(p, w);
  INFO(der.diagnostic);
  CHECK(der.complete);
  CHECK(has_kind(der, StepKind::conjugation_formula));
  const auto rep = verify_derivation(p, der);
  CHECK(rep.valid);
  CHECK(rep.max_drift < p.tolerances().identity);
  for (const auto& gen : p.generators()) CHECK(gen.left_conjugations + gen.right_conjugations <= 3);
}

TEST_CASE("step kind names round trip") {
  for (StepKind k : {StepKind::free_reduce, StepKind::interval_inclusion, StepKind::merge_in_interval, StepKind::disjoint_commute,
                     StepKind::conjugation_formula, StepKind::split_support, StepKind::telescope_merge})
    CHECK(parse_step_kind(step_kind_name(k)) == k);
  CHECK_THROWS_AS(parse_step_kind("teleport"), PreconditionError);
}
