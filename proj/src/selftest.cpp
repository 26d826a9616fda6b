#include "circle_colim/selftest.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "circle_colim/affine_weights.hpp"
#include "circle_colim/cocycles.hpp"
#include "circle_colim/colimit_words.hpp"
#include "circle_colim/diffeo.hpp"
#include "circle_colim/errors.hpp"
#include "circle_colim/fixtures.hpp"
#include "circle_colim/free_group.hpp"
#include "circle_colim/loops.hpp"
#include "circle_colim/van_kampen.hpp"

namespace circle_colim {
namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

struct Outcome {
  bool pass;
  std::string detail;
};

// 1. Diffeomorphism factorization over a five-interval cover.
Outcome diffeo_factorization(std::mt19937_64& rng) {
  constexpr std::size_t n = 4096;
  constexpr double d = 0.1;
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0, worst_disp = 0.0;
  int bad_support = 0;
  for (int it = 0; it < 1000; ++it) {
    const Cover cover = fixtures::random_cover(rng, 5, d);
    if (!validate_cover(cover).valid) return {false, "random cover failed validation"};
    const double disp = std::uniform_real_distribution<double>(0.01, 0.095)(rng);
    const CircleDiffeo phi = fixtures::random_diffeo(n, disp, rng);
    const auto factors = factor_over_cover(phi, cover);
    worst = std::max(worst, sup_distance(compose_all(factors), phi));
    for (std::size_t j = 0; j < factors.size(); ++j) {
      worst_disp = std::max(worst_disp, displacement(factors[j]));
      if (!support(factors[j], 1e-12).within(cover.at(j), phi.step())) ++bad_support;
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst < 1e-8 && bad_support == 0 && worst_disp < d && secs < 30.0,
          "recon " + fmt(worst) + " < 1e-8, bad supports " + std::to_string(bad_support) + ", max factor displacement " +
              fmt(worst_disp) + " < 0.1, " + std::to_string(secs).substr(0, 5) + " s < 30 s"};
}

// 2. Split contract on the line and the circle.
Outcome split_contract(std::mt19937_64& rng) {
  constexpr double d = 0.1;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_product = 0.0;
  int bad_support = 0, bad_disp = 0;
  for (int it = 0; it < 500; ++it) {
    const double amp = 0.095 * u(rng), phase = 6.0 * u(rng);
    const int k = 1 + it % 3;
    const double lo = 0.0, hi = 3.0;
    const auto f = [&](double x) {
      const double s = (x - lo) / (hi - lo);
      return x + amp * std::pow(std::sin(std::numbers::pi * s), 2) * std::sin(2.0 * std::numbers::pi * k * s + phase);
    };
    LineDiffeo phi = LineDiffeo::from_function(lo, hi, 4097, f);
    if (displacement(phi) >= d) continue;
    const double a = 0.8 + u(rng);
    const SigmaFunction sigma = build_sigma_on_line(d, a, a + 0.4 + 0.4 * u(rng), true);
    const auto split = split_line(phi, d, sigma);
    worst_product = std::max(worst_product, sup_distance(compose(split.minus, split.plus), phi));
    const auto sp = support(split.plus, 1e-12);
    const auto sm = support(split.minus, 1e-12);
    const double slack = phi.step();
    if (sp && sp->first < sigma.start() - slack) ++bad_support;
    if (sm && sm->second > sigma.start() + sigma.length() + slack) ++bad_support;
    const double bound = displacement(phi) + 1e-12;
    if (displacement(split.plus) > bound || displacement(split.minus) > bound) ++bad_disp;
  }
  for (int it = 0; it < 500; ++it) {
    const double s = kTwoPi * u(rng);
    const Interval plus(s, std::numbers::pi + 2.0 * d), minus(s + std::numbers::pi, std::numbers::pi + 2.0 * d);
    const CircleDiffeo phi = fixtures::random_diffeo(4096, 0.095 * (0.1 + 0.9 * u(rng)), rng);
    const auto split = split_circle(phi, minus, plus, d);
    worst_product = std::max(worst_product, sup_distance(compose(split.minus, split.plus), phi));
    if (!support(split.plus, 1e-12).within(plus, phi.step())) ++bad_support;
    if (!support(split.minus, 1e-12).within(minus, phi.step())) ++bad_support;
    const double bound = displacement(phi) + 1e-12;
    if (displacement(split.plus) > bound || displacement(split.minus) > bound) ++bad_disp;
  }
  const auto line_id = split_line(LineDiffeo::identity(0.0, 3.0, 1025), d, build_sigma_on_line(d, 1.0, 1.5, true));
  const auto circle_id = split_circle(CircleDiffeo::identity(1024), Interval(1.0 + std::numbers::pi, std::numbers::pi + 2 * d), Interval(1.0, std::numbers::pi + 2 * d), d);
  const bool identity_exact = displacement(line_id.plus) == 0.0 && displacement(line_id.minus) == 0.0 &&
                              displacement(circle_id.plus) == 0.0 && displacement(circle_id.minus) == 0.0;
  return {worst_product < 1e-8 && bad_support == 0 && bad_disp == 0 && identity_exact,
          "product " + fmt(worst_product) + " < 1e-8, bad supports " + std::to_string(bad_support) +
              ", displacement violations " + std::to_string(bad_disp) + ", identity exact " + (identity_exact ? "yes" : "no")};
}

// 3. Loop factorization by the partition of unity.
Outcome loop_factorization(std::mt19937_64& rng) {
  double worst = 0.0, worst_comm = 0.0;
  int bad_support = 0;
  for (int it = 0; it < 500; ++it) {
    const GroupDescriptor group{it % 2 == 0 ? 2 : 3};
    const Cover cover = fixtures::random_cover(rng);
    const Loop gamma = fixtures::random_chart_loop(group, 1024, 2.5, rng);
    const auto factors = factor_over_cover(gamma, cover);
    worst = std::max(worst, sup_distance(product(factors), gamma));
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (!support(factors[i], 1e-12).within(cover.at(i), gamma.step())) ++bad_support;
      for (std::size_t j = i + 1; j < factors.size(); ++j) worst_comm = std::max(worst_comm, max_commutator(factors[i], factors[j]));
    }
  }
  return {worst < 1e-10 && worst_comm < 1e-12 && bad_support == 0,
          "recon " + fmt(worst) + " < 1e-10, commutators " + fmt(worst_comm) + " < 1e-12, bad supports " + std::to_string(bad_support)};
}

// 4. Virasoro cocycle.
Outcome virasoro(std::mt19937_64& rng) {
  double worst_quad = 0.0;
  for (int m = -16; m <= 16; ++m)
    for (int n = -16; n <= 16; ++n) {
      const auto f = ComplexField::basis(m), g = ComplexField::basis(n);
      worst_quad = std::max(worst_quad, std::abs(virasoro_cocycle_modes(f, g) - virasoro_cocycle_quadrature(f, g)));
    }
  const auto w2 = virasoro_cocycle_modes(ExactField::basis(2), ExactField::basis(-2));
  const auto w3 = virasoro_cocycle_modes(ExactField::basis(3), ExactField::basis(-3));
  const bool exact_values = w2 == GaussianRational(Rational(1, 2)) && w3 == GaussianRational(2);
  double worst_identity = 0.0;
  for (int it = 0; it < 1000; ++it) {
    const auto f = fixtures::random_field(6, rng), g = fixtures::random_field(6, rng), h = fixtures::random_field(6, rng);
    const Complex r = virasoro_cocycle_modes(witt_bracket(f, g), h) + virasoro_cocycle_modes(witt_bracket(g, h), f) +
                      virasoro_cocycle_modes(witt_bracket(h, f), g);
    worst_identity = std::max(worst_identity, std::abs(r));
  }
  bool sl2_vanishes = true;
  std::uniform_int_distribution<int> coeff(-9, 9);
  for (int it = 0; it < 200; ++it) {
    ExactField f, g;
    for (int m = -1; m <= 1; ++m) {
      f.add(m, GaussianRational(Rational(coeff(rng), 1 + std::abs(coeff(rng))), Rational(coeff(rng))));
      g.add(m, GaussianRational(Rational(coeff(rng)), Rational(coeff(rng), 1 + std::abs(coeff(rng)))));
    }
    sl2_vanishes = sl2_vanishes && virasoro_cocycle_modes(f, g).is_zero();
  }
  return {worst_quad < 1e-10 && exact_values && worst_identity < 1e-10 && sl2_vanishes,
          "modes vs quadrature " + fmt(worst_quad) + " < 1e-10, w(l2,l-2)=" + w2.str() + " w(l3,l-3)=" + w3.str() +
              ", cocycle identity " + fmt(worst_identity) + " < 1e-10, sl2 vanishing " + (sl2_vanishes ? "exact" : "fails")};
}

// 5. Coboundary between the two normalizations.
Outcome coboundary_check() {
  const auto lambda = cubic_shift_functional();
  int failures = 0;
  for (int m = -32; m <= 32; ++m)
    for (int n = -32; n <= 32; ++n) {
      const auto f = ExactField::basis(m), g = ExactField::basis(n);
      if (!(virasoro_cocycle_modes(f, g) - cubic_cocycle_modes(f, g) == coboundary(lambda, f, g))) ++failures;
    }
  return {failures == 0, "exact mismatches over |m|,|n| <= 32: " + std::to_string(failures)};
}

// 6. Affine cocycle.
Outcome affine(std::mt19937_64& rng) {
  double worst_quad = 0.0, worst_anti = 0.0, worst_identity = 0.0, worst_disjoint = 0.0;
  for (int it = 0; it < 200; ++it) {
    const GroupDescriptor group{it % 2 == 0 ? 2 : 3};
    const auto f = fixtures::random_lie_modes(group, 5, rng), g = fixtures::random_lie_modes(group, 5, rng),
               h = fixtures::random_lie_modes(group, 5, rng);
    const Complex modes = affine_cocycle_modes(f, g);
    const std::size_t n = 64;
    worst_quad = std::max(worst_quad, std::abs(modes - affine_cocycle_quadrature(f.sample(n), g.sample(n))));
    worst_quad = std::max(worst_quad, std::abs(modes - affine_cocycle_quadrature(f.sample(n), g.sample(n), g.sample_derivative(n))));
    worst_anti = std::max(worst_anti, std::abs(modes + affine_cocycle_modes(g, f)));
    const Complex r = affine_cocycle_modes(lie_bracket(f, g), h) + affine_cocycle_modes(lie_bracket(g, h), f) +
                      affine_cocycle_modes(lie_bracket(h, f), g);
    worst_identity = std::max(worst_identity, std::abs(r));
  }
  std::normal_distribution<double> gauss;
  const auto gs = [&] { return gauss(rng); };
  for (int it = 0; it < 50; ++it) {
    const GroupDescriptor group{2 + it % 2};
    const Matrix x = random_algebra(group.n, gs), y = random_algebra(group.n, gs);
    const double a = std::uniform_real_distribution<double>(0.0, kTwoPi)(rng);
    const auto bump_at = [&](double start, double t, bool deriv) {
      const double s = wrap_angle(t - start) / 2.0;
      return deriv ? profile::bump_derivative(s) / 2.0 : profile::bump(s);
    };
    const std::size_t n = 1024;
    LieLoop f{group, {}}, g{group, {}}, dg{group, {}};
    for (std::size_t k = 0; k < n; ++k) {
      const double t = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
      f.values.push_back(bump_at(a, t, false) * x);
      g.values.push_back(bump_at(a + 3.0, t, false) * y);
      dg.values.push_back(bump_at(a + 3.0, t, true) * y);
    }
    worst_disjoint = std::max(worst_disjoint, std::abs(affine_cocycle_quadrature(f, g, dg)));
  }
  return {worst_quad < 1e-10 && worst_disjoint < 1e-12 && worst_anti < 1e-10 && worst_identity < 1e-10,
          "modes vs quadrature " + fmt(worst_quad) + " < 1e-10, disjoint supports " + fmt(worst_disjoint) +
              " < 1e-12, antisymmetry " + fmt(worst_anti) + ", cocycle identity " + fmt(worst_identity)};
}

// 7. Lifts of PSL(2,R)^(n).
Outcome psl2_lifts() {
  int open = 0, equal_sections = 0;
  std::string centrals;
  for (int n = 1; n <= 6; ++n) {
    const auto report = verify_psl2n_lift(n);
    if (!report.closed) ++open;
    centrals += (n > 1 ? " " : "") + report.lift_central.str();
  }
  for (int n = 1; n <= 6; ++n)
    for (int m = n + 1; m <= 6; ++m)
      if (!compare_sl2_sections(n, m).distinct) ++equal_sections;
  return {open == 0 && equal_sections == 0, "lifts not closing " + std::to_string(open) + ", coinciding sections " +
                                                std::to_string(equal_sections) + ", central parts " + centrals};
}

// 8. Permutation lemma in the free group.
Outcome free_group_lemma(std::mt19937_64& rng) {
  int failures = 0;
  for (int it = 0; it < 500; ++it) {
    const int n = 1 + it % 8;
    Word word;
    std::vector<int> gens(static_cast<std::size_t>(n));
    std::iota(gens.begin(), gens.end(), 0);
    std::shuffle(gens.begin(), gens.end(), rng);
    for (int g : gens) word.push_back({g, 1});
    std::vector<std::size_t> sigma(static_cast<std::size_t>(n));
    std::iota(sigma.begin(), sigma.end(), std::size_t{0});
    std::shuffle(sigma.begin(), sigma.end(), rng);
    const auto conj = permutation_conjugators(word, sigma);
    bool ok = free_equal(word, permuted_expansion(word, sigma, conj));
    for (const Word& w : conj)
      for (int g : gens) ok = ok && std::count_if(w.begin(), w.end(), [&](const Letter& l) { return l.gen == g; }) <= 1;
    if (!ok) ++failures;
  }
  return {failures == 0, "failures over 500 random permutations (n <= 8): " + std::to_string(failures)};
}

// 9. van Kampen disks over finite groups.
Outcome van_kampen(std::mt19937_64& rng) {
  int valid = 0, rejected = 0;
  std::array<int, 8> patterns{};
  for (int it = 0; it < 50; ++it) {
    const auto oracle = make_oracle(it % 2 == 0 ? "z" + std::to_string(5 + it % 7) : "s" + std::to_string(3 + it % 3));
    const auto disk = random_grid_disk(*oracle, 1 + it % 4, 1 + (it / 4) % 4, rng);
    const auto report = vk_verify(disk, *oracle);
    if (report.valid) ++valid;
    for (std::size_t k = 0; k < 8; ++k) patterns[k] += report.pattern_counts[k];
    if (!vk_verify(mutate_edge_label(disk, *oracle, rng), *oracle).valid) ++rejected;
  }
  const bool all_patterns = std::all_of(patterns.begin(), patterns.end(), [](int c) { return c > 0; });
  return {valid == 50 && rejected == 50, "verified " + std::to_string(valid) + "/50, mutations rejected " +
                                             std::to_string(rejected) + "/50, all eight orientation patterns seen " +
                                             (all_patterns ? "yes" : "no")};
}

// 10. End-to-end colimit reduction.
Outcome colimit_reduction(std::mt19937_64& rng) {
  int reduced = 0, spurious = 0, identity_words = 0, other_words = 0;
  double drift = 0.0;
  const auto run = [&](Presentation& p, const Word& w) {
    ++identity_words;
    const Derivation d = reduce_relation(p, w);
    const VerifyReport v = verify_derivation(p, d);
    drift = std::max(drift, v.max_drift);
    if (d.complete && v.valid && v.reaches_empty) ++reduced;
    for (int attempt = 0; attempt < 10; ++attempt) {
      const Word bad = fixtures::corrupt_relation(p, w, rng);
      if (p.identity_distance(bad) < 1e-6) continue;
      ++other_words;
      const Derivation db = reduce_relation(p, bad);
      if (db.complete || db.final.empty() || verify_derivation(p, db).reaches_empty) ++spurious;
      break;
    }
  };
  for (int it = 0; it < 70; ++it) {
    const GroupDescriptor group{it % 2 == 0 ? 2 : 3};
    Presentation p(std::make_shared<LoopStore>(group, 256), fixtures::random_cover(rng));
    Loop a = fixtures::random_chart_loop(group, 256, 1.2, rng), b = fixtures::random_chart_loop(group, 256, 1.2, rng);
    while (!in_chart(multiply(a, b))) b = fixtures::random_chart_loop(group, 256, 1.2, rng);
    run(p, fixtures::loop_relation(p, a, b, rng));
  }
  for (int it = 0; it < 30; ++it) {
    Presentation p(std::make_shared<DiffeoStore>(4096), fixtures::random_cover(rng));
    run(p, fixtures::diffeo_relation(p, fixtures::random_diffeo(4096, 0.03, rng), fixtures::random_diffeo(4096, 0.03, rng), rng));
  }
  return {reduced == identity_words && identity_words == 100 && other_words == 100 && spurious == 0,
          "identity words reduced " + std::to_string(reduced) + "/" + std::to_string(identity_words) + " (max drift " +
              fmt(drift) + "), non-identity words reduced " + std::to_string(spurious) + "/" + std::to_string(other_words)};
}

// 11. Weight combinatorics and rank-2 subdiagrams.
Outcome weights() {
  // Brute-force oracle: comarks of su(2) and su(3) are all 1.
  const auto brute = [](int rank, int k) {
    int count = 0;
    if (rank == 1) {
      for (int a = 0; a <= k; ++a) ++count;
    } else {
      for (int a = 0; a <= k; ++a)
        for (int b = 0; b <= k; ++b) count += a + b <= k;
    }
    return count;
  };
  const RootSystem su2(parse_lie_type("su2")), su3(parse_lie_type("su3"));
  int mismatches = 0;
  for (int k = 0; k <= 10; ++k) {
    const auto n2 = static_cast<int>(enumerate_level_k_highest_weights(su2, k).size());
    const auto n3 = static_cast<int>(enumerate_level_k_highest_weights(su3, k).size());
    if (n2 != brute(1, k) || n2 != k + 1) ++mismatches;
    if (n3 != brute(2, k) || n3 != (k + 1) * (k + 2) / 2) ++mismatches;
  }
  std::string failing;
  bool rank2_ok = true;
  for (const auto& d : builtin_affine_diagrams()) {
    const bool pass = rank2_subdiagram_check(d).pass;
    const bool expected = d.name != "A1~";
    if (!pass) failing += (failing.empty() ? "" : ",") + d.name;
    rank2_ok = rank2_ok && pass == expected;
  }
  return {mismatches == 0 && rank2_ok,
          "|A_k| mismatches " + std::to_string(mismatches) + ", rank-2 check fails exactly for {" + failing + "}"};
}

const char* criterion_name(int id) {
  static const char* names[] = {"diffeo factorization", "split contract",    "loop factorization",
                                "Virasoro cocycle",     "coboundary",        "affine cocycle",
                                "PSL(2,R)^(n) lifts",   "free-group lemma",  "van Kampen checker",
                                "colimit reduction",    "weight combinatorics"};
  return names[id - 1];
}

}  // namespace

CriterionResult run_criterion(int id, const SelftestOptions& options) {
  if (id < 1 || id > kCriterionCount) throw PreconditionError("criterion id must be 1..11");
  std::mt19937_64 rng(options.seed * 1000003ULL + static_cast<std::uint64_t>(id));
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome{false, ""};
  try {
    switch (id) {
      case 1: outcome = diffeo_factorization(rng); break;
      case 2: outcome = split_contract(rng); break;
      case 3: outcome = loop_factorization(rng); break;
      case 4: outcome = virasoro(rng); break;
      case 5: outcome = coboundary_check(); break;
      case 6: outcome = affine(rng); break;
      case 7: outcome = psl2_lifts(); break;
      case 8: outcome = free_group_lemma(rng); break;
      case 9: outcome = van_kampen(rng); break;
      case 10: outcome = colimit_reduction(rng); break;
      default: outcome = weights(); break;
    }
  } catch (const std::exception& e) {
    outcome = {false, std::string("exception: ") + e.what()};
  }
  CriterionResult result{id, criterion_name(id), outcome.pass, outcome.detail,
                         std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()};
  if (options.progress) options.progress(result);
  return result;
}

std::vector<CriterionResult> run_acceptance(const SelftestOptions& options) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, options));
  return out;
}

nlohmann::json to_json(const std::vector<CriterionResult>& results, std::uint64_t seed) {
  nlohmann::json out;
  out["seed"] = seed;
  bool all = true;
  out["criteria"] = nlohmann::json::array();
  for (const auto& r : results) {
    all = all && r.pass;
    out["criteria"].push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}});
  }
  out["pass"] = all;
  return out;
}

}  // namespace circle_colim
