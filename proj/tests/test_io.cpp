#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "circle_colim/errors.hpp"
#include "circle_colim/fixtures.hpp"
#include "circle_colim/io.hpp"

using namespace circle_colim;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("circle_colim_io_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("geometry round trips") {
  const Cover c = uniform_based_cover(4, 0.1, 0.5);
  const Cover back = io::cover_from_json(io::to_json(c));
  REQUIRE(back.size() == 4);
  for (std::size_t j = 0; j < 4; ++j) CHECK(back.intervals[j] == c.intervals[j]);
  CHECK(back.d == c.d);
  REQUIRE(back.based);
  CHECK(back.based->angle() == c.based->angle());
  CHECK_FALSE(io::cover_from_json(io::to_json(uniform_cover(3, 0.1))).based);
  CHECK_THROWS_AS(io::interval_from_json(io::json{{"start", 1.0}}), PreconditionError);
}

TEST_CASE("element round trips are bit exact") {
  std::mt19937_64 rng(61);
  const CircleDiffeo phi = fixtures::random_diffeo(256, 0.05, rng);
  CHECK(sup_distance(io::diffeo_from_json(io::to_json(phi)), phi) == 0.0);
  const Loop gamma = fixtures::random_chart_loop(GroupDescriptor{3}, 64, 2.0, rng);
  const Loop back = io::loop_from_json(io::to_json(gamma));
  CHECK(back.group() == gamma.group());
  CHECK(sup_distance(back, gamma) == 0.0);
  io::json bad = io::to_json(phi);
  bad["lift"][3] = -5.0;
  CHECK_THROWS_AS(io::diffeo_from_json(bad), PreconditionError);
}

TEST_CASE("vector fields and Lie modes") {
  std::mt19937_64 rng(62);
  const ComplexField f = fixtures::random_field(6, rng);
  CHECK(io::field_from_json(io::to_json(f)) == f);
  const auto j = io::json::parse(R"({"modes":{"2":"1/2","-3":["1/3","-2"],"0":[0.25,0]}})");
  const ExactField exact = io::field_from_json_exact(j);
  CHECK(exact.coefficient(2) == GaussianRational(Rational(1, 2)));
  CHECK(exact.coefficient(-3) == GaussianRational(Rational(1, 3), Rational(-2)));
  CHECK(exact.coefficient(0) == GaussianRational(Rational(1, 4)));
  CHECK(io::field_from_json(j).coefficient(2) == Complex(0.5, 0.0));
  const LieModes m = fixtures::random_lie_modes(GroupDescriptor{2}, 3, rng);
  const LieModes mb = io::lie_modes_from_json(io::to_json(m));
  REQUIRE(mb.modes.size() == m.modes.size());
  for (const auto& [k, x] : m.modes) CHECK(max_abs_diff(mb.modes.at(k), x) == 0.0);
}

TEST_CASE("words and derivations") {
  const Word w{{0, 1}, {3, -1}, {2, 1}};
  CHECK(io::word_from_json(io::to_json(w)) == w);
  CHECK_THROWS_AS(io::word_from_json(io::json::parse(R"({"letters":[[0,2]]})")), PreconditionError);
  Derivation d;
  d.initial = w;
  d.steps.push_back({StepKind::merge_in_interval, 1, 2, {{7, 1}}, Interval(0.5, 1.0), "merge"});
  d.steps.push_back({StepKind::free_reduce, 0, 1, {}, std::nullopt, ""});
  d.final = {{7, 1}};
  d.complete = false;
  d.diagnostic = "blocked";
  const Derivation back = io::derivation_from_json(io::to_json(d));
  CHECK(back.initial == d.initial);
  REQUIRE(back.steps.size() == 2);
  CHECK(back.steps[0].kind == StepKind::merge_in_interval);
  CHECK(back.steps[0].position == 1);
  CHECK(back.steps[0].replacement == d.steps[0].replacement);
  CHECK(*back.steps[0].certificate == *d.steps[0].certificate);
  CHECK_FALSE(back.steps[1].certificate);
  CHECK(back.final == d.final);
  CHECK(back.diagnostic == "blocked");
}

TEST_CASE("presentations survive a save and load") {
  std::mt19937_64 rng(63);
  auto store = std::make_shared<LoopStore>(GroupDescriptor{2}, 256);
  Presentation p(store, fixtures::random_cover(rng), Tolerances{2e-8, 1e-9});
  const Word w = fixtures::loop_relation(p, fixtures::random_chart_loop(GroupDescriptor{2}, 256, 1.0, rng),
                                         fixtures::random_chart_loop(GroupDescriptor{2}, 256, 1.0, rng), rng);
  const fs::path dir = scratch("presentation");
  io::save_presentation(dir, p);
  const Presentation q = io::load_presentation(dir);
  CHECK(q.store().mode() == "loop");
  CHECK(q.store().size() == p.store().size());
  CHECK(q.generator_count() == p.generator_count());
  CHECK(q.tolerances().identity == 2e-8);
  for (std::size_t g = 0; g < p.generator_count(); ++g) {
    CHECK(q.generator(static_cast<int>(g)).label == p.generator(static_cast<int>(g)).label);
    CHECK(q.generator(static_cast<int>(g)).cover_index == p.generator(static_cast<int>(g)).cover_index);
  }
  CHECK(q.identity_distance(w) == p.identity_distance(w));
  fs::remove_all(dir);
}

TEST_CASE("file errors") {
  CHECK_THROWS_AS(io::read_json("/nonexistent/circle_colim.json"), PreconditionError);
  const fs::path dir = scratch("files");
  {
    std::ofstream(dir / "bad.json") << "{not json";
  }
  CHECK_THROWS_AS(io::read_json(dir / "bad.json"), PreconditionError);
  io::write_json(dir / "ok.json", io::json{{"a", 1}});
  CHECK(io::read_json(dir / "ok.json")["a"] == 1);
  CHECK_THROWS_AS(io::load_presentation(dir), PreconditionError);
  fs::remove_all(dir);
}
