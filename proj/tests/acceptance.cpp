// One PASS/FAIL line per acceptance criterion; nonzero exit if any fails.
#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "circle_colim/selftest.hpp"

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::uint64_t seed = 7;
  int only = 0;
  app.add_option("--seed", seed, "RNG seed");
  app.add_option("--criterion", only, "run a single criterion (1-11)")->check(CLI::Range(0, circle_colim::kCriterionCount));
  CLI11_PARSE(app, argc, argv);

  circle_colim::SelftestOptions options;
  options.seed = seed;
  options.progress = [](const circle_colim::CriterionResult& r) {
    std::printf("%s  %2d  %-22s %6.1f s  %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds, r.detail.c_str());
    std::fflush(stdout);
  };
  int failed = 0;
  if (only > 0) {
    failed = circle_colim::run_criterion(only, options).pass ? 0 : 1;
  } else {
    for (const auto& r : circle_colim::run_acceptance(options)) failed += r.pass ? 0 : 1;
  }
  std::printf("%d failed\n", failed);
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
