#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace circle_colim {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct SelftestOptions {
  std::uint64_t seed = 7;
  /// Called after each criterion finishes.
  std::function<void(const CriterionResult&)> progress;
};

inline constexpr int kCriterionCount = 11;

/// Runs acceptance criterion `id` (1..11) at full size.
CriterionResult run_criterion(int id, const SelftestOptions& options = {});
std::vector<CriterionResult> run_acceptance(const SelftestOptions& options = {});

nlohmann::json to_json(const std::vector<CriterionResult>& results, std::uint64_t seed);

}  // namespace circle_colim
