#pragma once

#include <chrono>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace amv::cli {

struct CheckResult {
  std::string id;
  std::string claim;
  bool passed = false;
  std::string detail;
  std::chrono::milliseconds elapsed{0};
};

struct CheckOptions {
  // Also run the naive 2^28 scan.
  bool full = false;
  int threads = 1;
};

// Every finite claim the tool verifies, in a fixed order.
std::vector<CheckResult> run_all_checks(const CheckOptions& options);

bool all_passed(const std::vector<CheckResult>& results);
std::string render_table(const std::vector<CheckResult>& results);
nlohmann::json checks_to_json(const std::vector<CheckResult>& results);

}  // namespace amv::cli
