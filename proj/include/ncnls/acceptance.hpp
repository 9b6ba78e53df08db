#pragma once

#include <filesystem>
#include <functional>
#include <set>
#include <string>
#include <vector>

namespace ncnls {

enum class Profile { full, reduced };

std::string_view to_string(Profile p);
Profile parse_profile(std::string_view text);

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::vector<std::string> checks;  // one line per individual comparison
};

struct AcceptanceOptions {
  Profile profile = Profile::full;
  std::filesystem::path config_dir = "configs";
  std::filesystem::path output_dir = "out/acceptance";
  int workers = 1;
  std::set<int> only;  // empty: all criteria
  std::function<void(const std::string&)> log;
};

/// Runs criteria 1..9. Each criterion's experiments are loaded from
/// config_dir; under the reduced profile `<group>.reduced.cfg` is layered on top.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

/// One "criterion N: PASS|FAIL name" line per result, each followed by its
/// indented checks.
std::string format_results(const std::vector<CriterionResult>& results);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace ncnls
