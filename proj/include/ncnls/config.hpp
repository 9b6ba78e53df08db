#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ncnls/coefficients.hpp"
#include "ncnls/dfp.hpp"
#include "ncnls/mesh.hpp"
#include "ncnls/relaxation.hpp"

namespace ncnls {

enum class StudyKind { single, spatial, temporal, balance };

std::string_view to_string(StudyKind s);
StudyKind parse_study(std::string_view text);

/// Error measured per run of a convergence study.
enum class Target { u, phi, mass, energy };

std::string_view to_string(Target t);
Target parse_target(std::string_view text);

/// Everything needed to run one experiment. Defaults are the long-time
/// balance setup: relaxation, r1, [-30, 30], h = 0.01, l = 3, T = 6, k = 1e-3.
struct ExperimentConfig {
  StudyKind study = StudyKind::single;
  SchemeKind scheme = SchemeKind::relaxation;
  Scenario scenario = Scenario::r1;
  std::vector<Scenario> scenarios{std::begin(kAllScenarios), std::end(kAllScenarios)};
  double a = -30.0;
  double b = 30.0;
  int elements = 6000;
  std::optional<double> h_request;  // "h" key; resolved into `elements` by finalize
  int ell = 3;
  BoundaryCondition bc = BoundaryCondition::periodic;
  double T = 6.0;
  double k = 1e-3;
  std::vector<double> h_list;
  std::vector<double> k_list;
  std::vector<Target> targets{Target::u};
  double omega = 0.3;
  double theta0 = 2.0;
  double mu = 12.0;
  InitMode init = InitMode::improved;
  NewtonOptions newton;
  std::string output_dir = "out";
  std::string run_id;  // empty: derived from the parameters
  std::size_t stride = 100;
  int workers = 1;

  /// Keys set explicitly (file or override), used for study-dependent defaults.
  std::set<std::string> explicit_keys;

  double h() const { return (b - a) / elements; }
  bool is_explicit(const std::string& key) const { return explicit_keys.count(key) > 0; }
};

/// Parses the flat key = value format. `[section]` lines prefix the following
/// keys with "section."; '#' starts a comment; lists are comma separated.
/// Unknown keys and malformed values raise ConfigError naming the key.
ExperimentConfig parse_config(std::string_view text, ExperimentConfig base = {});
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {});

/// Applies one "key=value" override.
void apply_override(ExperimentConfig& cfg, std::string_view assignment);

/// Study defaults (spatial: k = 1e-5, temporal: l = 5, unless set) and
/// cross-field checks. Returns the finalized config.
ExperimentConfig finalize(ExperimentConfig cfg);

/// Config text that parses back to the same values.
std::string to_text(const ExperimentConfig& cfg);

/// Every key the parser accepts.
const std::vector<std::string>& config_keys();

}  // namespace ncnls
