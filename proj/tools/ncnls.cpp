#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "ncnls/acceptance.hpp"
#include "ncnls/errors.hpp"
#include "ncnls/reports.hpp"

namespace {

enum Exit { kPass = 0, kNumeric = 1, kConfig = 2 };

struct Common {
  std::string config;
  std::vector<std::string> sets;
  std::string out;
  int workers = 0;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("-c,--config", c.config, "config file (key = value, [section] headers)");
  cmd->add_option("-s,--set", c.sets, "override a config key, e.g. --set k=1e-4 (repeatable)");
  cmd->add_option("-o,--out", c.out, "output directory (default: the config's output_dir)");
  cmd->add_option("-w,--workers", c.workers, "parallel runs in a study");
}

ncnls::ExperimentConfig build(const Common& c, std::optional<ncnls::StudyKind> study) {
  ncnls::ExperimentConfig cfg;
  if (!c.config.empty()) cfg = ncnls::load_config(c.config, cfg);
  for (const auto& s : c.sets) ncnls::apply_override(cfg, s);
  if (study) {
    cfg.study = *study;
    cfg.explicit_keys.insert("study");
  }
  if (!c.out.empty()) cfg.output_dir = c.out;
  if (c.workers > 0) cfg.workers = c.workers;
  return ncnls::finalize(cfg);
}

std::filesystem::path out_dir(const ncnls::ExperimentConfig& cfg, const std::string& id) {
  return std::filesystem::path(cfg.output_dir) / id;
}

int run_single_cmd(const Common& c) {
  const auto cfg = build(c, ncnls::StudyKind::single);
  const auto run = ncnls::run_single(cfg, true, cfg.scheme == ncnls::SchemeKind::relaxation);
  const auto bundle = ncnls::emit_reports(out_dir(cfg, run.run_id), cfg, run);
  std::cout << ncnls::format_run(run) << "reports in " << bundle.bundle_json.parent_path().string() << '\n';
  return run.failed() ? kNumeric : kPass;
}

int run_study_cmd(const Common& c, ncnls::StudyKind kind) {
  const auto cfg = build(c, kind);
  const auto study =
      kind == ncnls::StudyKind::balance ? ncnls::run_balance_study(cfg) : ncnls::run_convergence_study(cfg);
  const std::string id = cfg.run_id.empty() ? std::string(ncnls::to_string(kind)) + "-" +
                                                  std::string(ncnls::to_string(cfg.scheme))
                                            : cfg.run_id;
  const auto bundle = ncnls::emit_reports(out_dir(cfg, id), cfg, study);
  std::ifstream summary(bundle.summary_txt);
  std::cout << summary.rdbuf() << "reports in " << bundle.bundle_json.parent_path().string() << '\n';
  return study.failed ? kNumeric : kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ncnls: finite-element solvers for the non-conservative cubic Schrodinger equation"};
  app.require_subcommand(1);

  Common run_opts, spatial_opts, temporal_opts, balance_opts;
  auto* run = app.add_subcommand("run", "single simulation");
  add_common(run, run_opts);
  auto* spatial = app.add_subcommand("study-spatial", "convergence in h over h_list");
  add_common(spatial, spatial_opts);
  auto* temporal = app.add_subcommand("study-temporal", "convergence in k over k_list");
  add_common(temporal, temporal_opts);
  auto* balance = app.add_subcommand("study-balance", "mass/energy error tables over scenarios");
  add_common(balance, balance_opts);

  ncnls::AcceptanceOptions acc;
  std::string profile = "full", config_dir = "configs", acc_out = "out/acceptance";
  std::vector<int> only;
  auto* tables = app.add_subcommand("reproduce-tables", "run every reference experiment and check it");
  tables->add_option("--profile", profile, "full or reduced")->check(CLI::IsMember({"full", "reduced"}));
  tables->add_option("--configs", config_dir, "directory holding the experiment configs");
  tables->add_option("-o,--out", acc_out, "output directory");
  tables->add_option("-w,--workers", acc.workers, "parallel runs in a study");
  tables->add_option("--only", only, "criterion ids to run")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kPass : kConfig;
  }

  try {
    if (*run) return run_single_cmd(run_opts);
    if (*spatial) return run_study_cmd(spatial_opts, ncnls::StudyKind::spatial);
    if (*temporal) return run_study_cmd(temporal_opts, ncnls::StudyKind::temporal);
    if (*balance) return run_study_cmd(balance_opts, ncnls::StudyKind::balance);
    acc.profile = ncnls::parse_profile(profile);
    acc.config_dir = config_dir;
    acc.output_dir = acc_out;
    acc.only = {only.begin(), only.end()};
    acc.log = [](const std::string& s) { std::cerr << s << std::endl; };
    const auto results = ncnls::run_acceptance(acc);
    std::cout << ncnls::format_results(results);
    return ncnls::all_passed(results) ? kPass : kNumeric;
  } catch (const ncnls::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const ncnls::IoError& e) {
    std::cerr << "output error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumeric;
  }
}
