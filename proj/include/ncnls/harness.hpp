#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ncnls/config.hpp"
#include "ncnls/diagnostics.hpp"

namespace ncnls {

/// Errors at one of the sampled output times.
struct SampleRow {
  double t = 0.0;
  double mass_error = 0.0;
  double energy_error = 0.0;
};

struct RunReport {
  std::string run_id;
  ExperimentConfig config;
  BalanceLedger ledger;
  std::vector<SampleRow> samples;  // t in {k, 1, 2, ...} up to T
  double seconds = 0.0;
  long total_sweeps = 0;
  /// Set when the soliton gets within 10 length units of the boundary by T.
  std::optional<std::string> warning;

  bool failed() const { return ledger.failed; }
};

/// Output times of the balance tables: k, 1, 2, ..., floor(T).
std::vector<double> sample_times(double T, double k);

/// Derived identifier, e.g. "relaxation-r5-l3-h0.01-k0.001".
std::string default_run_id(const ExperimentConfig& cfg);

/// Runs one simulation of `cfg` (already finalized) with its exact solution.
/// `track_l2` / `track_phi` control the per-step error maxima.
RunReport run_single(const ExperimentConfig& cfg, bool track_l2 = true, bool track_phi = false);

struct StudyReport {
  StudyKind study = StudyKind::single;
  std::vector<ConvergenceTable> tables;  // one per target
  std::vector<RunReport> runs;
  bool failed = false;
  std::string failure;
};

/// Spatial (h_list) or temporal (k_list) convergence study over cfg.targets.
/// Runs execute on up to cfg.workers threads; results keep list order. A
/// failed run truncates the tables to the rows before it.
StudyReport run_convergence_study(const ExperimentConfig& cfg);

/// One run per scenario in cfg.scenarios (balance tables).
StudyReport run_balance_study(const ExperimentConfig& cfg);

struct CrossCheck {
  double max_difference = 0.0;  // max_n ||U_relax^n - U_dfp^n||
  std::size_t steps = 0;
  bool failed = false;
  std::string failure;
};

/// Steps the relaxation and DFP schemes side by side on cfg's grid.
CrossCheck run_cross_check(const ExperimentConfig& cfg);

/// Runs jobs 0..n-1 on up to `workers` threads.
void parallel_for_jobs(std::size_t n, int workers, const std::function<void(std::size_t)>& job);

}  // namespace ncnls
