#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ncnls/harness.hpp"

namespace ncnls {

inline constexpr const char* kLedgerHeader =
    "run_id,scheme,scenario,ell,h,k,n,t,mass,e_kinetic,e_potential,e_total,mass_residual,"
    "energy_residual,mass_error,energy_error,l2_error";
inline constexpr const char* kConvergenceHeader = "study,target,scheme,ell,step,error,rate";

/// One parsed ledger CSV line.
struct LedgerRecord {
  std::string run_id;
  std::string scheme;
  std::string scenario;
  int ell = 0;
  double h = 0.0;
  LedgerRow row;
};

std::string version_string();

/// Full-precision (shortest round-trip) serialization; read_* parse it back exactly.
void write_ledger_csv(const std::filesystem::path& path, const std::vector<const RunReport*>& runs);
std::vector<LedgerRecord> read_ledger_csv(const std::filesystem::path& path);
void write_convergence_csv(const std::filesystem::path& path, const std::vector<ConvergenceTable>& tables);
std::vector<ConvergenceTable> read_convergence_csv(const std::filesystem::path& path);

/// Plain-text tables at 4 significant digits.
std::string format_convergence(const ConvergenceTable& table);
/// Rows t = k, 1, 2, ...; one column per run; `energy` picks E_e over M_e.
std::string format_balance(const std::vector<const RunReport*>& runs, bool energy);
std::string format_run(const RunReport& run);

struct RunSummary {
  std::string run_id;
  double seconds = 0.0;
  long total_sweeps = 0;
  double max_mass_residual = 0.0;
  double max_energy_residual = 0.0;
  double final_mass_error = 0.0;
  double final_energy_error = 0.0;
  double max_l2_error = 0.0;
  double max_phi_error = 0.0;
  std::vector<SampleRow> samples;
  bool failed = false;
  std::string failure;
  std::string warning;
};

struct ReportBundle {
  std::string version;
  std::string config;  // to_text echo
  bool failed = false;
  std::string failure;
  std::vector<RunSummary> runs;
  std::vector<ConvergenceTable> tables;
  std::filesystem::path ledger_csv;
  std::filesystem::path convergence_csv;  // empty for single runs
  std::filesystem::path summary_txt;
  std::filesystem::path bundle_json;
};

RunSummary summarize(const RunReport& run);

/// Writes ledger.csv, convergence.csv (studies), summary.txt and bundle.json
/// into `dir`. Throws IoError if the directory is unwritable.
ReportBundle emit_reports(const std::filesystem::path& dir, const ExperimentConfig& cfg, const RunReport& run);
ReportBundle emit_reports(const std::filesystem::path& dir, const ExperimentConfig& cfg, const StudyReport& study);

std::string bundle_to_json(const ReportBundle& bundle);

}  // namespace ncnls
