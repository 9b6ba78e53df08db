#include "ncnls/reports.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ncnls/errors.hpp"

#ifndef NCNLS_VERSION
#define NCNLS_VERSION "unknown"
#endif

namespace ncnls {

namespace fs = std::filesystem;

std::string version_string() { return NCNLS_VERSION; }

namespace {

std::string full(double v) {
  // shortest form that parses back to the same double
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4e", v);
  return buf;
}

double to_double(const std::string& s, const fs::path& path) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') throw IoError(path.string() + ": bad number '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

std::ifstream open_in(const fs::path& path, const char* header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != header) throw IoError(path.string() + ": unexpected header");
  return in;
}

}  // namespace

void write_ledger_csv(const fs::path& path, const std::vector<const RunReport*>& runs) {
  auto out = open_out(path);
  out << kLedgerHeader << '\n';
  for (const RunReport* run : runs) {
    const auto& c = run->config;
    const std::string prefix = run->run_id + ',' + std::string(to_string(c.scheme)) + ',' +
                               std::string(to_string(c.scenario)) + ',' + std::to_string(c.ell) + ',' +
                               full(c.h()) + ',';
    for (const auto& r : run->ledger.rows) {
      out << prefix << full(r.k) << ',' << r.n << ',' << full(r.t) << ',' << full(r.mass) << ','
          << full(r.e_kinetic) << ',' << full(r.e_potential) << ',' << full(r.e_total) << ','
          << full(r.mass_residual) << ',' << full(r.energy_residual) << ',' << full(r.mass_error) << ','
          << full(r.energy_error) << ',' << full(r.l2_error) << '\n';
    }
  }
  if (!out) throw IoError("write failed: " + path.string());
}

std::vector<LedgerRecord> read_ledger_csv(const fs::path& path) {
  auto in = open_in(path, kLedgerHeader);
  std::vector<LedgerRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 17) throw IoError(path.string() + ": expected 17 fields");
    LedgerRecord rec;
    rec.run_id = f[0];
    rec.scheme = f[1];
    rec.scenario = f[2];
    rec.ell = std::stoi(f[3]);
    rec.h = to_double(f[4], path);
    auto& r = rec.row;
    r.k = to_double(f[5], path);
    r.n = std::stoull(f[6]);
    double* dst[] = {&r.t, &r.mass, &r.e_kinetic, &r.e_potential, &r.e_total, &r.mass_residual,
                     &r.energy_residual, &r.mass_error, &r.energy_error, &r.l2_error};
    for (std::size_t i = 0; i < 10; ++i) *dst[i] = to_double(f[7 + i], path);
    records.push_back(std::move(rec));
  }
  return records;
}

void write_convergence_csv(const fs::path& path, const std::vector<ConvergenceTable>& tables) {
  auto out = open_out(path);
  out << kConvergenceHeader << '\n';
  for (const auto& t : tables)
    for (const auto& r : t.rows)
      out << t.study << ',' << t.target << ',' << t.scheme << ',' << t.ell << ',' << full(r.step) << ','
          << full(r.error) << ',' << (r.rate ? full(*r.rate) : std::string()) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

std::vector<ConvergenceTable> read_convergence_csv(const fs::path& path) {
  auto in = open_in(path, kConvergenceHeader);
  std::vector<ConvergenceTable> tables;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 7) throw IoError(path.string() + ": expected 7 fields");
    const int ell = std::stoi(f[3]);
    if (tables.empty() || tables.back().study != f[0] || tables.back().target != f[1] ||
        tables.back().scheme != f[2] || tables.back().ell != ell)
      tables.push_back({f[0], f[1], f[2], ell, {}});
    ConvergenceRow row{to_double(f[4], path), to_double(f[5], path), std::nullopt};
    if (!f[6].empty()) row.rate = to_double(f[6], path);
    tables.back().rows.push_back(row);
  }
  return tables;
}

std::string format_convergence(const ConvergenceTable& table) {
  std::ostringstream out;
  out << table.study << " study, target " << table.target << ", " << table.scheme << ", ell = " << table.ell
      << '\n';
  char buf[128];
  std::snprintf(buf, sizeof buf, "%12s  %12s  %8s\n", table.study == "spatial" ? "h" : "k", "error", "rate");
  out << buf;
  for (const auto& r : table.rows) {
    std::snprintf(buf, sizeof buf, "%12g  %12s  %8s\n", r.step, sci(r.error).c_str(),
                  r.rate ? [&] {
                    char rb[16];
                    std::snprintf(rb, sizeof rb, "%.3f", *r.rate);
                    return std::string(rb);
                  }().c_str()
                         : "-");
    out << buf;
  }
  return out.str();
}

std::string format_balance(const std::vector<const RunReport*>& runs, bool energy) {
  std::ostringstream out;
  out << (energy ? "E_e" : "M_e");
  std::vector<double> times;
  for (const RunReport* run : runs) {
    out << "  " << std::string(12 - std::min<std::size_t>(12, run->run_id.size()), ' ')
        << std::string(to_string(run->config.scenario)) + "/" + std::string(to_string(run->config.scheme));
    if (run->samples.size() > times.size()) {
      times.clear();
      for (const auto& s : run->samples) times.push_back(s.t);
    }
  }
  out << '\n';
  for (std::size_t i = 0; i < times.size(); ++i) {
    char label[16];
    if (i == 0)
      std::snprintf(label, sizeof label, "t=k");
    else
      std::snprintf(label, sizeof label, "t=%g", times[i]);
    out << label;
    for (const RunReport* run : runs) {
      out << "  ";
      if (i < run->samples.size())
        out << sci(energy ? run->samples[i].energy_error : run->samples[i].mass_error);
      else
        out << "         -";
    }
    out << '\n';
  }
  return out.str();
}

std::string format_run(const RunReport& run) {
  std::ostringstream out;
  out << "run " << run.run_id << (run.failed() ? "  FAILED: " + run.ledger.failure : std::string()) << '\n';
  out << "  steps " << run.ledger.steps << ", " << run.seconds << " s";
  if (run.config.scheme == SchemeKind::dfp) out << ", " << run.total_sweeps << " sweeps";
  out << '\n';
  out << "  max |mass residual|   " << sci(run.ledger.max_mass_residual) << '\n';
  out << "  max |energy residual| " << sci(run.ledger.max_energy_residual) << '\n';
  out << "  E(u)                  " << sci(run.ledger.max_l2_error) << '\n';
  if (run.config.scheme == SchemeKind::relaxation && run.ledger.max_phi_error > 0)
    out << "  E(phi)                " << sci(run.ledger.max_phi_error) << '\n';
  if (run.warning) out << "  warning: " << *run.warning << '\n';
  out << "  t        M_e         E_e\n";
  for (const auto& s : run.samples) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "  %-7g  %s  %s\n", s.t, sci(s.mass_error).c_str(), sci(s.energy_error).c_str());
    out << buf;
  }
  return out.str();
}

RunSummary summarize(const RunReport& run) {
  RunSummary s;
  s.run_id = run.run_id;
  s.seconds = run.seconds;
  s.total_sweeps = run.total_sweeps;
  s.max_mass_residual = run.ledger.max_mass_residual;
  s.max_energy_residual = run.ledger.max_energy_residual;
  if (!run.ledger.rows.empty()) {
    s.final_mass_error = run.ledger.rows.back().mass_error;
    s.final_energy_error = run.ledger.rows.back().energy_error;
  }
  s.max_l2_error = run.ledger.max_l2_error;
  s.max_phi_error = run.ledger.max_phi_error;
  s.samples = run.samples;
  s.failed = run.failed();
  s.failure = run.ledger.failure;
  s.warning = run.warning.value_or("");
  return s;
}

namespace {

fs::path prepare(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
  return dir;
}

void write_text(const fs::path& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

ReportBundle base_bundle(const fs::path& dir, const ExperimentConfig& cfg) {
  ReportBundle b;
  b.version = version_string();
  b.config = to_text(cfg);
  b.ledger_csv = dir / "ledger.csv";
  b.summary_txt = dir / "summary.txt";
  b.bundle_json = dir / "bundle.json";
  return b;
}

}  // namespace

ReportBundle emit_reports(const fs::path& dir, const ExperimentConfig& cfg, const RunReport& run) {
  prepare(dir);
  ReportBundle b = base_bundle(dir, cfg);
  b.failed = run.failed();
  b.failure = run.ledger.failure;
  b.runs.push_back(summarize(run));
  write_ledger_csv(b.ledger_csv, {&run});
  write_text(b.summary_txt, format_run(run));
  write_text(b.bundle_json, bundle_to_json(b));
  return b;
}

ReportBundle emit_reports(const fs::path& dir, const ExperimentConfig& cfg, const StudyReport& study) {
  prepare(dir);
  ReportBundle b = base_bundle(dir, cfg);
  b.failed = study.failed;
  b.failure = study.failure;
  b.tables = study.tables;
  std::vector<const RunReport*> runs;
  for (const auto& r : study.runs) {
    runs.push_back(&r);
    b.runs.push_back(summarize(r));
  }
  write_ledger_csv(b.ledger_csv, runs);
  std::string text;
  if (study.study == StudyKind::balance) {
    text = format_balance(runs, false) + '\n' + format_balance(runs, true);
  } else {
    b.convergence_csv = dir / "convergence.csv";
    write_convergence_csv(b.convergence_csv, b.tables);
    for (const auto& t : b.tables) text += format_convergence(t) + '\n';
  }
  if (study.failed) text += "FAILED: " + study.failure + '\n';
  write_text(b.summary_txt, text);
  write_text(b.bundle_json, bundle_to_json(b));
  return b;
}

std::string bundle_to_json(const ReportBundle& b) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["version"] = b.version;
  j["failed"] = b.failed;
  if (b.failed) j["failure"] = b.failure;
  j["config"] = b.config;
  ordered_json files;
  files["ledger_csv"] = b.ledger_csv.filename().string();
  if (!b.convergence_csv.empty()) files["convergence_csv"] = b.convergence_csv.filename().string();
  files["summary_txt"] = b.summary_txt.filename().string();
  j["files"] = files;
  j["runs"] = ordered_json::array();
  for (const auto& r : b.runs) {
    ordered_json jr;
    jr["run_id"] = r.run_id;
    jr["seconds"] = r.seconds;
    jr["total_sweeps"] = r.total_sweeps;
    jr["max_mass_residual"] = r.max_mass_residual;
    jr["max_energy_residual"] = r.max_energy_residual;
    jr["final_mass_error"] = r.final_mass_error;
    jr["final_energy_error"] = r.final_energy_error;
    jr["max_l2_error"] = r.max_l2_error;
    jr["max_phi_error"] = r.max_phi_error;
    jr["samples"] = ordered_json::array();
    for (const auto& s : r.samples)
      jr["samples"].push_back({{"t", s.t}, {"mass_error", s.mass_error}, {"energy_error", s.energy_error}});
    jr["failed"] = r.failed;
    if (r.failed) jr["failure"] = r.failure;
    if (!r.warning.empty()) jr["warning"] = r.warning;
    j["runs"].push_back(jr);
  }
  j["tables"] = ordered_json::array();
  for (const auto& t : b.tables) {
    ordered_json jt{{"study", t.study}, {"target", t.target}, {"scheme", t.scheme}, {"ell", t.ell}};
    jt["rows"] = ordered_json::array();
    for (const auto& r : t.rows) {
      ordered_json jr{{"step", r.step}, {"error", r.error}};
      jr["rate"] = r.rate ? ordered_json(*r.rate) : ordered_json(nullptr);
      jt["rows"].push_back(jr);
    }
    j["tables"].push_back(jt);
  }
  return j.dump(2) + '\n';
}

}  // namespace ncnls
