#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "ncnls/errors.hpp"
#include "ncnls/reports.hpp"

using namespace ncnls;
namespace fs = std::filesystem;

namespace {

ExperimentConfig small(SchemeKind scheme, Scenario s) {
  ExperimentConfig cfg;
  cfg.scheme = scheme;
  cfg.scenario = s;
  cfg.elements = 60;
  cfg.ell = 2;
  cfg.T = 1.0;
  cfg.k = 0.05;
  cfg.stride = 3;
  return finalize(cfg);
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("ncnls-test-" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("eoc of exact power laws") {
  const std::vector<double> h{0.4, 0.2, 0.1, 0.05};
  std::vector<double> e;
  for (double x : h) e.push_back(3.0 * x * x);
  const auto r = compute_eoc(h, e);
  CHECK_FALSE(r[0].has_value());
  for (std::size_t i = 1; i < r.size(); ++i) CHECK(*r[i] == doctest::Approx(2.0).epsilon(1e-13));
  const auto z = compute_eoc({0.2, 0.1}, {1.0, 0.0});
  CHECK_FALSE(z[1].has_value());
}

TEST_CASE("ledger csv round-trips losslessly") {
  const auto cfg = small(SchemeKind::relaxation, Scenario::r5);
  const RunReport run = run_single(cfg);
  const fs::path dir = scratch("ledger");
  fs::create_directories(dir);
  write_ledger_csv(dir / "l.csv", {&run});
  CHECK(slurp(dir / "l.csv").rfind(std::string(kLedgerHeader) + "\n", 0) == 0);
  const auto back = read_ledger_csv(dir / "l.csv");
  REQUIRE(back.size() == run.ledger.rows.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    const auto& a = back[i].row;
    const auto& b = run.ledger.rows[i];
    CHECK(back[i].run_id == run.run_id);
    CHECK(back[i].scheme == "relaxation");
    CHECK(back[i].scenario == "r5");
    CHECK(back[i].ell == 2);
    CHECK(back[i].h == cfg.h());
    CHECK(a.n == b.n);
    CHECK(a.t == b.t);
    CHECK(a.k == b.k);
    CHECK(a.mass == b.mass);
    CHECK(a.e_kinetic == b.e_kinetic);
    CHECK(a.e_potential == b.e_potential);
    CHECK(a.e_total == b.e_total);
    CHECK(a.mass_residual == b.mass_residual);
    CHECK(a.energy_residual == b.energy_residual);
    CHECK(a.mass_error == b.mass_error);
    CHECK(a.energy_error == b.energy_error);
    CHECK(a.l2_error == b.l2_error);
  }
  fs::remove_all(dir);
}

TEST_CASE("convergence csv round-trips, including the missing first rate") {
  const auto t1 = make_convergence_table("temporal", "u", "dfp", 5, {0.02, 0.01, 0.005}, {1.234e-4, 3.1e-5, 7.7e-6});
  const auto t2 = make_convergence_table("temporal", "mass", "dfp", 5, {0.02, 0.01}, {1e-7, 1.0 / 3.0 * 1e-8});
  const fs::path dir = scratch("conv");
  fs::create_directories(dir);
  write_convergence_csv(dir / "c.csv", {t1, t2});
  const auto back = read_convergence_csv(dir / "c.csv");
  REQUIRE(back.size() == 2);
  for (std::size_t j = 0; j < 2; ++j) {
    const auto& a = back[j];
    const auto& b = j == 0 ? t1 : t2;
    CHECK(a.study == b.study);
    CHECK(a.target == b.target);
    CHECK(a.ell == b.ell);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
      CHECK(a.rows[i].step == b.rows[i].step);
      CHECK(a.rows[i].error == b.rows[i].error);
      CHECK(a.rows[i].rate == b.rows[i].rate);
    }
  }
  fs::remove_all(dir);
}

TEST_CASE("identical configs give byte-identical csv output") {
  const auto cfg = small(SchemeKind::dfp, Scenario::r6);
  const fs::path d1 = scratch("det1"), d2 = scratch("det2");
  emit_reports(d1, cfg, run_single(cfg));
  emit_reports(d2, cfg, run_single(cfg));
  CHECK(slurp(d1 / "ledger.csv") == slurp(d2 / "ledger.csv"));
  CHECK(!slurp(d1 / "ledger.csv").empty());
  fs::remove_all(d1);
  fs::remove_all(d2);
}

TEST_CASE("bundle references files that exist and parse back") {
  auto cfg = small(SchemeKind::relaxation, Scenario::r2);
  cfg.study = StudyKind::temporal;
  cfg.k_list = {0.1, 0.05};
  cfg.targets = {Target::u, Target::mass};
  cfg.workers = 2;
  cfg = finalize(cfg);
  const auto study = run_convergence_study(cfg);
  CHECK_FALSE(study.failed);
  REQUIRE(study.tables.size() == 2);
  CHECK(study.runs[0].config.k == 0.1);
  CHECK(study.runs[1].config.k == 0.05);
  const fs::path dir = scratch("bundle");
  const auto bundle = emit_reports(dir, cfg, study);
  const auto j = nlohmann::json::parse(slurp(bundle.bundle_json));
  CHECK(j["version"].get<std::string>() == version_string());
  CHECK(j["runs"].size() == 2);
  for (const auto& [key, value] : j["files"].items()) CHECK(fs::exists(dir / value.get<std::string>()));
  CHECK(read_ledger_csv(bundle.ledger_csv).size() > 0);
  CHECK(read_convergence_csv(bundle.convergence_csv).size() == 2);
  CHECK(slurp(bundle.summary_txt).find("temporal study, target u") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("balance study samples t = k, 1, 2, ...") {
  auto cfg = small(SchemeKind::relaxation, Scenario::r1);
  cfg.study = StudyKind::balance;
  cfg.T = 2.0;
  cfg.scenarios = {Scenario::r1, Scenario::r4};
  cfg = finalize(cfg);
  const auto study = run_balance_study(cfg);
  REQUIRE(study.runs.size() == 2);
  for (const auto& r : study.runs) {
    REQUIRE(r.samples.size() == 3);
    CHECK(r.samples[0].t == 0.05);
    CHECK(r.samples[1].t == 1.0);
    CHECK(r.samples[2].t == 2.0);
  }
  CHECK(study.runs[1].config.scenario == Scenario::r4);
  const auto text = format_balance({&study.runs[0], &study.runs[1]}, false);
  CHECK(text.find("t=k") != std::string::npos);
}

TEST_CASE("unwritable output directory is an error") {
  const auto cfg = small(SchemeKind::relaxation, Scenario::r1);
  const fs::path file = scratch("blocker");
  std::ofstream(file) << "x";
  CHECK_THROWS_AS(emit_reports(file / "sub", cfg, run_single(cfg)), IoError);
  fs::remove_all(file);
}

TEST_CASE("a failed run aborts the study table") {
  auto cfg = small(SchemeKind::dfp, Scenario::r1);
  cfg.study = StudyKind::temporal;
  cfg.k_list = {0.05, 1.0};
  cfg.targets = {Target::u};
  cfg.theta0 = 2000.0;  // huge nonlinearity: the fixed-point sweeps diverge
  cfg.newton.fallback_max_iters = 2;
  cfg = finalize(cfg);
  const auto study = run_convergence_study(cfg);
  CHECK(study.failed);
  CHECK(study.tables[0].rows.size() < 2);
}
