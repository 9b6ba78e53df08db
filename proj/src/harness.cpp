#include "ncnls/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "ncnls/dfp.hpp"
#include "ncnls/errors.hpp"
#include "ncnls/relaxation.hpp"

namespace ncnls {

std::vector<double> sample_times(double T, double k) {
  std::vector<double> out{k};
  for (int t = 1; t <= static_cast<int>(std::floor(T + 1e-9)); ++t)
    if (t > k) out.push_back(t);
  return out;
}

std::string default_run_id(const ExperimentConfig& cfg) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s-%s-l%d-h%g-k%g", std::string(to_string(cfg.scheme)).c_str(),
                std::string(to_string(cfg.scenario)).c_str(), cfg.ell, cfg.h(), cfg.k);
  std::string id = buf;
  if (cfg.init == InitMode::naive && cfg.scheme == SchemeKind::relaxation) id += "-naive";
  return id;
}

RunReport run_single(const ExperimentConfig& cfg, bool track_l2, bool track_phi) {
  RunReport report;
  report.config = cfg;
  report.run_id = cfg.run_id.empty() ? default_run_id(cfg) : cfg.run_id;

  const CoefficientSet coeffs = make_scenario(cfg.scenario, cfg.T, cfg.theta0, cfg.mu);
  const ManufacturedSolution exact({cfg.omega, cfg.theta0}, coeffs, cfg.a, cfg.b);
  const SpacePtr space = FESpace::create(Mesh1D(cfg.a, cfg.b, cfg.elements, cfg.ell, cfg.bc));
  const TimeGrid grid = TimeGrid::uniform(cfg.T, cfg.k);
  auto u0 = [&](double x) { return exact.value(x, 0.0); };

  RunOptions options;
  options.exact = &exact;
  options.stride = cfg.stride;
  options.sample_times = sample_times(cfg.T, cfg.k);
  options.track_l2_every_step = track_l2;
  options.track_phi = track_phi && cfg.scheme == SchemeKind::relaxation;

  const double travel = 4.0 * cfg.omega * cfg.T;
  const double center = 0.5 * (cfg.a + cfg.b);
  if (center + travel > cfg.b - 10.0 || center - travel < cfg.a + 10.0) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "soliton centre reaches x = %g by T = %g, within 10 of the boundary",
                  center + travel, cfg.T);
    report.warning = buf;
  }

  const RunResult result = cfg.scheme == SchemeKind::relaxation
                               ? relax_run(space, coeffs, u0, grid, cfg.init, options)
                               : dfp_run(space, coeffs, u0, grid, cfg.newton, options);
  report.ledger = result.ledger;
  report.seconds = result.seconds;
  report.total_sweeps = result.total_sweeps;
  for (double s : options.sample_times)
    for (const auto& row : report.ledger.rows)
      if (std::abs(row.t - s) < 0.5 * cfg.k) {
        report.samples.push_back({s, row.mass_error, row.energy_error});
        break;
      }
  return report;
}

CrossCheck run_cross_check(const ExperimentConfig& cfg) {
  const CoefficientSet coeffs = make_scenario(cfg.scenario, cfg.T, cfg.theta0, cfg.mu);
  const ManufacturedSolution exact({cfg.omega, cfg.theta0}, coeffs, cfg.a, cfg.b);
  const SpacePtr space = FESpace::create(Mesh1D(cfg.a, cfg.b, cfg.elements, cfg.ell, cfg.bc));
  const TimeGrid grid = TimeGrid::uniform(cfg.T, cfg.k);
  auto u0 = [&](double x) { return exact.value(x, 0.0); };

  auto distance = [&](const ComplexFunction& x, const ComplexFunction& y) {
    std::vector<complex> d(x.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = x.values()[i] - y.values()[i];
    return std::sqrt(quadratic_form(space->mass(), d));
  };

  CrossCheck out;
  try {
    RelaxInitialization init = relax_initialize(space, coeffs, u0, grid.step(0), cfg.init);
    RelaxState relax = init.current;
    DFPState dfp{0, 0.0, init.zero.U};
    out.max_difference = distance(init.zero.U, dfp.U);
    for (std::size_t n = 0; n < grid.steps(); ++n) {
      if (relax.n == n) relax = relax_step(relax, coeffs, grid.step(n));
      dfp = dfp_step(dfp, coeffs, grid.step(n), cfg.newton);
      out.max_difference = std::max(out.max_difference, distance(relax.U, dfp.U));
      out.steps = n + 1;
    }
  } catch (const SolverError& e) {
    out.failed = true;
    out.failure = e.what();
  }
  return out;
}

void parallel_for_jobs(std::size_t n, int workers, const std::function<void(std::size_t)>& job) {
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_lock;
  std::vector<std::thread> pool;
  const std::size_t count = std::min<std::size_t>(n, static_cast<std::size_t>(workers));
  for (std::size_t w = 0; w < count; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_lock);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

namespace {

double target_error(const RunReport& run, Target target) {
  const auto& rows = run.ledger.rows;
  switch (target) {
    case Target::u: return run.ledger.max_l2_error;
    case Target::phi: return run.ledger.max_phi_error;
    case Target::mass: return rows.empty() ? 0.0 : rows.back().mass_error;
    case Target::energy: return rows.empty() ? 0.0 : rows.back().energy_error;
  }
  return 0.0;
}

bool needs(const ExperimentConfig& cfg, Target t) {
  for (Target x : cfg.targets)
    if (x == t) return true;
  return false;
}

}  // namespace

StudyReport run_convergence_study(const ExperimentConfig& cfg) {
  if (cfg.study != StudyKind::spatial && cfg.study != StudyKind::temporal)
    throw ConfigError("run_convergence_study: study must be spatial or temporal");
  const bool spatial = cfg.study == StudyKind::spatial;
  const std::vector<double>& steps = spatial ? cfg.h_list : cfg.k_list;

  StudyReport report;
  report.study = cfg.study;
  report.runs.resize(steps.size());
  parallel_for_jobs(steps.size(), cfg.workers, [&](std::size_t j) {
    ExperimentConfig run_cfg = cfg;
    run_cfg.study = StudyKind::single;
    run_cfg.run_id.clear();
    if (spatial) {
      run_cfg.elements = static_cast<int>(std::lround((cfg.b - cfg.a) / steps[j]));
    } else {
      run_cfg.k = steps[j];
    }
    report.runs[j] = run_single(run_cfg, needs(cfg, Target::u), needs(cfg, Target::phi));
  });

  std::size_t valid = steps.size();
  for (std::size_t j = 0; j < steps.size(); ++j)
    if (report.runs[j].failed()) {
      valid = j;
      report.failed = true;
      report.failure = report.runs[j].run_id + ": " + report.runs[j].ledger.failure;
      break;
    }
  for (Target target : cfg.targets) {
    std::vector<double> s(steps.begin(), steps.begin() + valid), e;
    for (std::size_t j = 0; j < valid; ++j) e.push_back(target_error(report.runs[j], target));
    report.tables.push_back(make_convergence_table(std::string(to_string(cfg.study)), std::string(to_string(target)),
                                                   std::string(to_string(cfg.scheme)), cfg.ell, s, e));
  }
  return report;
}

StudyReport run_balance_study(const ExperimentConfig& cfg) {
  StudyReport report;
  report.study = StudyKind::balance;
  report.runs.resize(cfg.scenarios.size());
  parallel_for_jobs(cfg.scenarios.size(), cfg.workers, [&](std::size_t j) {
    ExperimentConfig run_cfg = cfg;
    run_cfg.study = StudyKind::single;
    run_cfg.scenario = cfg.scenarios[j];
    run_cfg.run_id.clear();
    report.runs[j] = run_single(run_cfg, false, false);
  });
  for (const auto& run : report.runs)
    if (run.failed()) {
      report.failed = true;
      report.failure = run.run_id + ": " + run.ledger.failure;
      break;
    }
  return report;
}

}  // namespace ncnls
