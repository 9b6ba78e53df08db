#include "ncnls/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>

#include "ncnls/errors.hpp"
#include "ncnls/reports.hpp"

namespace ncnls {

namespace fs = std::filesystem;

std::string_view to_string(Profile p) { return p == Profile::full ? "full" : "reduced"; }

Profile parse_profile(std::string_view text) {
  if (text == "full") return Profile::full;
  if (text == "reduced") return Profile::reduced;
  throw ConfigError("unknown profile '" + std::string(text) + "' (expected full or reduced)");
}

namespace {

// Published reference values, sampled at t = k, 1, ..., 6.
struct Column {
  const char* table;
  SchemeKind scheme;
  Scenario scenario;
  bool energy;
  double values[7];
};

constexpr Column kBalanceReference[] = {
    {"relaxation mass", SchemeKind::relaxation, Scenario::r5, false,
     {3.7126e-13, 1.0436e-07, 3.7295e-08, 2.0301e-08, 3.7296e-08, 1.0436e-07, 3.9302e-13}},
    {"relaxation mass", SchemeKind::relaxation, Scenario::r6, false,
     {1.3323e-15, 3.7748e-13, 8.2423e-13, 1.4590e-06, 1.0734e-06, 1.0734e-06, 1.0734e-06}},
    {"relaxation energy", SchemeKind::relaxation, Scenario::r5, true,
     {2.0973e-12, 4.6087e-07, 1.4290e-07, 7.0851e-08, 9.7024e-08, 6.2012e-08, 7.1270e-07}},
    {"relaxation energy", SchemeKind::relaxation, Scenario::r6, true,
     {1.4163e-12, 6.8242e-07, 1.1136e-06, 1.1792e-05, 1.9311e-06, 2.2225e-06, 1.9023e-06}},
    {"dfp mass", SchemeKind::dfp, Scenario::r5, false,
     {1.3012e-13, 5.9476e-08, 5.5232e-08, 4.8462e-08, 5.5232e-08, 5.9475e-08, 6.6414e-13}},
    {"dfp mass", SchemeKind::dfp, Scenario::r6, false,
     {2.4425e-15, 3.1286e-13, 6.2639e-13, 8.5044e-07, 1.0316e-06, 1.0316e-06, 1.0316e-06}},
};

constexpr double kR3MassAtT6 = 5.4321e-01;
constexpr double kSpatialL1Value = 4.8429e-02;     // E(u), ell = 1, h = 0.3
constexpr double kTemporalRelaxValue = 5.6225e-05;  // E(u), k = 1e-2
constexpr double kTemporalDfpValue = 1.5375e-04;

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string sci(double v) { return fmt("%.4e", v); }

class Criterion {
 public:
  Criterion(int id, std::string name) { r_.id = id, r_.name = std::move(name); }

  bool check(bool ok, const std::string& line) {
    r_.checks.push_back(std::string(ok ? "ok   " : "FAIL ") + line);
    all_ &= ok;
    return ok;
  }
  void note(const std::string& line) { r_.checks.push_back("     " + line); }

  CriterionResult finish() {
    r_.pass = all_ && !r_.checks.empty();
    return r_;
  }

 private:
  CriterionResult r_;
  bool all_ = true;
};

class Runner {
 public:
  explicit Runner(const AcceptanceOptions& o) : o_(o) {}

  ExperimentConfig load(const std::string& name, const std::string& group = {}) const {
    ExperimentConfig cfg = load_config(o_.config_dir / (name + ".cfg"), ExperimentConfig{});
    if (o_.profile == Profile::reduced && !group.empty()) {
      const fs::path reduced = o_.config_dir / (group + ".reduced.cfg");
      if (fs::exists(reduced)) cfg = load_config(reduced, cfg);
    }
    cfg.workers = o_.workers;
    return finalize(cfg);
  }

  const StudyReport& study(const std::string& name, const std::string& group = {},
                           const std::vector<std::string>& overrides = {}) {
    std::string key = name;
    for (const auto& s : overrides) key += "|" + s;
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    ExperimentConfig cfg = load(name, group);
    for (const auto& s : overrides) apply_override(cfg, s);
    cfg = finalize(cfg);
    log("running " + key);
    StudyReport rep = cfg.study == StudyKind::balance ? run_balance_study(cfg) : run_convergence_study(cfg);
    double seconds = 0;
    for (const auto& r : rep.runs) seconds += r.seconds;
    log("  done in " + fmt("%.1f", seconds) + " s" + (rep.failed ? ", FAILED: " + rep.failure : ""));
    emit(key, cfg, rep);
    return cache_.emplace(key, std::move(rep)).first->second;
  }

  RunReport single(const std::string& name, const std::string& group = {}) {
    const ExperimentConfig cfg = load(name, group);
    log("running " + name);
    RunReport rep = run_single(cfg, true, cfg.scheme == SchemeKind::relaxation);
    log("  done in " + fmt("%.1f", rep.seconds) + " s");
    emit_reports(o_.output_dir / name, cfg, rep);
    return rep;
  }

  void log(const std::string& s) const {
    if (o_.log) o_.log(s);
  }

  const AcceptanceOptions& options() const { return o_; }

 private:
  void emit(std::string key, const ExperimentConfig& cfg, const StudyReport& rep) const {
    std::replace(key.begin(), key.end(), '|', '-');
    std::replace(key.begin(), key.end(), '=', '_');
    std::replace(key.begin(), key.end(), ',', '_');
    emit_reports(o_.output_dir / key, cfg, rep);
  }

  AcceptanceOptions o_;
  std::map<std::string, StudyReport> cache_;
};

const ConvergenceTable* table_for(const StudyReport& rep, const std::string& target) {
  for (const auto& t : rep.tables)
    if (t.target == target) return &t;
  return nullptr;
}

const RunReport* run_for(const StudyReport& rep, Scenario s) {
  for (const auto& r : rep.runs)
    if (r.config.scenario == s) return &r;
  return nullptr;
}

std::vector<double> rates(const ConvergenceTable* t) {
  std::vector<double> out;
  if (t)
    for (const auto& r : t->rows)
      if (r.rate) out.push_back(*r.rate);
  return out;
}

std::string join_rates(const std::vector<double>& r) {
  std::string s;
  for (double v : r) s += (s.empty() ? "" : " ") + fmt("%.3f", v);
  return s.empty() ? "none" : s;
}

bool in_range(double v, double lo, double hi) { return v >= lo && v <= hi; }

bool within_rel(double v, double ref, double rel) { return std::abs(v - ref) <= rel * std::abs(ref); }

void study_failed(Criterion& c, const StudyReport& rep, const std::string& what) {
  if (rep.failed) c.check(false, what + " aborted: " + rep.failure);
}

/// Checks that the last `count` rates (or all, count = 0) lie in [lo, hi].
void check_rates(Criterion& c, const std::string& label, const ConvergenceTable* t, double lo, double hi,
                 std::size_t count) {
  const auto r = rates(t);
  std::vector<double> tail = r;
  if (count > 0 && r.size() > count) tail.assign(r.end() - count, r.end());
  bool ok = !tail.empty() && (count == 0 || tail.size() == count);
  for (double v : tail) ok &= in_range(v, lo, hi);
  c.check(ok, label + " rates " + join_rates(r) + (count ? " (last " + std::to_string(count) + ")" : " (all)") +
                  " in [" + fmt("%g", lo) + ", " + fmt("%g", hi) + "]");
}

double error_at(const ConvergenceTable* t, double step) {
  if (t)
    for (const auto& r : t->rows)
      if (std::abs(r.step - step) <= 1e-9 * step) return r.error;
  return std::nan("");
}

CriterionResult spatial(Runner& run) {
  Criterion c(1, "spatial convergence");
  const auto& l1 = run.study("spatial_l1", "spatial");
  study_failed(c, l1, "ell=1 study");
  check_rates(c, "ell=1 E(u)", table_for(l1, "u"), 1.95, 2.05, 2);
  c.note("ell=1 E(phi) rates " + join_rates(rates(table_for(l1, "phi"))));
  const auto& l2 = run.study("spatial_l2", "spatial");
  study_failed(c, l2, "ell=2 study");
  check_rates(c, "ell=2 E(u)", table_for(l2, "u"), 2.95, 3.10, 2);
  c.note("ell=2 E(phi) rates " + join_rates(rates(table_for(l2, "phi"))));
  if (run.options().profile == Profile::full) {
    const RunReport value = run.single("spatial_value");
    const double e = value.ledger.max_l2_error;
    c.check(!value.failed() && within_rel(e, kSpatialL1Value, 0.05),
            "ell=1 h=0.3 k=1e-5 E(u) = " + sci(e) + ", reference " + sci(kSpatialL1Value) + " within 5%");
  } else {
    c.note("value check skipped under the reduced profile");
  }
  return c.finish();
}

CriterionResult temporal(Runner& run) {
  Criterion c(2, "temporal convergence");
  const bool full = run.options().profile == Profile::full;
  const auto& relax = run.study("temporal_relaxation", "temporal");
  study_failed(c, relax, "relaxation study");
  check_rates(c, "relaxation E(u)", table_for(relax, "u"), 1.99, 2.01, 0);
  check_rates(c, "relaxation E(phi)", table_for(relax, "phi"), 1.99, 2.01, 0);
  const auto& dfp = run.study("temporal_dfp", "temporal");
  study_failed(c, dfp, "dfp study");
  check_rates(c, "dfp E(u)", table_for(dfp, "u"), 1.99, 2.01, 0);
  const double er = error_at(table_for(relax, "u"), 1e-2);
  const double ed = error_at(table_for(dfp, "u"), 1e-2);
  if (full) {
    c.check(within_rel(er, kTemporalRelaxValue, 0.02),
            "relaxation E(u; k=1e-2) = " + sci(er) + ", reference " + sci(kTemporalRelaxValue) + " within 2%");
    c.check(within_rel(ed, kTemporalDfpValue, 0.02),
            "dfp E(u; k=1e-2) = " + sci(ed) + ", reference " + sci(kTemporalDfpValue) + " within 2%");
  } else {
    c.note("relaxation E(u; k=1e-2) = " + sci(er) + ", dfp " + sci(ed) + " (values not checked under reduced)");
  }
  return c.finish();
}

CriterionResult initialization(Runner& run) {
  Criterion c(3, "initialization effect on phi");
  const auto& naive = run.study("temporal_naive", "temporal");
  study_failed(c, naive, "naive study");
  const auto rn = rates(table_for(naive, "phi"));
  c.check(!rn.empty() && rn.back() <= 1.5, "naive E(phi) final rate " + (rn.empty() ? "none" : fmt("%.3f", rn.back())) +
                                               " <= 1.5 (rates " + join_rates(rn) + ")");
  const auto& improved = run.study("temporal_relaxation", "temporal");
  study_failed(c, improved, "improved study");
  check_rates(c, "improved E(phi)", table_for(improved, "phi"), 1.9, 1e300, 0);
  return c.finish();
}

void check_samples(Criterion& c, const RunReport* r, const std::string& label, bool energy, double bound) {
  if (!r) {
    c.check(false, label + ": run missing");
    return;
  }
  double worst = 0;
  for (const auto& s : r->samples) worst = std::max(worst, energy ? s.energy_error : s.mass_error);
  const bool ok = !r->failed() && r->samples.size() >= 2;
  c.check(ok && worst <= bound, label + (energy ? " energy" : " mass") + " error max over samples " + sci(worst) +
                                    " <= " + sci(bound) + (r->failed() ? " (run failed: " + r->ledger.failure + ")" : ""));
}

CriterionResult conservative(Runner& run) {
  Criterion c(4, "conservative case r1");
  const auto& relax = run.study("balance_relaxation");
  const auto& dfp = run.study("balance_dfp");
  check_samples(c, run_for(relax, Scenario::r1), "relaxation r1", false, 5e-12);
  check_samples(c, run_for(relax, Scenario::r1), "relaxation r1", true, 5e-6);
  check_samples(c, run_for(dfp, Scenario::r1), "dfp r1", false, 5e-11);
  check_samples(c, run_for(dfp, Scenario::r1), "dfp r1", true, 5e-11);
  return c.finish();
}

CriterionResult nonconservative(Runner& run) {
  Criterion c(5, "non-conservative balance tables");
  const auto& relax = run.study("balance_relaxation");
  const auto& dfp = run.study("balance_dfp");

  if (const RunReport* r3 = run_for(relax, Scenario::r3); r3 && !r3->samples.empty() && !r3->failed()) {
    const double m = r3->samples.back().mass_error;
    c.check(in_range(m, 0.1, 1.0), "relaxation r3 mass error at t=" + fmt("%g", r3->samples.back().t) + " " + sci(m) +
                                       " in [0.1, 1]");
    c.check(within_rel(m, kR3MassAtT6, 0.10), "relaxation r3 mass error " + sci(m) + ", reference " +
                                                  sci(kR3MassAtT6) + " within 10%");
  } else {
    c.check(false, "relaxation r3 run missing or failed");
  }

  for (const Column& col : kBalanceReference) {
    const RunReport* r = run_for(col.scheme == SchemeKind::relaxation ? relax : dfp, col.scenario);
    const std::string label = std::string(col.table) + " " + std::string(to_string(col.scenario));
    if (!r || r->failed() || r->samples.size() != 7) {
      c.check(false, label + ": run missing, failed or not sampled at 7 times");
      continue;
    }
    for (std::size_t i = 0; i < 7; ++i) {
      const double v = col.energy ? r->samples[i].energy_error : r->samples[i].mass_error;
      const double ref = col.values[i];
      const std::string t = i == 0 ? "k" : fmt("%g", r->samples[i].t);
      c.check(v >= ref / 3 && v <= ref * 3,
              label + " t=" + t + ": " + sci(v) + ", reference " + sci(ref) + " within factor 3");
    }
  }

  for (Scenario s : {Scenario::r4, Scenario::r5}) {
    const RunReport* r = run_for(relax, s);
    const std::string label = "relaxation " + std::string(to_string(s)) + " mass symmetry about t=3";
    if (!r || r->failed() || r->samples.size() != 7) {
      c.check(false, label + ": run missing or failed");
      continue;
    }
    for (auto [a, b] : {std::pair{1, 5}, std::pair{2, 4}}) {
      const double x = r->samples[a].mass_error, y = r->samples[b].mass_error;
      const double ratio = std::max(x, y) / std::min(x, y);
      c.check(ratio <= 1.5, label + ", t=" + std::to_string(a) + " vs t=" + std::to_string(b) + ": " + sci(x) +
                                " / " + sci(y) + ", ratio " + fmt("%.3f", ratio) + " <= 1.5");
    }
  }
  return c.finish();
}

CriterionResult balance_rates(Runner& run) {
  Criterion c(6, "mass and energy error rates");
  const auto& r5 = run.study("massrate_r5");
  study_failed(c, r5, "r5 study");
  const auto& r6 = run.study("massrate_r6");
  study_failed(c, r6, "r6 study");
  auto last = [&](const StudyReport& rep, const char* target, const std::string& label, double want, double tol) {
    const auto r = rates(table_for(rep, target));
    const bool ok = !r.empty() && std::abs(r.back() - want) <= tol;
    c.check(ok, label + " final rate " + (r.empty() ? "none" : fmt("%.3f", r.back())) + " = " + fmt("%.2f", want) +
                    " +- " + fmt("%.2f", tol) + " (rates " + join_rates(r) + ")");
  };
  last(r5, "mass", "r5 R_m", 4.0, 0.1);
  last(r5, "energy", "r5 R_e", 2.0, 0.05);
  last(r6, "mass", "r6 R_m", 2.0, 0.05);
  last(r6, "energy", "r6 R_e", 2.0, 0.05);
  return c.finish();
}

CriterionResult identities(Runner& run) {
  Criterion c(7, "per-step balance identities");
  for (const char* scheme : {"relaxation", "dfp"}) {
    const auto& rep = run.study("identities", {}, {std::string("scheme=") + scheme});
    for (const auto& r : rep.runs) {
      const auto& l = r.ledger;
      const std::string label = r.run_id;
      if (l.failed) {
        c.check(false, label + " failed: " + l.failure);
        continue;
      }
      c.check(l.steps > 0 && l.max_mass_residual_ratio <= 1e-11,
              label + " max |mass residual|/(1+M) " + sci(l.max_mass_residual_ratio) + " <= 1e-11 over " +
                  std::to_string(l.steps) + " steps");
      c.check(l.steps > 0 && l.max_energy_residual_ratio <= 1e-10,
              label + " max |energy residual|/(1+|E|) " + sci(l.max_energy_residual_ratio) + " <= 1e-10");
    }
  }
  return c.finish();
}

CriterionResult cross_agreement(Runner& run) {
  Criterion c(8, "scheme cross-agreement");
  const ExperimentConfig cfg = run.load("crosscheck");
  run.log("running crosscheck");
  const CrossCheck x = run_cross_check(cfg);
  if (x.failed) {
    c.check(false, "cross check failed: " + x.failure);
  } else {
    c.check(x.max_difference <= 1e-6, "max_n ||U_relax - U_dfp|| = " + sci(x.max_difference) + " <= 1e-6 over " +
                                          std::to_string(x.steps) + " steps");
  }
  return c.finish();
}

// Independent oracles.

std::complex<double> pde_residual(const ManufacturedSolution& u, const CoefficientSet& c, double x, double t) {
  // r6 varies on a 1/mu time scale, so time gets the finer step
  const double dt = 1e-3, dx = 2.5e-3;
  auto ut = (-u.value(x, t + 2 * dt) + 8.0 * u.value(x, t + dt) - 8.0 * u.value(x, t - dt) + u.value(x, t - 2 * dt)) /
            (12 * dt);
  auto uxx = (-u.value(x + 2 * dx, t) + 16.0 * u.value(x + dx, t) - 30.0 * u.value(x, t) +
              16.0 * u.value(x - dx, t) - u.value(x - 2 * dx, t)) /
             (12 * dx * dx);
  const auto v = u.value(x, t);
  const std::complex<double> i(0, 1);
  return i * ut + c.p(t) * uxx + c.q(t) * std::norm(v) * v + i * c.r(t) * v;
}

/// Element mass and stiffness on [0, h] from the closed forms.
void symbolic_element(int ell, double h, std::vector<double>& m, std::vector<double>& s) {
  if (ell == 1) {
    m = {2, 1, 1, 2};
    for (auto& v : m) v *= h / 6;
    s = {1, -1, -1, 1};
    for (auto& v : s) v /= h;
  } else {
    // local nodes 0, 1/2, 1
    m = {4, 2, -1, 2, 16, 2, -1, 2, 4};
    for (auto& v : m) v *= h / 30;
    s = {7, -8, 1, -8, 16, -8, 1, -8, 7};
    for (auto& v : s) v /= 3 * h;
  }
}

CriterionResult oracles(Runner&) {
  Criterion c(9, "oracle suite");

  double worst = 0, scale = 0;
  for (Scenario s : kAllScenarios) {
    const CoefficientSet coeffs = make_scenario(s, 6.0);
    const ManufacturedSolution u({0.3, 2.0}, coeffs, -30, 30);
    for (double t : {0.4, 1.3, 2.9, 3.05, 4.6, 5.5})
      for (double x = -12; x <= 12; x += 0.37) {
        worst = std::max(worst, std::abs(pde_residual(u, coeffs, x, t)));
        scale = std::max(scale, std::abs(u.value(x, t)));
      }
  }
  c.check(worst <= 1e-6, "manufactured solution finite-difference PDE residual " + sci(worst) + " <= 1e-6 (max |u| " +
                             fmt("%.3f", scale) + ")");

  double matrix_err = 0;
  for (int ell : {1, 2})
    for (auto bc : {BoundaryCondition::periodic, BoundaryCondition::dirichlet}) {
      const double h = 0.25;
      const auto space = FESpace::create(Mesh1D(0.0, 6 * h, 6, ell, bc));
      std::vector<double> me, se;
      symbolic_element(ell, h, me, se);
      const auto& mesh = space->mesh();
      const std::size_t n = space->num_dofs();
      std::vector<double> mref(n * n, 0.0), sref(n * n, 0.0);
      for (int e = 0; e < mesh.elements(); ++e)
        for (int a = 0; a <= ell; ++a)
          for (int b = 0; b <= ell; ++b) {
            const int i = mesh.dof(e, a), j = mesh.dof(e, b);
            if (i < 0 || j < 0) continue;
            mref[i * n + j] += me[a * (ell + 1) + b];
            sref[i * n + j] += se[a * (ell + 1) + b];
          }
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          matrix_err = std::max(matrix_err, std::abs(space->mass().at(i, j) - mref[i * n + j]));
          matrix_err = std::max(matrix_err, std::abs(space->stiffness().at(i, j) - sref[i * n + j]));
        }
    }
  c.check(matrix_err <= 1e-13, "assembled P1/P2 mass and stiffness vs closed forms, max deviation " + sci(matrix_err) +
                                   " <= 1e-13");

  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> uni(-1, 1);
  double solve_res = 0;
  for (int ell = 1; ell <= 5; ++ell)
    for (auto bc : {BoundaryCondition::periodic, BoundaryCondition::dirichlet}) {
      const auto space = FESpace::create(Mesh1D(-30, 30, 300, ell, bc));
      std::vector<double> wq(space->assembly().points());
      for (auto& v : wq) v = 1 + uni(rng);
      const RealBandMatrix w = assemble_weighted_mass(*space, wq);
      const double k = 1e-2;
      const auto a = linear_combination({{complex(1 + 0.5 * k * 0.7, 0), space->mass()},
                                         {complex(0, 0.5 * k), space->stiffness()},
                                         {complex(0, -0.5 * k * 2.0), w}});
      std::vector<complex> rhs(space->num_dofs());
      for (auto& v : rhs) v = {uni(rng), uni(rng)};
      const auto x = BandLU<complex>(a).solve(rhs);
      const auto ax = a.apply(x);
      double num = 0, den = 0;
      for (std::size_t i = 0; i < rhs.size(); ++i) {
        num = std::max(num, std::abs(ax[i] - rhs[i]));
        den = std::max(den, std::abs(rhs[i]));
      }
      solve_res = std::max(solve_res, num / den);
    }
  c.check(solve_res <= 1e-12, "stage-matrix solves, ell=1..5, both boundary conditions, relative residual " +
                                  sci(solve_res) + " <= 1e-12");

  double ortho = 0;
  for (int ell = 1; ell <= 5; ++ell) {
    const CoefficientSet coeffs = make_scenario(Scenario::r5, 1.0);
    const ManufacturedSolution u({0.3, 2.0}, coeffs, -30, 30);
    const auto space = FESpace::create(Mesh1D(-30, 30, 240, ell, BoundaryCondition::periodic));
    auto f = [&](double x) { return u.value(x, 0.5); };
    const auto p = l2_project(space, f);
    const auto& t = space->accurate();
    std::vector<complex> g(t.points());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = f(t.x[i]);
    const auto load = kernels::serial::load_vector(t, std::span<const complex>(g));
    const auto mp = space->mass().apply(p.coefficients());
    double num = 0, den = 0;
    for (std::size_t i = 0; i < load.size(); ++i) {
      num = std::max(num, std::abs(load[i] - mp[i]));
      den = std::max(den, std::abs(load[i]));
    }
    ortho = std::max(ortho, num / den);
  }
  c.check(ortho <= 1e-12, "(f - P f, phi_i) relative to (f, phi_i), ell=1..5, " + sci(ortho) + " <= 1e-12");
  return c.finish();
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  Runner run(options);
  using Fn = CriterionResult (*)(Runner&);
  const std::pair<int, Fn> all[] = {{9, oracles},        {7, identities},   {8, cross_agreement},
                                    {1, spatial},        {2, temporal},     {3, initialization},
                                    {4, conservative},   {5, nonconservative}, {6, balance_rates}};
  std::vector<CriterionResult> out;
  for (auto [id, fn] : all) {
    if (!options.only.empty() && !options.only.count(id)) continue;
    try {
      out.push_back(fn(run));
    } catch (const std::exception& e) {
      CriterionResult r;
      r.id = id;
      r.name = "criterion " + std::to_string(id);
      r.checks.push_back(std::string("FAIL exception: ") + e.what());
      out.push_back(r);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return out;
}

std::string format_results(const std::vector<CriterionResult>& results) {
  std::string out;
  for (const auto& r : results) {
    out += "criterion " + std::to_string(r.id) + ": " + (r.pass ? "PASS" : "FAIL") + "  " + r.name + "\n";
    for (const auto& line : r.checks) out += "    " + line + "\n";
  }
  return out;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  return !results.empty() && std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
}

}  // namespace ncnls
