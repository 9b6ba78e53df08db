#include "doctest.h"
#include "ncnls/config.hpp"
#include "ncnls/errors.hpp"

using namespace ncnls;

namespace {

std::string error_of(const std::string& text) {
  try {
    finalize(parse_config(text));
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("empty config gives the default long-time run") {
  const auto cfg = finalize(parse_config(""));
  CHECK(cfg.scheme == SchemeKind::relaxation);
  CHECK(cfg.scenario == Scenario::r1);
  CHECK(cfg.T == 6.0);
  CHECK(cfg.k == 1e-3);
  CHECK(cfg.ell == 3);
  CHECK(cfg.elements == 6000);
  CHECK(cfg.h() == doctest::Approx(0.01));
  CHECK(cfg.a == -30.0);
  CHECK(cfg.b == 30.0);
  CHECK(cfg.omega == 0.3);
  CHECK(cfg.theta0 == 2.0);
  CHECK(cfg.mu == 12.0);
}

TEST_CASE("newton section sets the sweep counts") {
  const auto cfg = finalize(parse_config("scheme = dfp\n[newton]\ninner_steps = 4\n"));
  CHECK(cfg.scheme == SchemeKind::dfp);
  CHECK(cfg.newton.newton_steps == 1);
  CHECK(cfg.newton.inner_steps == 4);
  const auto flat = finalize(parse_config("newton.inner_steps=6 # comment\n"));
  CHECK(flat.newton.inner_steps == 6);
}

TEST_CASE("invalid configs are rejected naming the key") {
  CHECK(error_of("k = 7") != "");
  CHECK(error_of("T = 1\nk = 2").find("'k'") != std::string::npos);
  CHECK(error_of("bogus = 1").find("bogus") != std::string::npos);
  CHECK(error_of("ell = 6").find("ell") != std::string::npos);
  CHECK(error_of("ell = three").find("ell") != std::string::npos);
  CHECK(error_of("scenario = r9").find("scenario") != std::string::npos);
  CHECK(error_of("h = 0.07").find("'h'") != std::string::npos);
  CHECK(error_of("h = 0.01\nM = 10").find("M") != std::string::npos);
  CHECK(error_of("T = 1\nk = 0.3").find("'k'") != std::string::npos);
  CHECK(error_of("study = spatial\nh_list = 0.6").find("h_list") != std::string::npos);
  CHECK(error_of("scheme = dfp\ntargets = phi").find("targets") != std::string::npos);
  CHECK(error_of("[newton]\nfallback_tol = -1").find("newton") != std::string::npos);
  CHECK(error_of("no equals sign") != "");
}

TEST_CASE("study defaults follow the study kind unless set") {
  const auto sp = finalize(parse_config("study = spatial\nh_list = 0.6, 0.3\nT = 1"));
  CHECK(sp.k == 1e-5);
  const auto sp2 = finalize(parse_config("study = spatial\nh_list = 0.6, 0.3\nT = 1\nk = 1e-4"));
  CHECK(sp2.k == 1e-4);
  const auto tm = finalize(parse_config("study = temporal\nk_list = 0.02, 0.01\nT = 1"));
  CHECK(tm.ell == 5);
  CHECK(tm.k_list == std::vector<double>{0.02, 0.01});
}

TEST_CASE("overrides apply on top of a file") {
  auto cfg = parse_config("scheme = dfp\nk = 1e-2\nT = 1");
  apply_override(cfg, "k=5e-3");
  apply_override(cfg, "scenarios = r2, r6");
  cfg = finalize(cfg);
  CHECK(cfg.k == 5e-3);
  CHECK(cfg.scenarios == std::vector<Scenario>{Scenario::r2, Scenario::r6});
  CHECK_THROWS_AS(apply_override(cfg, "k"), ConfigError);
}

TEST_CASE("to_text round-trips") {
  const auto cfg = finalize(parse_config(
      "study = temporal\nscheme = dfp\nscenario = r6\nk_list = 0.02, 0.01, 0.005\nT = 1\nomega = 0.31\n"
      "a = -15\nb = 15\nh = 0.02\ntargets = u, energy\nbc = dirichlet\nmu = 9.5\nrun_id = x1\n"
      "[newton]\ninner_steps = 3\nfallback_tol = 3e-13\n"));
  const auto back = finalize(parse_config(to_text(cfg)));
  CHECK(to_text(back) == to_text(cfg));
  CHECK(back.study == cfg.study);
  CHECK(back.scenario == cfg.scenario);
  CHECK(back.k_list == cfg.k_list);
  CHECK(back.elements == cfg.elements);
  CHECK(back.omega == cfg.omega);
  CHECK(back.bc == cfg.bc);
  CHECK(back.newton.fallback_tol == cfg.newton.fallback_tol);
  CHECK(back.targets == cfg.targets);
  CHECK(back.run_id == "x1");
}

TEST_CASE("every documented key is accepted") {
  for (const auto& key : config_keys()) CHECK(!key.empty());
  CHECK(config_keys().size() >= 20);
}
