// Serial reference kernels vs their OpenMP versions, plus one full step of each scheme.
#include <benchmark/benchmark.h>

#include <cmath>

#include "ncnls/dfp.hpp"
#include "ncnls/relaxation.hpp"

using namespace ncnls;

namespace {

SpacePtr space_for(int ell) {
  static SpacePtr cache[6];
  if (!cache[ell]) cache[ell] = FESpace::create(Mesh1D(-30, 30, 6000, ell, BoundaryCondition::periodic));
  return cache[ell];
}

std::vector<double> field(const ElementTables& t) {
  std::vector<double> g(t.points());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = 1 / std::cosh(t.x[i]);
  return g;
}

template <bool Parallel>
void load(benchmark::State& state) {
  const auto& t = space_for(static_cast<int>(state.range(0)))->assembly();
  const auto g = field(t);
  for (auto _ : state) {
    auto v = Parallel ? kernels::parallel::load_vector(t, std::span<const double>(g))
                      : kernels::serial::load_vector(t, std::span<const double>(g));
    benchmark::DoNotOptimize(v.data());
  }
}

template <bool Parallel>
void weighted(benchmark::State& state) {
  const auto& t = space_for(static_cast<int>(state.range(0)))->assembly();
  const auto g = field(t);
  for (auto _ : state) {
    auto w = Parallel ? kernels::parallel::weighted_mass(t, g) : kernels::serial::weighted_mass(t, g);
    benchmark::DoNotOptimize(w.band_data().data());
  }
}

template <bool Parallel>
void evaluate_complex(benchmark::State& state) {
  const auto space = space_for(static_cast<int>(state.range(0)));
  const auto& t = space->assembly();
  std::vector<complex> c(space->num_dofs(), complex(0.5, -0.25));
  std::vector<complex> out(t.points());
  for (auto _ : state) {
    if (Parallel)
      kernels::parallel::evaluate(t, c, out);
    else
      kernels::serial::evaluate(t, c, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void relaxation_step(benchmark::State& state) {
  const auto space = space_for(static_cast<int>(state.range(0)));
  const auto coeffs = make_scenario(Scenario::r5, 6.0);
  const ManufacturedSolution u({0.3, 2.0}, coeffs, -30, 30);
  const auto init = relax_initialize(space, coeffs, [&](double x) { return u.value(x, 0.0); }, 1e-3,
                                     InitMode::improved);
  for (auto _ : state) benchmark::DoNotOptimize(relax_step(init.current, coeffs, 1e-3));
}

void dfp_single_step(benchmark::State& state) {
  const auto space = space_for(static_cast<int>(state.range(0)));
  const auto coeffs = make_scenario(Scenario::r5, 6.0);
  const ManufacturedSolution u({0.3, 2.0}, coeffs, -30, 30);
  const DFPState s{0, 0.0, l2_project(space, [&](double x) { return u.value(x, 0.0); })};
  for (auto _ : state) benchmark::DoNotOptimize(dfp_step(s, coeffs, 1e-3));
}

}  // namespace

BENCHMARK(load<false>)->Arg(3)->Arg(5)->Unit(benchmark::kMicrosecond);
BENCHMARK(load<true>)->Arg(3)->Arg(5)->Unit(benchmark::kMicrosecond);
BENCHMARK(weighted<false>)->Arg(3)->Arg(5)->Unit(benchmark::kMicrosecond);
BENCHMARK(weighted<true>)->Arg(3)->Arg(5)->Unit(benchmark::kMicrosecond);
BENCHMARK(evaluate_complex<false>)->Arg(3)->Arg(5)->Unit(benchmark::kMicrosecond);
BENCHMARK(evaluate_complex<true>)->Arg(3)->Arg(5)->Unit(benchmark::kMicrosecond);
BENCHMARK(relaxation_step)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(dfp_single_step)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
