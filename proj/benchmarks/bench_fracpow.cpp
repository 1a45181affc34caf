// Microbenchmarks for the hot paths: scalar quadrature evaluation, the
// 2D sine transform, single shifted solves, and the full operator
// fractional-power pipeline.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "fracpow/dst.hpp"
#include "fracpow/elliptic.hpp"
#include "fracpow/fracsolve.hpp"
#include "fracpow/grid.hpp"
#include "fracpow/scalar.hpp"
#include "fracpow/solve.hpp"

namespace {

using namespace fracpow;

void BM_ScalarQuadrature(benchmark::State& state) {
  QuadratureSpec q;
  q.rep = RepresentationSpec::damped_scaled(0.5, 3.0);
  q.rule = Rule::midpoint;
  q.M = static_cast<int>(state.range(0));
  double x = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(approx_frac_power(x, q));
    x = x < 1e18 ? x * 1.37 : 1.0;
  }
  state.SetItemsProcessed(state.iterations() * q.M);
}
BENCHMARK(BM_ScalarQuadrature)->Arg(50)->Arg(200)->Arg(1000);

void BM_PlanScalarApply(benchmark::State& state) {
  const auto plan =
      build_plan(0.5, Rule::midpoint, static_cast<int>(state.range(0)), 3.0);
  double x = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(plan.scalar_apply(x));
    x = x < 1e18 ? x * 1.37 : 1.0;
  }
  state.SetItemsProcessed(state.iterations() * plan.nodes.size());
}
BENCHMARK(BM_PlanScalarApply)->Arg(50)->Arg(200)->Arg(1000);

void BM_SineTransform(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const GridSpec g{1.0, 1.0, N, N};
  SineTransform2D st(g);
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> u(g.size()), uhat(g.size());
  for (auto& v : u) v = dist(rng);
  for (auto _ : state) {
    st.forward(u.data(), uhat.data());
    benchmark::DoNotOptimize(uhat.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.size()));
}
BENCHMARK(BM_SineTransform)->Arg(64)->Arg(256)->Arg(512);

void BM_OperatorApply(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const GridSpec g{1.0, 1.0, N, N};
  const OperatorHandle op(g, EllipticCoeffs{});
  GridFunction u(g);
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (std::size_t k = 0; k < u.size(); ++k) u.data()[k] = dist(rng);
  for (auto _ : state) {
    GridFunction r = apply(op, u);
    benchmark::DoNotOptimize(r.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.size()));
}
BENCHMARK(BM_OperatorApply)->Arg(64)->Arg(256);

void BM_ShiftedSolveCG(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const GridSpec g{1.0, 1.0, N, N};
  const OperatorHandle op(g, EllipticCoeffs{});
  const GridFunction b = rhs_library(RhsKind::bubble, g);
  SolveConfig cfg;
  cfg.rel_tol = 1e-10;
  for (auto _ : state) {
    auto out = solve(ShiftedSystem{&op, 1.0, 1.0}, b, cfg);
    benchmark::DoNotOptimize(out.w.data());
  }
}
BENCHMARK(BM_ShiftedSolveCG)->Arg(32)->Arg(64);

void BM_ShiftedSolveFast(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const GridSpec g{1.0, 1.0, N, N};
  const OperatorHandle op(g, EllipticCoeffs{});
  SineTransform2D st(g);
  const GridFunction b = rhs_library(RhsKind::bubble, g);
  for (auto _ : state) {
    auto out = solve_fast(ShiftedSystem{&op, 1.0, 1.0}, b, st);
    benchmark::DoNotOptimize(out.w.data());
  }
}
BENCHMARK(BM_ShiftedSolveFast)->Arg(64)->Arg(256);

void BM_FracApplyFast(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const int M = static_cast<int>(state.range(1));
  const GridSpec g{1.0, 1.0, N, N};
  const OperatorHandle op(g, EllipticCoeffs{});
  const GridFunction b = rhs_library(RhsKind::sgn, g);
  const auto plan = build_plan(0.5, Rule::midpoint, M, 3.0);
  FracSolveConfig cfg;
  cfg.solver.method = SolveMethod::fast_diagonalization;
  for (auto _ : state) {
    auto result = frac_apply_inverse(op, b, plan, cfg);
    benchmark::DoNotOptimize(result.u.data());
  }
}
BENCHMARK(BM_FracApplyFast)->Args({64, 100})->Args({256, 100})->Args({256, 200});

void BM_SpectralReference(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const GridSpec g{1.0, 1.0, N, N};
  const OperatorHandle op(g, EllipticCoeffs{});
  const GridFunction b = rhs_library(RhsKind::sgn, g);
  for (auto _ : state) {
    GridFunction u = spectral_reference(op, b, 0.5);
    benchmark::DoNotOptimize(u.data());
  }
}
BENCHMARK(BM_SpectralReference)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
