#include <benchmark/benchmark.h>

#include <cstddef>

#include "hypcon/ball.hpp"
#include "hypcon/catalog.hpp"
#include "hypcon/conformal.hpp"
#include "hypcon/disk.hpp"
#include "hypcon/harness.hpp"
#include "hypcon/liouville.hpp"
#include "hypcon/weights.hpp"

namespace {

using namespace hypcon;

void BM_HyperbolicSigma(benchmark::State& state) {
  const DiskPoint z(Complex(0.3, -0.6));
  const DiskPoint w(Complex(-0.95, 0.1));
  for (auto _ : state) benchmark::DoNotOptimize(hyperbolic_sigma(z, w));
}
BENCHMARK(BM_HyperbolicSigma);

void BM_BallBeta(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  ComplexVector a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = Complex(0.3 / n, 0.1 / n);
    b[i] = Complex(-0.5 / n, 0.2 / n);
  }
  const BallPoint z(a), w(b);
  for (auto _ : state) benchmark::DoNotOptimize(bergman_beta(z, w));
}
BENCHMARK(BM_BallBeta)->Arg(1)->Arg(3)->Arg(16);

void BM_OmegaDistanceClosedForm(benchmark::State& state) {
  const Weight w = strip_weight();
  for (auto _ : state) benchmark::DoNotOptimize(omega_distance(w, -0.9, 0.7));
}
BENCHMARK(BM_OmegaDistanceClosedForm);

void BM_OmegaDistanceQuadrature(benchmark::State& state) {
  const Weight w = strip_weight();
  for (auto _ : state) benchmark::DoNotOptimize(omega_distance_quadrature(w, -0.9, 0.7));
}
BENCHMARK(BM_OmegaDistanceQuadrature);

void BM_VariationalDistance(benchmark::State& state) {
  const PlanarDomain strip = PlanarDomain::strip(strip_weight());
  DistanceOptions options;
  options.force_variational = true;
  options.variational.interior_nodes = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(distance(strip, Complex(-0.5, -1.0), Complex(0.6, 1.5), options).value);
  }
}
BENCHMARK(BM_VariationalDistance)->Arg(33)->Arg(65)->Arg(129)->Unit(benchmark::kMillisecond);

void BM_LiouvilleSolve(benchmark::State& state) {
  const WeightFamily f = strip_family();
  const LiouvilleState s0 = closed_form_state(f, -0.5);
  for (auto _ : state) benchmark::DoNotOptimize(solve_liouville(s0, 0.5, 1e-10).t_end());
}
BENCHMARK(BM_LiouvilleSolve)->Unit(benchmark::kMicrosecond);

void BM_ReContractionCase(benchmark::State& state) {
  const auto functions = catalog();
  const InequalityCase c = make_re_case(*find_function(functions, "strip_map"), strip_weight());
  SampleSpec spec;
  spec.count = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_re_contraction(c, spec).min_margin);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ReContractionCase)->Arg(1'000)->Arg(10'000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
