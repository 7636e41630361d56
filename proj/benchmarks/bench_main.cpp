// Microbenchmarks for the criterion hot paths and one SA design step.

#include <benchmark/benchmark.h>

#include "rhex/criterion.hpp"
#include "rhex/optimizer.hpp"
#include "rhex/rng.hpp"

namespace {

using namespace rhex;

Box unit_box() {
  Box b;
  b.dims = {Interval{-1.0, 1.0}, Interval{-1.0, 1.0}};
  return b;
}

DistanceDataset make_psi(int res) {
  const int resolution[2] = {res, res};
  Distribution pts = build_psi_grid(unit_box(), resolution);
  std::vector<double> q(pts.size(), 1.0);
  return DistanceDataset::validated(std::move(pts), std::move(q), unit_box());
}

Distribution random_points(std::size_t n, Rng& rng) {
  Distribution d(2);
  for (std::size_t i = 0; i < n; ++i) {
    const double pt[2] = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    d.append(pt);
  }
  return d;
}

void BM_CriterionReference(benchmark::State& state) {
  const auto psi = make_psi(15);
  Rng rng(1);
  const auto x = random_points(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(criterion_j(x, psi));
  }
}
BENCHMARK(BM_CriterionReference)->Arg(50)->Arg(200)->Arg(500);

void BM_CriterionCachedHorizon(benchmark::State& state) {
  const auto psi = make_psi(15);
  Rng rng(1);
  const auto x = random_points(static_cast<std::size_t>(state.range(0)), rng);
  CriterionCache cache(psi);
  cache.reset(x);
  const std::vector<double> extra{0.1, 0.2, -0.3, 0.4, 0.5, -0.6};
  for (auto _ : state) {
    benchmark::DoNotOptimize(cache.eval(extra, 3));
  }
}
BENCHMARK(BM_CriterionCachedHorizon)->Arg(50)->Arg(200)->Arg(500);

void BM_SaStep(benchmark::State& state) {
  const auto psi = make_psi(15);
  const auto constraints = Constraints::validated({-1.0, 1.0}, unit_box());
  const auto surrogate = SurrogateModel::validated(0.8, 0.2, {0.0, 0.0});
  DesignState ds(constraints, surrogate, psi, true);
  ExcitationSignal past;
  Rng rng(3);
  for (int i = 0; i < 100; ++i) past.append(rng.uniform(-1.0, 1.0));
  ds.rebuild_prefix(past);
  SaConfig sa;
  const Rng step_rng(17);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sa_optimize(ds, 3, sa, 1.0, step_rng));
  }
}
BENCHMARK(BM_SaStep);

}  // namespace

BENCHMARK_MAIN();
