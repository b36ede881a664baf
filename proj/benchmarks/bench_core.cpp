#include <benchmark/benchmark.h>

#include <cmath>

#include "rkr/elm.hpp"
#include "rkr/lssvr.hpp"
#include "rkr/rng.hpp"

using namespace rkr;

namespace {

Dataset make_instance(Index n) {
  Rng rng(42);
  Dataset d;
  d.features.resize(n, 1);
  d.targets.resize(n);
  for (Index i = 0; i < n; ++i) {
    d.features(i, 0) = rng.uniform(-10, 10);
    d.targets(i) = sinc(d.features(i, 0)) + 0.3 * rng.normal();
  }
  return d;
}

}  // namespace

static void BM_Gram(benchmark::State& state) {
  const Dataset d = make_instance(state.range(0));
  const KernelSpec kernel{0.125};
  for (auto _ : state) {
    Matrix K = gram(d.features, kernel);
    benchmark::DoNotOptimize(K.data());
  }
}
BENCHMARK(BM_Gram)->Arg(100)->Arg(300)->Arg(500);

static void BM_FitLssvr(benchmark::State& state) {
  const Dataset d = make_instance(state.range(0));
  for (auto _ : state) {
    SvrModel m = fit_lssvr(d, 1.0, KernelSpec{0.125});
    benchmark::DoNotOptimize(m.alpha.data());
  }
}
BENCHMARK(BM_FitLssvr)->Arg(100)->Arg(300)->Arg(500);

static void BM_IrlsSvr(benchmark::State& state) {
  const Dataset d = make_instance(state.range(0));
  IrlsConfig cfg;
  cfg.weight_spec = WeightSpec::sigmoid_induced(4.0);
  for (auto _ : state) {
    auto [m, trace] = fit_irls_svr(d, 1.0, KernelSpec{0.125}, cfg);
    benchmark::DoNotOptimize(m.alpha.data());
    state.counters["iters"] = static_cast<double>(trace.iterations.size());
  }
}
BENCHMARK(BM_IrlsSvr)->Arg(100)->Arg(300)->Arg(500)->Unit(benchmark::kMillisecond);

static void BM_FitElm(benchmark::State& state) {
  const Dataset d = make_instance(500);
  for (auto _ : state) {
    ElmModel m = fit_elm(d, 1.0, state.range(0), 7);
    benchmark::DoNotOptimize(m.beta.data());
  }
}
BENCHMARK(BM_FitElm)->Arg(25)->Arg(50)->Arg(100);

static void BM_IrlsElm(benchmark::State& state) {
  const Dataset clean = make_instance(500);
  const Dataset d = inject_outliers(clean, 0.2, 10.0, 9);
  IrlsConfig cfg;
  cfg.weight_spec = WeightSpec::sigmoid_induced(4.0);
  for (auto _ : state) {
    auto [m, trace] = fit_irls_elm(d, 1.0, state.range(0), 7, cfg);
    benchmark::DoNotOptimize(m.beta.data());
  }
}
BENCHMARK(BM_IrlsElm)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);

static void BM_SigmoidWeight(benchmark::State& state) {
  const WeightSpec s = WeightSpec::sigmoid_induced(4.0);
  double x = 0.0;
  for (auto _ : state) {
    x += 1e-6;
    benchmark::DoNotOptimize(weight(s, x));
  }
}
BENCHMARK(BM_SigmoidWeight);

BENCHMARK_MAIN();
