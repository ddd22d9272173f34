#include <benchmark/benchmark.h>

#include "bohmslit/born.hpp"
#include "bohmslit/dynamics.hpp"
#include "bohmslit/entangled_state.hpp"
#include "bohmslit/experiment.hpp"

using namespace bohmslit;

namespace {

const EffectiveState& default_state() {
  static const EffectiveState state{PhysicalConfig{}};
  return state;
}

}  // namespace

static void BM_GuidanceVelocity(benchmark::State& bs) {
  const auto& st = default_state();
  double y = 3.0;
  for (auto _ : bs) {
    const auto v = guidance_velocity(st, {y, -y + 0.4, 6.0});
    benchmark::DoNotOptimize(v);
    y += 1e-9;
  }
}
BENCHMARK(BM_GuidanceVelocity);

static void BM_LogGradSlice(benchmark::State& bs) {
  const StateSlice slice(default_state(), 6.0);
  double y = 3.0;
  for (auto _ : bs) {
    benchmark::DoNotOptimize(slice.log_grad(y, -y + 0.4));
    y += 1e-9;
  }
}
BENCHMARK(BM_LogGradSlice);

static void BM_IntegratePair(benchmark::State& bs) {
  const auto& st = default_state();
  IntegratorSettings s;
  s.n_samples = static_cast<int>(bs.range(0));
  for (auto _ : bs) {
    auto tr = integrate_pair(st, 4.7, -5.6, s);
    benchmark::DoNotOptimize(tr.y1.data());
  }
}
BENCHMARK(BM_IntegratePair)->Arg(2)->Arg(200)->Unit(benchmark::kMicrosecond);

static void BM_IntegratePairRk4(benchmark::State& bs) {
  const auto& st = default_state();
  IntegratorSettings s;
  s.method = IntegratorMethod::rk4_fixed;
  s.n_samples = 2;
  for (auto _ : bs) {
    auto tr = integrate_pair(st, 4.7, -5.6, s);
    benchmark::DoNotOptimize(tr.y1.data());
  }
}
BENCHMARK(BM_IntegratePairRk4)->Unit(benchmark::kMicrosecond);

static void BM_SampleJoint(benchmark::State& bs) {
  const auto& st = default_state();
  const auto n = static_cast<std::size_t>(bs.range(0));
  for (auto _ : bs) {
    auto batch = sample_joint(st, st.detection_time(), n, 17);
    benchmark::DoNotOptimize(batch.pairs.data());
  }
  bs.SetItemsProcessed(bs.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_SampleJoint)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_BinProbability(benchmark::State& bs) {
  const BornQuadrature born(default_state(), 10.0);
  double q = -4.0;
  for (auto _ : bs) {
    benchmark::DoNotOptimize(born.bin_probability(q, -q));
    q += 1e-9;
  }
}
BENCHMARK(BM_BinProbability)->Unit(benchmark::kMicrosecond);

static void BM_BornQuadratureSetup(benchmark::State& bs) {
  for (auto _ : bs) {
    BornQuadrature born(default_state(), 10.0);
    benchmark::DoNotOptimize(born.grid());
  }
}
BENCHMARK(BM_BornQuadratureSetup)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
