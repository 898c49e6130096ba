#include <benchmark/benchmark.h>

#include "helmrays/harness.hpp"
#include "helmrays/helmholtz.hpp"
#include "helmrays/mc.hpp"
#include "helmrays/quadrature.hpp"
#include "helmrays/wigner.hpp"

using namespace helmrays;

static void BM_FourierTransform(benchmark::State& state) {
  auto f = model::add(model::gaussian(3, 1.0, 1.0, {0.5, 0, 0}, {0.2, 0, 0}),
                      model::gaussian(3, Complex(0.3, 0.7), 1.4));
  for (auto _ : state) {
    auto fh = model::fourier_transform(f);
    benchmark::DoNotOptimize(fh.atoms.data());
  }
}
BENCHMARK(BM_FourierTransform);

static void BM_SphereRuleBuild(benchmark::State& state) {
  int order = static_cast<int>(state.range(0));
  int n = 0;
  for (auto _ : state) {
    // vary the node count to defeat the internal cache
    n = (n + 1) % 16;
    const auto& rule = quad::sphere_rule(3, order, 3 * (order + 1) * (order + 1) + n);
    benchmark::DoNotOptimize(rule.weights.data());
  }
}
BENCHMARK(BM_SphereRuleBuild)->Arg(8)->Arg(12);

static void BM_ResolventEvaluate(benchmark::State& state) {
  // the radial pole/oscillation kernel behind every solution evaluation
  double eps = 1.0 / static_cast<double>(state.range(0));
  auto s = harness::reference_scenario();
  auto sol = helmholtz::solve_rescaled(s, eps, 0);
  Vec3 x{7.0, 2.0, 0.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(helmholtz::evaluate(sol, x));
  }
}
BENCHMARK(BM_ResolventEvaluate)->Arg(5)->Arg(10)->Arg(40);

static void BM_SourceTermPairing(benchmark::State& state) {
  auto s = harness::reference_scenario();
  auto a = harness::observable_by_name("g0");
  double eps = 0.1;
  for (auto _ : state) {
    auto r = wigner::source_term_pairing(s, eps, 0, a, 1);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_SourceTermPairing);

static void BM_WignerMcBatch(benchmark::State& state) {
  auto s = harness::reference_scenario();
  auto a = harness::observable_by_name("g0");
  double eps = 0.1;
  auto u = helmholtz::solve_full(s, eps);
  wigner::WignerQuad q;
  q.n_samples = 65536;
  for (auto _ : state) {
    auto r = wigner::wigner_pairing(u, u, a, eps, q);
    benchmark::DoNotOptimize(r.value);
    q.seed += 1;
  }
  state.SetItemsProcessed(state.iterations() * q.n_samples);
}
BENCHMARK(BM_WignerMcBatch);

static void BM_BstarProfileField(benchmark::State& state) {
  auto s = harness::reference_scenario();
  auto field = helmholtz::rescaled_profile_field(s, 0.1, 0, 80.0);
  Vec3 x{13.0, 5.0, 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(field.eval(x));
  }
}
BENCHMARK(BM_BstarProfileField);

BENCHMARK_MAIN();
