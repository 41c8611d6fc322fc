#include <benchmark/benchmark.h>

#include "ricsol/contact.hpp"
#include "ricsol/fit.hpp"
#include "ricsol/manifest.hpp"
#include "ricsol/report.hpp"
#include "ricsol/soliton.hpp"

namespace {

using namespace ricsol;

const char* const kNames[] = {"hyperbolic", "cone", "sasakian3"};

Manifest bundled(std::int64_t index) { return parse_manifest(bundled_manifest(kNames[index])); }

// Symbolic pipeline from the metric to the Ricci tensor.
void BM_RicciFromMetric(benchmark::State& state) {
  const Manifest m = bundled(state.range(0));
  for (auto _ : state) {
    Geometry geo = build_geometry(m);
    benchmark::DoNotOptimize(geo.ricci());
  }
  state.SetLabel(kNames[state.range(0)]);
}
BENCHMARK(BM_RicciFromMetric)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_GradientResidual(benchmark::State& state) {
  const Manifest m = parse_manifest(bundled_manifest("sasakian3"));
  const Geometry geo = build_geometry(m);
  const SolitonConstants c{-1.0, 0.0, 1.0};
  const SolitonSpec spec = build_soliton(m, geo, c);
  const auto n = static_cast<std::size_t>(state.range(0));
  const SampleSet s = make_samples(m.chart, {SamplingStrategy::UniformRandom, n, 1}, manifest_parameters(m, &c));
  for (auto _ : state) {
    benchmark::DoNotOptimize(residual_gradient_form(spec, s, 1e-9));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_GradientResidual)->RangeMultiplier(10)->Range(100, 10000)->Unit(benchmark::kMillisecond);

void BM_ClassifySasakian(benchmark::State& state) {
  const Manifest m = parse_manifest(bundled_manifest("sasakian3"));
  const AlmostContactStructure st = build_structure(m, build_geometry(m));
  const SampleSet s = make_samples(m.chart, {SamplingStrategy::UniformRandom, 1000, 1});
  for (auto _ : state) {
    benchmark::DoNotOptimize(classify_structure(st, s));
  }
}
BENCHMARK(BM_ClassifySasakian)->Unit(benchmark::kMillisecond);

void BM_FitConstants(benchmark::State& state) {
  const Manifest m = bundled(state.range(0));
  const Geometry geo = build_geometry(m);
  const SampleSet s = make_samples(m.chart, {SamplingStrategy::UniformRandom, 1000, 1}, manifest_parameters(m));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_constants(geo, (*m.scalars)[0], (*m.scalars)[1], s));
  }
  state.SetLabel(kNames[state.range(0)]);
}
BENCHMARK(BM_FitConstants)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_RunAll(benchmark::State& state) {
  const Manifest m = bundled(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_manifest(m, Command::All));
  }
  state.SetLabel(kNames[state.range(0)]);
}
BENCHMARK(BM_RunAll)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
