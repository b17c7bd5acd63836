#include <benchmark/benchmark.h>

#include "tsimg/ingest.hpp"
#include "tsimg/preprocess.hpp"
#include "tsimg/random.hpp"
#include "tsimg/transforms.hpp"

using namespace tsimg;
using namespace tsimg::transforms;

namespace {

std::vector<double> series(std::size_t n) {
  Xoshiro256 rng(n);
  std::vector<double> x(n);
  for (auto& v : x) v = rng.normal();
  return x;
}

Window window(int channels) {
  ingest::SynthConfig cfg;
  cfg.seed = 1;
  cfg.n_channels = channels;
  cfg.duration_s = 5.0;
  return preprocess::prepare_windows(ingest::synthesize(cfg), RepresentationConfig{}).front();
}

void BM_Correlation(benchmark::State& state) {
  const auto w = window(19);
  for (auto _ : state) benchmark::DoNotOptimize(correlation_matrix(w.data));
}
BENCHMARK(BM_Correlation);

void BM_Recurrence(benchmark::State& state) {
  const auto x = series(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(recurrence_plot(x, 0.3));
}
BENCHMARK(BM_Recurrence)->Arg(224);

void BM_ChooseEpsilon(benchmark::State& state) {
  const auto x = series(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(choose_epsilon(x, 0.1));
}
BENCHMARK(BM_ChooseEpsilon)->Arg(224)->Arg(640);

void BM_Gasf(benchmark::State& state) {
  const auto x = series(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gasf(x));
}
BENCHMARK(BM_Gasf)->Arg(224);

void BM_Mtf(benchmark::State& state) {
  const auto x = series(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mtf(x, 8));
}
BENCHMARK(BM_Mtf)->Arg(224);

void BM_Cwt(benchmark::State& state) {
  const auto x = series(640);
  const CwtConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(cwt_scalogram(x, cfg, 128.0));
}
BENCHMARK(BM_Cwt);

void BM_Spectrogram(benchmark::State& state) {
  const auto x = series(640);
  const StftConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(stft_spectrogram(x, cfg));
}
BENCHMARK(BM_Spectrogram);

void BM_Resample(benchmark::State& state) {
  const auto x = series(1250);
  for (auto _ : state) benchmark::DoNotOptimize(preprocess::resample(x, 250.0, 128.0));
}
BENCHMARK(BM_Resample);

void BM_RepresentWindow(benchmark::State& state) {
  const auto w = window(19);
  const RepresentationConfig cfg;
  const auto kind = kAllKinds[static_cast<std::size_t>(state.range(0))];
  state.SetLabel(std::string(to_string(kind)));
  for (auto _ : state) benchmark::DoNotOptimize(represent_window(w, kind, cfg));
}
BENCHMARK(BM_RepresentWindow)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
