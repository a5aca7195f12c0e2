// Copyright 2026 The qecdecay Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "qecdecay/analytics.hpp"
#include "qecdecay/noise.hpp"
#include "qecdecay/operators.hpp"
#include "qecdecay/protocol.hpp"

namespace {

using namespace qecd;

const CovarianceMatrix& sample_covariance() {
  static const CovarianceMatrix cov = CovarianceMatrix::totally_correlated(1.0);
  return cov;
}

void BM_AnalyticChannel(benchmark::State& state) {
  const DensityMatrix rho = make_pure_data_state(Complex(0.6, 0.0), Complex(0.0, 0.8));
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_channel_analytic(rho, sample_covariance(), 0.3, Axis::x));
  }
}
BENCHMARK(BM_AnalyticChannel);

void BM_ThetaClosedForm(benchmark::State& state) {
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(theta_general(sample_covariance(), t));
    t += 1e-6;
  }
}
BENCHMARK(BM_ThetaClosedForm);

void BM_Pipeline(benchmark::State& state) {
  const PipelineConfig cfg{.data = {0.0, 0.6, 0.8},
                           .channel = NoiseChannel{AnalyticAverage{}, Axis::x, sample_covariance()}};
  for (auto _ : state) benchmark::DoNotOptimize(run_pipeline(cfg, 0.3));
}
BENCHMARK(BM_Pipeline);

void BM_PipelineMc(benchmark::State& state) {
  const PipelineConfig cfg{.data = {0.0, 0.0, 1.0},
                           .channel = NoiseChannel{AnalyticAverage{}, Axis::x, sample_covariance()}};
  const auto samples = static_cast<std::size_t>(state.range(0));
  const auto threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(run_pipeline_mc(cfg, 0.3, samples, 7, threads));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * samples));
}
BENCHMARK(BM_PipelineMc)->Args({10000, 1})->Args({10000, 0})->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_NogoSearch(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(mixed_ancilla_nogo_search(sample_covariance(), 0.01));
}
BENCHMARK(BM_NogoSearch)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
