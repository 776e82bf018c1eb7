// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "ris/ao.hpp"
#include "ris/experiment.hpp"
#include "ris/lpsnet.hpp"

namespace {

ris::ChannelTriple instance(const ris::Dims& dims, std::uint64_t seed) {
  return ris::gen_channel_triple(dims, seed, seed + 1, ris::ChannelTemplate{});
}

ris::Dims dims_for(const benchmark::State& state) {
  return {static_cast<std::size_t>(state.range(0)), 2, static_cast<std::size_t>(state.range(1))};
}

const ris::Snr kRho(ris::rho_from_power(40.0, 10e6, -170.0));

void BM_SpectralEfficiency(benchmark::State& state) {
  const ris::Dims dims = dims_for(state);
  const ris::RankOneTerms terms = ris::rank_one_terms(instance(dims, 1));
  const ris::PhaseVector theta = ris::random_phases(dims.n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(ris::spectral_efficiency(terms, theta, kRho));
}

void BM_LpsnetInference(benchmark::State& state) {
  const ris::Dims dims = dims_for(state);
  const ris::NormalizedTriple ch = ris::normalize_triple(instance(dims, 1));
  const ris::MLPParams net =
      ris::MLPParams::glorot(ris::MLPConfig::for_system(dims, ris::InputMode::structured), 3);
  for (auto _ : state) {
    const ris::RankOneTerms terms = ris::rank_one_terms(ch);
    benchmark::DoNotOptimize(ris::infer_phases(net, terms));
  }
}

void BM_AoOptimize(benchmark::State& state) {
  const ris::Dims dims = dims_for(state);
  const ris::ChannelTriple raw = instance(dims, 1);
  ris::AoConfig cfg;
  for (auto _ : state) {
    const ris::RankOneTerms terms = ris::rank_one_terms(raw);
    benchmark::DoNotOptimize(ris::ao_optimize(terms, kRho, cfg).se);
  }
}

void BM_SeGradient(benchmark::State& state) {
  const ris::Dims dims = dims_for(state);
  const ris::RankOneTerms terms = ris::rank_one_terms(ris::normalize_triple(instance(dims, 1)));
  const ris::PhaseVector theta = ris::random_phases(dims.n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(ris::se_gradient(terms, theta, ris::Snr(100.0)));
}

}  // namespace

BENCHMARK(BM_SpectralEfficiency)->Args({4, 8})->Args({8, 40})->Args({16, 40});
BENCHMARK(BM_SeGradient)->Args({4, 8})->Args({8, 40});
BENCHMARK(BM_LpsnetInference)->Args({4, 8})->Args({8, 40})->Args({8, 80})->Args({16, 40});
BENCHMARK(BM_AoOptimize)->Args({4, 8})->Args({8, 40})->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
