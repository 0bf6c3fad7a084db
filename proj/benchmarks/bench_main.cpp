// SPDX-License-Identifier: Apache-2.0
//
// oobsim - antenna array out-of-band emission simulator
// Copyright (C) 2026 The oobsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <benchmark/benchmark.h>

#include "oobsim/amplifier.hpp"
#include "oobsim/analysis.hpp"
#include "oobsim/array.hpp"
#include "oobsim/spectrum.hpp"
#include "oobsim/waveform.hpp"

using namespace oobsim;

static void BM_PaApply(benchmark::State& state) {
    const auto x = gen_complex_gaussian(1.0, static_cast<std::size_t>(state.range(0)), 1);
    const auto pa = pa_preset("ninth_order_synthetic");
    for (auto _ : state) benchmark::DoNotOptimize(apply_baseband_polynomial(x, pa));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PaApply)->Arg(1 << 14)->Arg(1 << 17);

static void BM_PowerSpectrum(benchmark::State& state) {
    const auto x = gen_complex_gaussian(1.0, 100000, 2, 122.88e6);
    for (auto _ : state) benchmark::DoNotOptimize(power_spectrum(x, 4096));
}
BENCHMARK(BM_PowerSpectrum);

static void BM_Ofdm(benchmark::State& state) {
    OfdmConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(gen_ofdm(cfg, 1.0, 3, 100000));
}
BENCHMARK(BM_Ofdm)->Unit(benchmark::kMillisecond);

static void BM_Beampattern(benchmark::State& state) {
    const int M = static_cast<int>(state.range(0));
    ArrayConfig array{M, 0.5};
    std::vector<UserConfig> users{{-15.0, gen_complex_gaussian(1.0, 1 << 15, 4, 122.88e6), 1.0},
                                  {12.0, gen_complex_gaussian(1.0, 1 << 15, 5, 122.88e6), 1.0}};
    const auto pre = precode(users, array, 1.0);
    const auto grid = angle_grid(-90, 90, 0.1);
    for (auto _ : state) benchmark::DoNotOptimize(beampattern(pre.antennas, grid, 20e6, array));
}
BENCHMARK(BM_Beampattern)->Arg(16)->Arg(60)->Unit(benchmark::kMillisecond);

static void BM_MonteCarloGain(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(beamforming_gain_monte_carlo(60, 0.5, DeviationFamily::gaussian, 10000, 1));
}
BENCHMARK(BM_MonteCarloGain)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
