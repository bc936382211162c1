// Copyright 2026 The conceft-oae Authors
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

// Serial reference kernels against the parallel ones on the benchmark lattice.
// Thread counts are swept through the benchmark argument where it applies.

#include "conceft/imt.hpp"
#include "conceft/reference.hpp"
#include "conceft/sst.hpp"
#include "conceft/stft.hpp"
#include "conceft/windows.hpp"

#include <benchmark/benchmark.h>
#include <omp.h>

namespace {

using namespace conceft;

constexpr double kFs = 32000.0;
constexpr double kSigma = 5e-3 / 12.0;
constexpr std::size_t kLength = 109;
const StftConfig kLattice{4, 512};

const Signal& test_signal() {
  static const Signal s = three_component_signal(1).signal;
  return s;
}

void BM_stft_direct(benchmark::State& state) {
  const WindowFamily w = gaussian_window(kSigma, kLength, kFs);
  for (auto _ : state) benchmark::DoNotOptimize(reference::stft_direct(test_signal(), w.tapers[0].h, kLattice));
}
BENCHMARK(BM_stft_direct)->Unit(benchmark::kMillisecond);

void BM_stft_fft(benchmark::State& state) {
  const WindowFamily w = gaussian_window(kSigma, kLength, kFs);
  omp_set_num_threads(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(stft(test_signal(), w, kLattice));
}
BENCHMARK(BM_stft_fft)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_conceft_serial(benchmark::State& state) {
  const WindowFamily w = hermite_windows(2, kSigma, kLength, kFs);
  ConceftConfig cfg;
  cfg.n_realizations = 8;
  const auto samples = conceft_sphere_samples(2, cfg);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        reference::conceft_serial(test_signal(), w, samples, cfg.sst, cfg.averaging, kLattice));
}
BENCHMARK(BM_conceft_serial)->Unit(benchmark::kMillisecond);

void BM_conceft_parallel(benchmark::State& state) {
  const WindowFamily w = hermite_windows(2, kSigma, kLength, kFs);
  ConceftConfig cfg;
  cfg.n_realizations = 8;
  const auto samples = conceft_sphere_samples(2, cfg);
  omp_set_num_threads(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(conceft_with_samples(test_signal(), w, samples, cfg.sst, cfg.averaging, kLattice));
}
BENCHMARK(BM_conceft_parallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
