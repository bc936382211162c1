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

#pragma once

#include "conceft/imt.hpp"
#include "conceft/io.hpp"
#include "conceft/scalogram.hpp"
#include "conceft/signal.hpp"
#include "conceft/sst.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace conceft {

enum class Method { scalogram, spwv, cwd, sst1, sst2, conceft };

std::string method_name(Method m);
// Accepts scalogram, spwv, cwd, sst1, sst2, conceft (case-insensitive).
// Throws std::invalid_argument("unknown method: ...") otherwise.
Method parse_method(const std::string& name);
std::vector<Method> all_methods();

// Shared analysis lattice and per-method settings. Every method is evaluated
// on (or rebinned to) the STFT lattice: frames every `hop` samples, bins
// k fs / n_fft.
struct AnalysisSetup {
  double sigma_s = 5e-3 / 12.0;
  std::size_t window_length = 0;  // 0 selects the shortest length covering +-4 sigma
  std::size_t hop = 4;
  std::size_t n_fft = 512;
  double gamma_rel = 1e-4;
  int conceft_J = 2;
  int conceft_N = 30;
  Averaging averaging = Averaging::modulus;
  ScalogramConfig scalogram;
  double cwd_sigma = 1.0;

  std::size_t resolved_window_length(double fs) const;
  StftConfig stft_config() const { return {hop, n_fft}; }
  void record(KeyValue& kv, const std::string& prefix = "") const;
};

// Power grid of one method on the shared lattice. conceft_seed is the master
// seed of the sphere samples (ignored by other methods).
RealGrid analyze_method(Method m, const Signal& signal, const AnalysisSetup& setup, std::uint64_t conceft_seed);

struct BenchmarkConfig {
  std::vector<Method> methods = all_methods();
  std::vector<double> snr_db = {100.0, 10.0, 5.0, 2.0, 0.0};
  std::size_t n_realizations = 30;
  std::uint64_t master_seed = 1;
  std::uint64_t signal_seed = 1;
  bool squared_itfr = false;
  bool skip_boundary_frames = false;
  AnalysisSetup setup;
};

inline constexpr std::uint64_t kNoiseStream = 0x4E4F495345000001ULL;
inline constexpr std::uint64_t kConceftStream = 0x434F4E4345465401ULL;

struct BenchmarkReport {
  std::vector<std::string> methods;
  std::vector<double> snr_db;
  // [snr][method], OTD in Hz.
  std::vector<std::vector<double>> mean_otd;
  std::vector<std::vector<double>> std_otd;
  // [snr][method][realization]
  std::vector<std::vector<std::vector<double>>> scores;
  std::size_t n_realizations = 0;
  std::vector<std::uint64_t> noise_seeds;  // per realization, shared across SNR rows
  KeyValue manifest;
};

// Deterministic for a given configuration, independent of thread count.
BenchmarkReport run_benchmark(const BenchmarkConfig& cfg);

// Rows = SNR, columns = methods, cells "mean (std)" in kHz with two decimals.
void write_table_csv(const std::filesystem::path& path, const BenchmarkReport& r);
// "snr_db,method,realization,noise_seed,otd_khz" with full precision.
void write_long_csv(const std::filesystem::path& path, const BenchmarkReport& r);

}  // namespace conceft
