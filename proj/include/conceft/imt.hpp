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

#include "conceft/signal.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace conceft {

// a + S_c{W} / (b max S_c{W}) on t = 0, 1/fs, ..., with W a standard Brownian
// path in milliseconds and S_c a Gaussian-kernel local linear smoother of
// bandwidth c ms (kernel cut at 6c).
struct BrownianEnvelope {
  double a = 0.0;
  double b = 1.0;
  double c_ms = 1.0;
  double L_ms = 32.0;
  double fs_hz = 32000.0;
  std::vector<double> values;
  std::uint64_t seed = 0;       // requested seed
  std::uint64_t used_seed = 0;  // seed of the accepted path
  int regenerations = 0;
};

// When max S_c{W} <= 0 the path is redrawn with seed + k 2^32 (k = 1, 2, ...).
BrownianEnvelope brownian_envelope(double a, double b, double c_ms, double L_ms, double fs_hz, std::uint64_t seed);

// Gaussian-kernel local linear regression of y(t) at every sample, bandwidth
// in samples.
std::vector<double> local_linear_smooth(const std::vector<double>& y, double bandwidth_samples);

struct ComponentSpec {
  std::vector<double> amplitude;     // A_l(t) on the full record
  std::vector<double> taper;         // support mask with raised-cosine edges
  std::vector<double> phase_cycles;  // unwrapped phase / 2 pi
  std::vector<double> if_hz;         // d(phase_cycles)/dt
  double start_ms = 0.0;
  double end_ms = 0.0;

  // Effective amplitude A_l(t) taper(t).
  double effective_amplitude(std::size_t n) const { return amplitude[n] * taper[n]; }
  // Inside the support and past the edge ramps.
  bool on_plateau(std::size_t n) const { return taper[n] >= 1.0; }
};

struct GroundTruth {
  Signal signal;  // Re{sum_l A_l taper_l exp(i 2 pi phase_l)}
  std::vector<cplx> analytic;  // the complex sum before taking the real part
  std::array<ComponentSpec, 3> components;
  std::uint64_t seed = 0;
  int attempts = 1;  // number of draws until the validity checks passed
};

inline constexpr double kImtSampleRate = 32000.0;
inline constexpr double kImtDurationMs = 32.0;
inline constexpr double kImtEdgeMs = 0.5;
inline constexpr double kImtMinSeparationHz = 500.0;

// The three-component test signal: a 1/t-law chirp on [1, 20] ms, a
// modulated 5 kHz component on [2, 25] ms and a 3141 Hz tone on [3, 10] ms,
// with Brownian amplitude and phase perturbations. Draws failing the IF,
// amplitude or separation checks (checked on the plateaus) are redrawn.
GroundTruth three_component_signal(std::uint64_t seed);

// Validity checks used by three_component_signal; returns an empty string or
// the reason for rejection.
std::string check_components(const std::array<ComponentSpec, 3>& comps);

// Per slice, each active component deposits its effective amplitude (or its
// square) in the frequency bin nearest its IF. Slices are matched to samples
// by nearest time. Throws when an active IF falls outside the axis.
RealGrid ideal_tfr(const GroundTruth& truth, const std::vector<double>& times_s, const std::vector<double>& freqs_hz,
                   bool squared_weights = false);

// "time_s,amp_1,if_1_hz,amp_2,if_2_hz,amp_3,if_3_hz" (effective amplitudes).
void write_components_csv(const std::filesystem::path& path, const GroundTruth& truth);

}  // namespace conceft
