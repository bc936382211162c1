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

#include <cstddef>

namespace conceft {

// Smoothing configuration shared by the pseudo and Cohen-class variants.
// Frames and frequencies follow the STFT lattice convention: frame centers at
// sample indices 0, hop, 2 hop, ... and bins k fs / n_fft for k = 0..n_fft/2.
struct CohenConfig {
  std::size_t time_window_samples = 109;  // Hann time smoothing, odd
  std::size_t freq_window_samples = 273;  // Hann lag window, odd
  double cwd_sigma = 1.0;
  std::size_t hop = 1;
  std::size_t n_fft = 512;
};

// Lag window about 2.5 times the time window, rounded to the nearest odd length.
CohenConfig cohen_config_for(std::size_t time_window_samples, std::size_t hop, std::size_t n_fft);

// Positive-frequency projection: DC and Nyquist kept, positive bins doubled,
// negative bins zeroed. Complex inputs are returned unchanged.
Signal analytic_signal(const Signal& s);

// W(t, nu) = sum_tau z(t + tau/2) conj(z(t - tau/2)) exp(-i 2 pi nu tau) dtau on
// the analytic signal, with every available lag. Values are a real density
// per Hz whose integral over [0, fs/2) is |z(t)|^2. Each lattice bin holds
// the trapezoidal average of the finer lag-transform samples it covers.
RealGrid wigner_ville(const Signal& signal, std::size_t hop, std::size_t n_fft);

// Smoothed pseudo Wigner-Ville: Hann lag window (peak 1) and a Hann time
// smoothing window normalized to unit sum.
RealGrid spwv(const Signal& signal, const CohenConfig& cfg);

// Choi-Williams: per lag m the time kernel exp(-sigma p^2 / (16 m^2)) times
// the Hann time window, normalized to unit sum (a delta at m = 0), under the
// same Hann lag window.
RealGrid cwd(const Signal& signal, const CohenConfig& cfg);

}  // namespace conceft
