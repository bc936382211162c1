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
#include "conceft/windows.hpp"

#include <cstddef>

namespace conceft {

struct StftConfig {
  std::size_t hop = 1;
  // 0 selects default_n_fft(window length).
  std::size_t n_fft = 0;
};

// Next power of two >= 4x the window length.
std::size_t default_n_fft(std::size_t window_length);

// Frame centers are sample indices 0, hop, 2 hop, ...; frequencies are
// k fs / n_fft for k = 0..n_fft/2.
struct Lattice {
  std::size_t n_samples = 0;
  double sample_rate_hz = 0.0;
  double t0_s = 0.0;
  std::size_t hop = 1;
  std::size_t n_fft = 0;

  std::size_t n_frames() const { return (n_samples + hop - 1) / hop; }
  std::size_t n_freqs() const { return n_fft / 2 + 1; }
  double freq_step_hz() const { return sample_rate_hz / static_cast<double>(n_fft); }
  std::vector<double> times_s() const;
  std::vector<double> freqs_hz() const;
};

Lattice make_lattice(const Signal& signal, std::size_t window_length, const StftConfig& cfg);

// V(t, nu) = sum_tau f(tau) h(tau - t) exp(-i 2 pi nu (tau - t)) dtau with the
// modulation centered on the frame time, so a pure tone's coefficient phase
// advances as exp(i 2 pi f0 t). Frames are zero-padded past the record edges
// and flagged as boundary frames. Uses window 0 of the family.
ComplexGrid stft(const Signal& signal, const WindowFamily& window, const StftConfig& cfg);

// The five transforms the reassignment rules consume, on one lattice.
struct StftFamily {
  ComplexGrid v_h;
  ComplexGrid v_dh;
  ComplexGrid v_ddh;
  ComplexGrid v_th;
  ComplexGrid v_tdh;
  Lattice lattice;
};

StftFamily stft_family(const Signal& signal, const WindowFamily& window, const StftConfig& cfg);

}  // namespace conceft
