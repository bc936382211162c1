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

#include <vector>

namespace conceft {

// Morlet scalogram configuration. The mother wavelet is
// psi(t) proportional to exp(i w0 t) exp(-t^2 / 2) (analytic approximation,
// w0 >= 5).
struct ScalogramConfig {
  int voices_per_octave = 32;
  double f_min_hz = 125.0;
  double f_max_hz = 0.0;  // 0 selects fs / 2
  double omega0 = 6.0;
};

// Squared modulus of the continuous wavelet transform on a log-spaced
// frequency axis (one row per sample time). The wavelet is amplitude
// normalized (its spectrum peaks at 1 at every scale), so a tone of
// amplitude A peaks on its own frequency with value A^2.
RealGrid scalogram(const Signal& signal, const ScalogramConfig& cfg);

// Edges (length n+1) of a strictly increasing axis, midpoint rule, with the
// outer edges mirrored.
std::vector<double> axis_edges(const std::vector<double>& centers);

// Mass-conserving rebinning of a density grid onto another frequency axis and
// a subset of time rows. Each source cell's mass (density x bin width) is
// split among destination bins in proportion to overlap; destination values
// are densities again. Time rows are picked by nearest source time.
RealGrid rebin_frequency(const RealGrid& grid, const std::vector<double>& dst_times_s,
                         const std::vector<double>& dst_freqs_hz);

}  // namespace conceft
