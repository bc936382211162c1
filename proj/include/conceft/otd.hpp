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

#include <span>
#include <vector>

namespace conceft {

// Per-slice probability measure on a frequency axis.
struct SliceMeasure {
  std::vector<double> freqs_hz;
  std::vector<double> mass;
  bool empty = false;
  double clipped_mass = 0.0;  // total negative mass removed before normalizing
};

// Clips negatives to 0 (recording the clipped mass), then divides by the sum.
// A slice whose sum is below 1e-300 is flagged empty.
SliceMeasure normalize_slice(std::span<const double> values, const std::vector<double>& freqs_hz);

// sum_i |F_mu(i) - F_nu(i)| (f_{i+1} - f_i) over the cumulative sums, which
// is the exact transport cost between the two discrete measures. Throws on
// axis mismatch or an empty measure.
double otd(const SliceMeasure& mu, const SliceMeasure& nu);

struct SlicePolicy {
  bool skip_boundary_frames = false;
};

struct MeanOtd {
  double value = 0.0;
  std::size_t n_used = 0;
  std::size_t n_skipped = 0;
  double clipped_fraction = 0.0;  // clipped negative mass / positive mass of the estimate
};

// Average per-slice OTD over slices where both measures are nonempty.
// Requires identical axes. Throws when no slice qualifies.
MeanOtd mean_otd(const RealGrid& tfr, const RealGrid& truth, const SlicePolicy& policy = {});

}  // namespace conceft
