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

#include "conceft/otd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace conceft {

SliceMeasure normalize_slice(std::span<const double> values, const std::vector<double>& freqs_hz) {
  if (values.size() != freqs_hz.size()) throw std::invalid_argument("normalize_slice: length mismatch");
  SliceMeasure m;
  m.freqs_hz = freqs_hz;
  m.mass.resize(values.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    double v = values[i];
    if (v < 0.0) {
      m.clipped_mass -= v;
      v = 0.0;
    }
    m.mass[i] = v;
    sum += v;
  }
  if (!(sum >= 1e-300)) {
    m.empty = true;
    std::fill(m.mass.begin(), m.mass.end(), 0.0);
    return m;
  }
  for (double& v : m.mass) v /= sum;
  return m;
}

double otd(const SliceMeasure& mu, const SliceMeasure& nu) {
  if (mu.freqs_hz != nu.freqs_hz) throw std::invalid_argument("otd: frequency grids differ");
  if (mu.empty || nu.empty) throw std::invalid_argument("otd: empty measure");
  double F = 0.0, G = 0.0, acc = 0.0;
  for (std::size_t i = 0; i + 1 < mu.mass.size(); ++i) {
    F += mu.mass[i];
    G += nu.mass[i];
    acc += std::abs(F - G) * (mu.freqs_hz[i + 1] - mu.freqs_hz[i]);
  }
  return acc;
}

MeanOtd mean_otd(const RealGrid& tfr, const RealGrid& truth, const SlicePolicy& policy) {
  if (!tfr.same_axes(truth)) throw std::invalid_argument("mean_otd: lattices differ");
  MeanOtd r;
  double sum = 0.0, clipped = 0.0, positive = 0.0;
  for (std::size_t t = 0; t < tfr.n_times(); ++t) {
    if (policy.skip_boundary_frames && !tfr.boundary.empty() && tfr.boundary[t]) {
      ++r.n_skipped;
      continue;
    }
    const SliceMeasure a = normalize_slice(tfr.row(t), tfr.freqs_hz);
    const SliceMeasure b = normalize_slice(truth.row(t), truth.freqs_hz);
    clipped += a.clipped_mass;
    for (double v : tfr.row(t)) positive += std::max(v, 0.0);
    if (a.empty || b.empty) {
      ++r.n_skipped;
      continue;
    }
    sum += otd(a, b);
    ++r.n_used;
  }
  if (r.n_used == 0) throw std::invalid_argument("mean_otd: no slice with both measures nonempty");
  r.value = sum / static_cast<double>(r.n_used);
  r.clipped_fraction = positive > 0.0 ? clipped / positive : 0.0;
  return r;
}

}  // namespace conceft
