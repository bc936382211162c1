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

#include "conceft/scalogram.hpp"

#include "conceft/fft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace conceft {

RealGrid scalogram(const Signal& signal, const ScalogramConfig& cfg) {
  const double fs = signal.sample_rate_hz();
  const double f_max = cfg.f_max_hz > 0.0 ? cfg.f_max_hz : fs / 2.0;
  if (!(cfg.f_min_hz > 0.0) || !(f_max > cfg.f_min_hz) || f_max > fs / 2.0 * (1.0 + 1e-12))
    throw std::invalid_argument("scalogram: empty or invalid frequency range");
  if (cfg.voices_per_octave < 1) throw std::invalid_argument("scalogram: voices_per_octave must be >= 1");

  const auto n_voices =
      static_cast<std::size_t>(std::floor(std::log2(f_max / cfg.f_min_hz) * cfg.voices_per_octave + 1e-9)) + 1;
  std::vector<double> freqs(n_voices);
  for (std::size_t v = 0; v < n_voices; ++v)
    freqs[v] = cfg.f_min_hz * std::exp2(static_cast<double>(v) / cfg.voices_per_octave);

  const std::size_t N = signal.size();
  std::vector<double> times(N);
  for (std::size_t n = 0; n < N; ++n) times[n] = signal.time_at(n);
  RealGrid out(times, freqs, GridKind::power);

  // Zero padding to twice the record keeps circular wrap-around away from
  // the record for all scales within the band.
  const std::size_t M = next_pow2(2 * N);
  const Fft fft(M);
  std::vector<cplx> spec(M, 0.0);
  std::copy(signal.samples().begin(), signal.samples().end(), spec.begin());
  fft.forward(spec, spec);

  const auto nv = static_cast<std::ptrdiff_t>(n_voices);
#pragma omp parallel
  {
    std::vector<cplx> buf(M);
#pragma omp for schedule(static)
    for (std::ptrdiff_t v = 0; v < nv; ++v) {
      const double s = cfg.omega0 / (2.0 * std::numbers::pi * freqs[static_cast<std::size_t>(v)]);
      for (std::size_t k = 0; k < M; ++k) {
        const double xi = (k <= M / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(M)) *
                          fs / static_cast<double>(M);
        const double w = 2.0 * std::numbers::pi * s * xi - cfg.omega0;
        buf[k] = spec[k] * (std::exp(-0.5 * w * w) / static_cast<double>(M));
      }
      fft.inverse(buf, buf);
      for (std::size_t n = 0; n < N; ++n) out.at(n, static_cast<std::size_t>(v)) = std::norm(buf[n]);
    }
  }
  return out;
}

std::vector<double> axis_edges(const std::vector<double>& c) {
  if (c.empty()) return {};
  std::vector<double> e(c.size() + 1);
  if (c.size() == 1) {
    e[0] = c[0] - 0.5;
    e[1] = c[0] + 0.5;
    return e;
  }
  for (std::size_t i = 1; i < c.size(); ++i) e[i] = 0.5 * (c[i - 1] + c[i]);
  e.front() = c.front() - (e[1] - c.front());
  e.back() = c.back() + (c.back() - e[c.size() - 1]);
  return e;
}

RealGrid rebin_frequency(const RealGrid& grid, const std::vector<double>& dst_times_s,
                         const std::vector<double>& dst_freqs_hz) {
  const auto se = axis_edges(grid.freqs_hz);
  const auto de = axis_edges(dst_freqs_hz);
  RealGrid out(dst_times_s, dst_freqs_hz, grid.kind);

  // Overlap matrix, sparse by construction: each source bin touches a
  // contiguous range of destination bins.
  struct Piece {
    std::size_t dst;
    double frac;  // fraction of the source bin's mass
  };
  std::vector<std::vector<Piece>> pieces(grid.n_freqs());
  for (std::size_t i = 0; i < grid.n_freqs(); ++i) {
    const double lo = se[i], hi = se[i + 1];
    const double width = hi - lo;
    auto j = static_cast<std::size_t>(std::upper_bound(de.begin(), de.end(), lo) - de.begin());
    j = j == 0 ? 0 : j - 1;
    for (; j < dst_freqs_hz.size() && de[j] < hi; ++j) {
      const double ov = std::min(hi, de[j + 1]) - std::max(lo, de[j]);
      if (ov > 0.0) pieces[i].push_back({j, ov / width});
    }
  }

  for (std::size_t t = 0; t < dst_times_s.size(); ++t) {
    const auto it = std::lower_bound(grid.times_s.begin(), grid.times_s.end(), dst_times_s[t]);
    std::size_t src = static_cast<std::size_t>(it - grid.times_s.begin());
    if (src == grid.n_times()) src = grid.n_times() - 1;
    if (src > 0 && std::abs(grid.times_s[src - 1] - dst_times_s[t]) <= std::abs(grid.times_s[src] - dst_times_s[t]))
      --src;
    auto row = out.row(t);
    for (std::size_t i = 0; i < grid.n_freqs(); ++i) {
      const double mass = grid.at(src, i) * (se[i + 1] - se[i]);
      for (const auto& p : pieces[i]) row[p.dst] += mass * p.frac;
    }
    for (std::size_t j = 0; j < row.size(); ++j) row[j] /= de[j + 1] - de[j];
    if (!grid.boundary.empty()) out.boundary[t] = grid.boundary[src];
  }
  return out;
}

}  // namespace conceft
