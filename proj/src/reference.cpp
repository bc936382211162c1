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

#include "conceft/reference.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace conceft::reference {

ComplexGrid stft_direct(const Signal& signal, const std::vector<cplx>& window, const StftConfig& cfg) {
  const Lattice lat = make_lattice(signal, window.size(), cfg);
  ComplexGrid g(lat.times_s(), lat.freqs_hz(), GridKind::complex_coefficients);
  const auto half = static_cast<std::ptrdiff_t>((window.size() - 1) / 2);
  const auto N = static_cast<std::ptrdiff_t>(signal.size());
  const auto x = signal.samples();
  const double dt = 1.0 / lat.sample_rate_hz;
  const double w0 = -2.0 * std::numbers::pi / static_cast<double>(lat.n_fft);
  for (std::size_t m = 0; m < lat.n_frames(); ++m) {
    const auto c = static_cast<std::ptrdiff_t>(m * lat.hop);
    g.boundary[m] = (c - half < 0 || c + half >= N) ? 1 : 0;
    for (std::size_t k = 0; k < lat.n_freqs(); ++k) {
      cplx acc = 0.0;
      for (std::ptrdiff_t u = -half; u <= half; ++u) {
        const std::ptrdiff_t n = c + u;
        if (n < 0 || n >= N) continue;
        // Reduce k u modulo n_fft so the twiddle argument stays small.
        const auto ku = static_cast<std::ptrdiff_t>(k) * u % static_cast<std::ptrdiff_t>(lat.n_fft);
        acc += x[static_cast<std::size_t>(n)] * window[static_cast<std::size_t>(u + half)] *
               std::polar(1.0, w0 * static_cast<double>(ku));
      }
      g.at(m, k) = acc * dt;
    }
  }
  return g;
}

StftFamily stft_family_direct(const Signal& signal, const WindowFamily& window, const StftConfig& cfg) {
  if (window.size() != 1) throw std::invalid_argument("stft_family_direct: expects J = 1");
  const Taper& t = window.tapers[0];
  StftFamily f;
  f.v_h = stft_direct(signal, t.h, cfg);
  f.v_dh = stft_direct(signal, t.dh, cfg);
  f.v_ddh = stft_direct(signal, t.ddh, cfg);
  f.v_th = stft_direct(signal, t.th, cfg);
  f.v_tdh = stft_direct(signal, t.tdh, cfg);
  f.lattice = make_lattice(signal, window.length, cfg);
  return f;
}

RealGrid conceft_serial(const Signal& signal, const WindowFamily& family, const std::vector<SphereSample>& samples,
                        const SstConfig& sst_cfg, Averaging averaging, const StftConfig& lattice) {
  if (samples.empty()) throw std::invalid_argument("conceft_serial: no samples");
  std::vector<cplx> csum;
  std::vector<double> rsum;
  RealGrid out;
  for (const auto& s : samples) {
    const StftFamily fam = stft_family_direct(signal, combine(family, s), lattice);
    const SstResult r = synchrosqueeze(fam, reassign(fam, sst_cfg), fam.v_h.freqs_hz, sst_cfg.assignment);
    if (csum.empty()) {
      csum.assign(r.grid.values.size(), 0.0);
      rsum.assign(r.grid.values.size(), 0.0);
      out = RealGrid(r.grid.times_s, r.grid.freqs_hz, GridKind::power);
      out.boundary = r.grid.boundary;
    }
    for (std::size_t i = 0; i < csum.size(); ++i) {
      csum[i] += r.grid.values[i];
      rsum[i] += averaging == Averaging::modulus ? std::abs(r.grid.values[i]) : std::norm(r.grid.values[i]);
    }
  }
  const double inv = 1.0 / static_cast<double>(samples.size());
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    if (averaging == Averaging::complex)
      out.values[i] = std::norm(csum[i] * inv);
    else if (averaging == Averaging::modulus)
      out.values[i] = (rsum[i] * inv) * (rsum[i] * inv);
    else
      out.values[i] = rsum[i] * inv;
  }
  return out;
}

}  // namespace conceft::reference
