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

#include "conceft/stft.hpp"

#include "conceft/fft.hpp"

#include <array>
#include <stdexcept>

namespace conceft {

std::size_t default_n_fft(std::size_t window_length) { return next_pow2(4 * window_length); }

std::vector<double> Lattice::times_s() const {
  std::vector<double> t(n_frames());
  for (std::size_t m = 0; m < t.size(); ++m) t[m] = t0_s + static_cast<double>(m * hop) / sample_rate_hz;
  return t;
}

std::vector<double> Lattice::freqs_hz() const {
  std::vector<double> f(n_freqs());
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = static_cast<double>(k) * freq_step_hz();
  return f;
}

Lattice make_lattice(const Signal& signal, std::size_t window_length, const StftConfig& cfg) {
  if (cfg.hop < 1) throw std::invalid_argument("stft: hop must be >= 1");
  if (window_length > signal.size()) throw std::invalid_argument("stft: window longer than signal");
  Lattice lat;
  lat.n_samples = signal.size();
  lat.sample_rate_hz = signal.sample_rate_hz();
  lat.t0_s = signal.t0_s();
  lat.hop = cfg.hop;
  lat.n_fft = cfg.n_fft == 0 ? default_n_fft(window_length) : cfg.n_fft;
  if (lat.n_fft < window_length) throw std::invalid_argument("stft: n_fft shorter than window");
  return lat;
}

namespace {

// Computes one grid per requested window on a shared lattice. Frames are
// independent; each worker owns its FFT buffer, so the output does not depend
// on the schedule.
template <std::size_t K>
std::array<ComplexGrid, K> stft_many(const Signal& signal, const std::array<const std::vector<cplx>*, K>& wins,
                                     const Lattice& lat) {
  const std::size_t L = wins[0]->size();
  const auto half = static_cast<std::ptrdiff_t>((L - 1) / 2);
  const auto N = static_cast<std::ptrdiff_t>(signal.size());
  const std::size_t nfft = lat.n_fft;
  const std::size_t nf = lat.n_freqs();
  const auto nframes = static_cast<std::ptrdiff_t>(lat.n_frames());
  const double dt = 1.0 / lat.sample_rate_hz;
  const auto x = signal.samples();
  const Fft fft(nfft);

  std::array<ComplexGrid, K> out;
  for (auto& g : out) g = ComplexGrid(lat.times_s(), lat.freqs_hz(), GridKind::complex_coefficients);

#pragma omp parallel
  {
    std::vector<cplx> buf(nfft);
#pragma omp for schedule(static)
    for (std::ptrdiff_t m = 0; m < nframes; ++m) {
      const std::ptrdiff_t c = m * static_cast<std::ptrdiff_t>(lat.hop);
      const bool boundary = c - half < 0 || c + half >= N;
      for (std::size_t w = 0; w < K; ++w) {
        const auto& h = *wins[w];
        std::fill(buf.begin(), buf.end(), cplx(0.0, 0.0));
        // Sample at offset u from the frame center goes to FFT index u mod
        // n_fft, which puts the modulation reference at the frame time.
        for (std::ptrdiff_t u = -half; u <= half; ++u) {
          const std::ptrdiff_t n = c + u;
          if (n < 0 || n >= N) continue;
          const auto idx = static_cast<std::size_t>(u < 0 ? u + static_cast<std::ptrdiff_t>(nfft) : u);
          buf[idx] = x[static_cast<std::size_t>(n)] * h[static_cast<std::size_t>(u + half)];
        }
        fft.forward(buf, buf);
        auto row = out[w].row(static_cast<std::size_t>(m));
        for (std::size_t k = 0; k < nf; ++k) row[k] = buf[k] * dt;
        out[w].boundary[static_cast<std::size_t>(m)] = boundary ? 1 : 0;
      }
    }
  }
  return out;
}

void check_family(const WindowFamily& window) {
  if (window.size() != 1) throw std::invalid_argument("stft: expects a single-window family (J = 1)");
}

}  // namespace

ComplexGrid stft(const Signal& signal, const WindowFamily& window, const StftConfig& cfg) {
  check_family(window);
  const Lattice lat = make_lattice(signal, window.length, cfg);
  auto grids = stft_many<1>(signal, {&window.tapers[0].h}, lat);
  return std::move(grids[0]);
}

StftFamily stft_family(const Signal& signal, const WindowFamily& window, const StftConfig& cfg) {
  check_family(window);
  const Lattice lat = make_lattice(signal, window.length, cfg);
  const Taper& t = window.tapers[0];
  auto g = stft_many<5>(signal, {&t.h, &t.dh, &t.ddh, &t.th, &t.tdh}, lat);
  StftFamily fam;
  fam.v_h = std::move(g[0]);
  fam.v_dh = std::move(g[1]);
  fam.v_ddh = std::move(g[2]);
  fam.v_th = std::move(g[3]);
  fam.v_tdh = std::move(g[4]);
  fam.lattice = lat;
  return fam;
}

}  // namespace conceft
