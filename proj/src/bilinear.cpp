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

#include "conceft/bilinear.hpp"

#include "conceft/fft.hpp"
#include "conceft/windows.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace conceft {

CohenConfig cohen_config_for(std::size_t time_window_samples, std::size_t hop, std::size_t n_fft) {
  CohenConfig c;
  c.time_window_samples = time_window_samples;
  auto f = static_cast<std::size_t>(std::lround(2.5 * static_cast<double>(time_window_samples)));
  if (f % 2 == 0) ++f;
  c.freq_window_samples = f;
  c.hop = hop;
  c.n_fft = n_fft;
  return c;
}

Signal analytic_signal(const Signal& s) {
  if (!s.is_real()) return s;
  const std::size_t N = s.size();
  const Fft fft(N);
  std::vector<cplx> X(s.samples().begin(), s.samples().end());
  fft.forward(X, X);
  for (std::size_t k = 1; k < N; ++k) {
    if (2 * k < N)
      X[k] *= 2.0;
    else if (2 * k > N)
      X[k] = 0.0;
  }
  fft.inverse(X, X);
  for (auto& v : X) v /= static_cast<double>(N);
  return Signal(std::move(X), s.sample_rate_hz(), s.t0_s(), false);
}

namespace {

// Time kernel for lag m: weights over time offsets p in [-P, P] (already
// normalized). Returning an empty vector means "no smoothing" (p = 0 only).
using TimeKernel = std::function<std::vector<double>(std::ptrdiff_t m)>;

// Shared core: for each frame n, a_m = sum_p k_m(p) z[n+p+m] conj(z[n+p-m]),
// times the lag window, then an FFT over m. Lag m corresponds to tau = 2m/fs,
// so FFT bin j of size P sits at j fs / (2P).
RealGrid cohen_core(const Signal& signal, std::size_t hop, std::size_t n_fft, std::ptrdiff_t max_lag,
                    const std::vector<double>& lag_window, const TimeKernel& kernel, std::ptrdiff_t time_half,
                    bool full_lags) {
  if (hop < 1) throw std::invalid_argument("bilinear: hop must be >= 1");
  if (n_fft < 2 || n_fft % 2 != 0) throw std::invalid_argument("bilinear: n_fft must be even");
  const Signal za = analytic_signal(signal);
  const auto z = za.samples();
  const auto N = static_cast<std::ptrdiff_t>(z.size());
  const double fs = signal.sample_rate_hz();

  std::size_t P = n_fft;
  while (P < static_cast<std::size_t>(2 * max_lag + 1)) P *= 2;
  const std::size_t r = 2 * P / n_fft;  // fine samples per lattice bin

  const std::size_t nframes = (z.size() + hop - 1) / hop;
  std::vector<double> times(nframes), freqs(n_fft / 2 + 1);
  for (std::size_t m = 0; m < nframes; ++m) times[m] = za.t0_s() + static_cast<double>(m * hop) / fs;
  for (std::size_t k = 0; k < freqs.size(); ++k) freqs[k] = static_cast<double>(k) * fs / static_cast<double>(n_fft);
  RealGrid out(times, freqs, GridKind::bilinear);

  // Kernels depend only on the lag; build them once.
  std::vector<std::vector<double>> kernels(static_cast<std::size_t>(max_lag + 1));
  for (std::ptrdiff_t m = 0; m <= max_lag; ++m) kernels[static_cast<std::size_t>(m)] = kernel(m);

  const Fft fft(P);
  const auto nfr = static_cast<std::ptrdiff_t>(nframes);
#pragma omp parallel
  {
    std::vector<cplx> a(P);
#pragma omp for schedule(static)
    for (std::ptrdiff_t f = 0; f < nfr; ++f) {
      const std::ptrdiff_t n = f * static_cast<std::ptrdiff_t>(hop);
      std::fill(a.begin(), a.end(), cplx(0.0, 0.0));
      const std::ptrdiff_t mlim = full_lags ? std::min({max_lag, n, N - 1 - n}) : max_lag;
      for (std::ptrdiff_t m = 0; m <= mlim; ++m) {
        const auto& k = kernels[static_cast<std::size_t>(m)];
        cplx acc = 0.0;
        if (k.empty()) {
          if (n + m < N && n - m >= 0) acc = z[static_cast<std::size_t>(n + m)] * std::conj(z[static_cast<std::size_t>(n - m)]);
        } else {
          const auto half = static_cast<std::ptrdiff_t>((k.size() - 1) / 2);
          for (std::ptrdiff_t p = -half; p <= half; ++p) {
            const std::ptrdiff_t i1 = n + p + m, i2 = n + p - m;
            if (i1 < 0 || i1 >= N || i2 < 0 || i2 >= N) continue;
            acc += k[static_cast<std::size_t>(p + half)] * z[static_cast<std::size_t>(i1)] *
                   std::conj(z[static_cast<std::size_t>(i2)]);
          }
        }
        const double w = lag_window.empty() ? 1.0 : lag_window[static_cast<std::size_t>(m)];
        acc *= w;
        a[static_cast<std::size_t>(m)] = acc;
        if (m > 0) a[P - static_cast<std::size_t>(m)] = std::conj(acc);
      }
      fft.forward(a, a);
      auto row = out.row(static_cast<std::size_t>(f));
      const double scale = 2.0 / fs;
      const auto Pi = static_cast<std::ptrdiff_t>(P);
      const auto half_r = static_cast<std::ptrdiff_t>(r / 2);
      for (std::size_t k = 0; k < row.size(); ++k) {
        const auto c = static_cast<std::ptrdiff_t>(k * r);
        double acc = 0.0;
        for (std::ptrdiff_t i = -half_r; i <= half_r; ++i) {
          const double wt = (i == -half_r || i == half_r) ? 0.5 : 1.0;
          acc += wt * a[static_cast<std::size_t>(((c + i) % Pi + Pi) % Pi)].real();
        }
        row[k] = scale * acc / static_cast<double>(r);
      }
      out.boundary[static_cast<std::size_t>(f)] =
          (n - time_half - max_lag < 0 || n + time_half + max_lag >= N) && !full_lags ? 1 : 0;
    }
  }
  return out;
}

void check_cfg(const Signal& s, const CohenConfig& cfg) {
  if (cfg.time_window_samples % 2 == 0 || cfg.freq_window_samples % 2 == 0)
    throw std::invalid_argument("bilinear: window lengths must be odd");
  if (cfg.time_window_samples > s.size() || cfg.freq_window_samples > s.size())
    throw std::invalid_argument("bilinear: windows longer than signal");
  if (!(cfg.cwd_sigma > 0.0)) throw std::invalid_argument("bilinear: cwd_sigma must be positive");
}

// Hann lag window indexed by m = 0..M (peak 1 at m = 0).
std::vector<double> lag_hann(std::size_t length) {
  const auto h = hann(length);
  const std::size_t M = (length - 1) / 2;
  return std::vector<double>(h.begin() + static_cast<std::ptrdiff_t>(M), h.end());
}

}  // namespace

RealGrid wigner_ville(const Signal& signal, std::size_t hop, std::size_t n_fft) {
  const auto max_lag = static_cast<std::ptrdiff_t>(signal.size()) - 1;
  return cohen_core(signal, hop, n_fft, max_lag, {}, [](std::ptrdiff_t) { return std::vector<double>{}; }, 0,
                    true);
}

RealGrid spwv(const Signal& signal, const CohenConfig& cfg) {
  check_cfg(signal, cfg);
  auto g = hann(cfg.time_window_samples);
  double sum = 0.0;
  for (double v : g) sum += v;
  for (double& v : g) v /= sum;
  const auto max_lag = static_cast<std::ptrdiff_t>((cfg.freq_window_samples - 1) / 2);
  return cohen_core(signal, cfg.hop, cfg.n_fft, max_lag, lag_hann(cfg.freq_window_samples),
                    [&](std::ptrdiff_t) { return g; }, static_cast<std::ptrdiff_t>(g.size() / 2), false);
}

RealGrid cwd(const Signal& signal, const CohenConfig& cfg) {
  check_cfg(signal, cfg);
  const auto g = hann(cfg.time_window_samples);
  const auto half = static_cast<std::ptrdiff_t>(g.size() / 2);
  const double sigma = cfg.cwd_sigma;
  auto kernel = [&](std::ptrdiff_t m) {
    if (m == 0) return std::vector<double>{};
    std::vector<double> k(g.size());
    double sum = 0.0;
    for (std::ptrdiff_t p = -half; p <= half; ++p) {
      const double v = g[static_cast<std::size_t>(p + half)] *
                       std::exp(-sigma * static_cast<double>(p * p) / (16.0 * static_cast<double>(m * m)));
      k[static_cast<std::size_t>(p + half)] = v;
      sum += v;
    }
    for (double& v : k) v /= sum;
    return k;
  };
  const auto max_lag = static_cast<std::ptrdiff_t>((cfg.freq_window_samples - 1) / 2);
  return cohen_core(signal, cfg.hop, cfg.n_fft, max_lag, lag_hann(cfg.freq_window_samples), kernel, half, false);
}

}  // namespace conceft
