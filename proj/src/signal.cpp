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

#include "conceft/signal.hpp"

#include "conceft/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace conceft {

Signal::Signal(std::vector<cplx> samples, double sample_rate_hz, double t0_s, bool is_real)
    : samples_(std::move(samples)), sample_rate_hz_(sample_rate_hz), t0_s_(t0_s), is_real_(is_real) {
  if (!(sample_rate_hz_ > 0.0) || !std::isfinite(sample_rate_hz_))
    throw std::invalid_argument("signal: sample rate must be positive");
  if (samples_.empty()) throw std::invalid_argument("signal: empty sample sequence");
  if (!std::isfinite(t0_s_)) throw std::invalid_argument("signal: non-finite time origin");
  if (is_real_)
    for (auto& v : samples_) v = cplx(v.real(), 0.0);
}

Signal Signal::from_real(std::span<const double> samples, double sample_rate_hz, double t0_s) {
  std::vector<cplx> z(samples.begin(), samples.end());
  return Signal(std::move(z), sample_rate_hz, t0_s, true);
}

Signal Signal::real_part() const {
  return Signal(samples_, sample_rate_hz_, t0_s_, true);
}

std::vector<double> Signal::real_samples() const {
  std::vector<double> out(samples_.size());
  for (std::size_t i = 0; i < samples_.size(); ++i) out[i] = samples_[i].real();
  return out;
}

double mean_power(const Signal& s) {
  double acc = 0.0;
  for (const auto& v : s.samples()) acc += std::norm(v);
  return acc / static_cast<double>(s.size());
}

RealGrid to_power(const ComplexGrid& grid) {
  if (grid.kind != GridKind::complex_coefficients)
    throw std::invalid_argument("to_power: input grid is not a coefficient grid");
  RealGrid out(grid.times_s, grid.freqs_hz, GridKind::power);
  out.boundary = grid.boundary;
  for (std::size_t i = 0; i < grid.values.size(); ++i) out.values[i] = std::norm(grid.values[i]);
  return out;
}

namespace {

std::vector<cplx> white_noise(const Signal& s, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<cplx> xi(s.size());
  if (s.is_real()) {
    for (auto& v : xi) v = cplx(rng.normal(), 0.0);
  } else {
    const double k = std::sqrt(0.5);
    for (auto& v : xi) {
      const double re = rng.normal();
      const double im = rng.normal();
      v = cplx(k * re, k * im);
    }
  }
  return xi;
}

}  // namespace

std::pair<Signal, NoiseRealization> add_noise(const Signal& s, double snr_db, std::uint64_t seed) {
  if (std::isinf(snr_db) && snr_db > 0) return {s, NoiseRealization{seed, 0.0, kCleanSnr, true}};
  if (std::isnan(snr_db)) throw std::invalid_argument("add_noise: snr is NaN");
  const double ps = mean_power(s);
  if (!(ps > 0.0)) throw std::invalid_argument("degenerate signal");

  std::vector<cplx> xi = white_noise(s, seed);
  double pn = 0.0;
  for (const auto& v : xi) pn += std::norm(v);
  pn /= static_cast<double>(xi.size());
  const double scale = std::sqrt(ps / (pn * std::pow(10.0, snr_db / 10.0)));

  std::vector<cplx> y(s.samples().begin(), s.samples().end());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += scale * xi[i];
  // sigma reported as the scaled generator standard deviation
  return {Signal(std::move(y), s.sample_rate_hz(), s.t0_s(), s.is_real()),
          NoiseRealization{seed, scale, snr_db, true}};
}

std::pair<Signal, NoiseRealization> add_noise_sigma(const Signal& s, double sigma, std::uint64_t seed) {
  if (!(sigma > 0.0)) throw std::invalid_argument("add_noise_sigma: sigma must be positive");
  std::vector<cplx> xi = white_noise(s, seed);
  std::vector<cplx> y(s.samples().begin(), s.samples().end());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += sigma * xi[i];
  Signal noisy(std::move(y), s.sample_rate_hz(), s.t0_s(), s.is_real());
  const double ps = mean_power(s);
  NoiseRealization rec{seed, sigma, 0.0, ps > 0.0};
  if (ps > 0.0) rec.snr_db = measure_snr(s, noisy);
  return {std::move(noisy), rec};
}

double measure_snr(const Signal& clean, const Signal& noisy) {
  if (clean.size() != noisy.size() || clean.sample_rate_hz() != noisy.sample_rate_hz())
    throw std::invalid_argument("measure_snr: mismatched signal geometry");
  double pc = 0.0;
  double pd = 0.0;
  for (std::size_t i = 0; i < clean.size(); ++i) {
    pc += std::norm(clean.samples()[i]);
    pd += std::norm(noisy.samples()[i] - clean.samples()[i]);
  }
  if (pd == 0.0) return kCleanSnr;
  return 10.0 * std::log10(pc / pd);
}

}  // namespace conceft
