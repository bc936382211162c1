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

// Small helpers shared by the unit tests and the acceptance binary.

#include "conceft/signal.hpp"
#include "conceft/sst.hpp"
#include "conceft/stft.hpp"
#include "conceft/windows.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace testsupport {

using conceft::cplx;

inline constexpr double kFs = 32000.0;
inline constexpr double kSigma = 5e-3 / 12.0;

// Complex exponential of constant frequency, unit amplitude.
inline conceft::Signal tone(double f_hz, std::size_t n, double fs = kFs) {
  std::vector<cplx> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = std::polar(1.0, 2.0 * std::numbers::pi * f_hz * static_cast<double>(i) / fs);
  return conceft::Signal(std::move(z), fs);
}

// exp(-(t - tc)^2 / 2 s^2) exp(i 2 pi (b t + a t^2 / 2)), IF = b + a t.
inline conceft::Signal gaussian_chirp(double b_hz, double a_hz_per_s, double tc_s, double env_sigma_s, std::size_t n,
                                      double fs = kFs) {
  std::vector<cplx> z(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / fs;
    const double e = std::exp(-(t - tc_s) * (t - tc_s) / (2.0 * env_sigma_s * env_sigma_s));
    z[i] = e * std::polar(1.0, 2.0 * std::numbers::pi * (b_hz * t + 0.5 * a_hz_per_s * t * t));
  }
  return conceft::Signal(std::move(z), fs);
}

template <typename T>
double magnitude(const T& v) {
  return std::abs(v);
}

// Frequency of the largest |value| in time row t.
template <typename G>
double ridge_hz(const G& grid, std::size_t t) {
  const auto row = grid.row(t);
  std::size_t best = 0;
  double bv = -1.0;
  for (std::size_t k = 0; k < row.size(); ++k) {
    const double v = magnitude(row[k]);
    if (v > bv) {
      bv = v;
      best = k;
    }
  }
  return grid.freqs_hz[best];
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// ||a - b|| / ||b|| over two equally sized sequences.
template <typename A, typename B>
double rel_l2(const A& a, const B& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(cplx(a[i]) - cplx(b[i]));
    den += std::norm(cplx(b[i]));
  }
  return std::sqrt(num / den);
}

// Worst per-slice fraction of |S| within +-1 bin of f0 over non-boundary frames.
inline double worst_tone_concentration(const conceft::ComplexGrid& g, double f0_hz) {
  const double df = g.freq_step_hz();
  double worst = 1.0;
  for (std::size_t t = 0; t < g.n_times(); ++t) {
    if (g.boundary[t]) continue;
    double tot = 0.0, near = 0.0;
    for (std::size_t k = 0; k < g.n_freqs(); ++k) {
      const double a = std::abs(g.at(t, k));
      tot += a;
      if (std::abs(g.freqs_hz[k] - f0_hz) <= 1.5 * df) near += a;
    }
    if (tot > 0.0) worst = std::min(worst, near / tot);
  }
  return worst;
}

// Largest per-slice mismatch between the squeezed mass sum_k S dnu_out and
// the in-band thresholded STFT mass, relative to the slice's sum of |V| dnu.
inline double worst_slice_mass_error(const conceft::StftFamily& fam, const conceft::ReassignmentField& field,
                                     const conceft::SstResult& res) {
  const auto& out = res.grid.freqs_hz;
  const double dout = (out.back() - out.front()) / static_cast<double>(out.size() - 1);
  const double lo = out.front() - 0.5 * dout;
  const double hi = out.back() + 0.5 * dout;
  const double dnu = fam.v_h.freq_step_hz();
  double worst = 0.0;
  for (std::size_t t = 0; t < fam.v_h.n_times(); ++t) {
    cplx in{0.0, 0.0};
    double scale = 0.0;
    for (std::size_t k = 0; k < fam.v_h.n_freqs(); ++k) {
      const cplx v = fam.v_h.at(t, k);
      scale += std::abs(v) * dnu;
      if (!field.is_valid(t, k)) continue;
      const double w = field.at(t, k);
      if (w >= lo && w < hi) in += v * dnu;
    }
    cplx sq{0.0, 0.0};
    for (std::size_t k = 0; k < res.grid.n_freqs(); ++k) sq += res.grid.at(t, k) * dout;
    if (scale > 0.0) worst = std::max(worst, std::abs(sq - in) / scale);
  }
  return worst;
}

// Median |ridge - IF| of the SST of a chirp b + a t, squeezed onto a 5 Hz
// axis so sub-bin ridge offsets are visible. Uses interior slices within
// two envelope sigmas of tc whose IF stays below 15 kHz.
inline double fast_chirp_ridge_error(const conceft::Signal& s, const conceft::WindowFamily& g, conceft::SstOrder order,
                                     double b_hz, double a_hz_per_s, double tc_s, double env_sigma_s) {
  const conceft::StftFamily fam = conceft::stft_family(s, g, {4, 512});
  conceft::SstConfig c;
  c.order = order;
  std::vector<double> axis;
  for (int k = 0; k <= 3200; ++k) axis.push_back(5.0 * k);
  const conceft::SstResult r = conceft::synchrosqueeze(fam, conceft::reassign(fam, c), axis);
  std::vector<double> err;
  for (std::size_t t = 0; t < r.grid.n_times(); ++t) {
    const double tt = r.grid.times_s[t], tf = b_hz + a_hz_per_s * tt;
    if (r.grid.boundary[t] || std::abs(tt - tc_s) > 2.0 * env_sigma_s || tf > 15000.0) continue;
    err.push_back(std::abs(ridge_hz(r.grid, t) - tf));
  }
  return median(err);
}

}  // namespace testsupport
