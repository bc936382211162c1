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

#include "conceft/imt.hpp"

#include "conceft/io.hpp"
#include "conceft/rng.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <string>

namespace conceft {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kRegenerationOffset = 1ULL << 32;

// Stream ids for the five Brownian draws of one signal.
enum Stream : std::uint64_t { kPhase1 = 1, kPhase2 = 2, kAmp1 = 3, kAmp2 = 4, kAmp3 = 5 };

std::vector<double> brownian_path(std::size_t n, double dt_ms, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> w(n, 0.0);
  const double sd = std::sqrt(dt_ms);
  for (std::size_t i = 1; i < n; ++i) w[i] = w[i - 1] + sd * rng.normal();
  return w;
}

std::vector<double> raised_cosine_support(std::size_t n, double fs, double start_ms, double end_ms, double edge_ms) {
  std::vector<double> m(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = 1e3 * static_cast<double>(i) / fs;
    if (t < start_ms || t > end_ms) continue;
    const double d = std::min(t - start_ms, end_ms - t);
    m[i] = d >= edge_ms ? 1.0 : 0.5 * (1.0 - std::cos(kPi * d / edge_ms));
  }
  return m;
}

// Centered derivative (one-sided at the ends) per sample.
std::vector<double> gradient(const std::vector<double>& y) {
  const std::size_t n = y.size();
  std::vector<double> d(n, 0.0);
  if (n < 2) return d;
  d[0] = y[1] - y[0];
  d[n - 1] = y[n - 1] - y[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = 0.5 * (y[i + 1] - y[i - 1]);
  return d;
}

}  // namespace

std::vector<double> local_linear_smooth(const std::vector<double>& y, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("local_linear_smooth: bandwidth must be positive");
  const auto n = static_cast<std::ptrdiff_t>(y.size());
  const auto reach = static_cast<std::ptrdiff_t>(std::ceil(6.0 * h));
  std::vector<double> out(y.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - reach);
    const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n - 1, i + reach);
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, t0 = 0.0, t1 = 0.0;
    for (std::ptrdiff_t j = lo; j <= hi; ++j) {
      const double u = static_cast<double>(j - i);
      const double w = std::exp(-0.5 * (u / h) * (u / h));
      s0 += w;
      s1 += w * u;
      s2 += w * u * u;
      t0 += w * y[static_cast<std::size_t>(j)];
      t1 += w * u * y[static_cast<std::size_t>(j)];
    }
    const double det = s0 * s2 - s1 * s1;
    // Intercept of the weighted line; a single-point window degenerates to y.
    out[static_cast<std::size_t>(i)] = det > 1e-12 * s0 * s2 ? (s2 * t0 - s1 * t1) / det : t0 / s0;
  }
  return out;
}

BrownianEnvelope brownian_envelope(double a, double b, double c_ms, double L_ms, double fs_hz, std::uint64_t seed) {
  if (a < 0.0 || !(b > 0.0) || !(c_ms > 0.0) || !(L_ms > 0.0) || !(fs_hz > 0.0))
    throw std::invalid_argument("brownian_envelope: invalid parameters");
  BrownianEnvelope env{a, b, c_ms, L_ms, fs_hz, {}, seed, seed, 0};
  const auto n = static_cast<std::size_t>(std::llround(L_ms * 1e-3 * fs_hz));
  const double dt_ms = 1e3 / fs_hz;
  for (int k = 0;; ++k) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(k) * kRegenerationOffset;
    const auto S = local_linear_smooth(brownian_path(n, dt_ms, s), c_ms / dt_ms);
    const double mx = *std::max_element(S.begin(), S.end());
    if (!(mx > 0.0)) continue;
    env.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) env.values[i] = a + S[i] / (b * mx);
    env.used_seed = s;
    env.regenerations = k;
    return env;
  }
}

std::string check_components(const std::array<ComponentSpec, 3>& comps) {
  const std::size_t n = comps[0].amplitude.size();
  for (std::size_t l = 0; l < 3; ++l) {
    for (std::size_t i = 0; i < n; ++i) {
      if (comps[l].taper[i] <= 0.0) continue;
      if (!(comps[l].amplitude[i] > 0.0)) return "nonpositive amplitude in component " + std::to_string(l + 1);
      if (!(comps[l].if_hz[i] > 0.0)) return "nonpositive IF in component " + std::to_string(l + 1);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t p = 0; p < 3; ++p)
      for (std::size_t q = p + 1; q < 3; ++q)
        if (comps[p].on_plateau(i) && comps[q].on_plateau(i) &&
            std::abs(comps[p].if_hz[i] - comps[q].if_hz[i]) < kImtMinSeparationHz)
          return "components " + std::to_string(p + 1) + " and " + std::to_string(q + 1) + " closer than 500 Hz";
  return {};
}

GroundTruth three_component_signal(std::uint64_t seed) {
  const double fs = kImtSampleRate;
  const auto n = static_cast<std::size_t>(std::llround(kImtDurationMs * 1e-3 * fs));
  std::vector<double> t_ms(n);
  for (std::size_t i = 0; i < n; ++i) t_ms[i] = 1e3 * static_cast<double>(i) / fs;

  for (int attempt = 0;; ++attempt) {
    auto s = [&](std::uint64_t stream) { return derive_seed(seed, stream, static_cast<std::uint64_t>(attempt)); };
    const auto F1 = brownian_envelope(1.0, 6.0, 0.3, kImtDurationMs, fs, s(kPhase1)).values;
    const auto F2 = brownian_envelope(0.0, 5.0, 0.4, kImtDurationMs, fs, s(kPhase2)).values;
    const auto A1 = brownian_envelope(1.0, 2.0, 0.2, kImtDurationMs, fs, s(kAmp1)).values;
    const auto A2 = brownian_envelope(0.5, 4.0, 0.1, kImtDurationMs, fs, s(kAmp2)).values;
    const auto A3 = brownian_envelope(1.0 / 3.0, 6.0, 0.1, kImtDurationMs, fs, s(kAmp3)).values;
    const auto dF1 = gradient(F1);
    const auto dF2 = gradient(F2);

    std::array<ComponentSpec, 3> c;
    const double bounds[3][2] = {{1.0, 20.0}, {2.0, 25.0}, {3.0, 10.0}};
    const std::vector<double>* amps[3] = {&A1, &A2, &A3};
    for (std::size_t l = 0; l < 3; ++l) {
      c[l].start_ms = bounds[l][0];
      c[l].end_ms = bounds[l][1];
      c[l].taper = raised_cosine_support(n, fs, bounds[l][0], bounds[l][1], kImtEdgeMs);
      c[l].amplitude = *amps[l];
      c[l].phase_cycles.assign(n, 0.0);
      c[l].if_hz.assign(n, 0.0);
    }
    // Phases in cycles with t in ms (so d/dt in Hz is 1000 d/dt_ms). The
    // component-1 log term is only evaluated on its support.
    for (std::size_t i = 0; i < n; ++i) {
      const double t = t_ms[i];
      if (c[0].taper[i] > 0.0) {
        c[0].phase_cycles[i] = 120.0 / 19.0 * std::log(t) + 13.0 / 19.0 * (t - 1.0) + F1[i];
        c[0].if_hz[i] = 1e3 * (120.0 / 19.0 / t + 13.0 / 19.0) + fs * dF1[i];
      }
      c[1].phase_cycles[i] = 5.0 * t + 0.1 * std::cos(kPi * t) + F2[i];
      c[1].if_hz[i] = 1e3 * (5.0 - 0.1 * kPi * std::sin(kPi * t)) + fs * dF2[i];
      c[2].phase_cycles[i] = 3141.0 * t * 1e-3;
      c[2].if_hz[i] = 3141.0;
    }
    if (!check_components(c).empty()) continue;

    std::vector<cplx> z(n, 0.0);
    for (std::size_t l = 0; l < 3; ++l)
      for (std::size_t i = 0; i < n; ++i)
        if (c[l].taper[i] > 0.0)
          z[i] += c[l].effective_amplitude(i) * std::polar(1.0, 2.0 * kPi * c[l].phase_cycles[i]);
    std::vector<double> re(n);
    for (std::size_t i = 0; i < n; ++i) re[i] = z[i].real();
    GroundTruth g{Signal::from_real(re, fs), std::move(z), std::move(c), seed, attempt + 1};
    return g;
  }
}

RealGrid ideal_tfr(const GroundTruth& truth, const std::vector<double>& times_s, const std::vector<double>& freqs_hz,
                   bool squared) {
  if (freqs_hz.size() < 2) throw std::invalid_argument("ideal_tfr: frequency axis too short");
  RealGrid out(times_s, freqs_hz, GridKind::power);
  const double f0 = freqs_hz.front();
  const double df = (freqs_hz.back() - f0) / static_cast<double>(freqs_hz.size() - 1);
  const double fs = truth.signal.sample_rate_hz();
  const auto n = static_cast<std::ptrdiff_t>(truth.signal.size());
  for (std::size_t t = 0; t < times_s.size(); ++t) {
    const auto i = static_cast<std::ptrdiff_t>(std::llround((times_s[t] - truth.signal.t0_s()) * fs));
    if (i < 0 || i >= n) continue;
    for (const auto& comp : truth.components) {
      const double a = comp.effective_amplitude(static_cast<std::size_t>(i));
      if (!(a > 0.0)) continue;
      const double k = std::round((comp.if_hz[static_cast<std::size_t>(i)] - f0) / df);
      if (k < 0.0 || k >= static_cast<double>(freqs_hz.size())) throw std::invalid_argument("ideal_tfr: IF outside lattice");
      out.at(t, static_cast<std::size_t>(k)) += squared ? a * a : a;
    }
  }
  return out;
}

void write_components_csv(const std::filesystem::path& path, const GroundTruth& truth) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "time_s,amp_1,if_1_hz,amp_2,if_2_hz,amp_3,if_3_hz\n";
  for (std::size_t i = 0; i < truth.signal.size(); ++i) {
    out << format_double(truth.signal.time_at(i));
    for (const auto& c : truth.components)
      out << ',' << format_double(c.effective_amplitude(i)) << ',' << format_double(c.taper[i] > 0.0 ? c.if_hz[i] : 0.0);
    out << '\n';
  }
}

}  // namespace conceft
