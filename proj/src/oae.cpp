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

#include "conceft/oae.hpp"

#include "conceft/fft.hpp"
#include "conceft/io.hpp"
#include "conceft/rng.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace conceft {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCut = 12.0;  // Gaussian cut in units of Delta x (and 1/Delta x in k)

std::size_t grid_points(double dx_m, double x_max_m) {
  if (!(dx_m > 0.0) || !(x_max_m > 0.0)) throw std::invalid_argument("irregularity: dx and x_max must be positive");
  return static_cast<std::size_t>(std::llround(x_max_m / dx_m)) + 1;
}

std::vector<double> x_axis(std::size_t n, double dx) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(i) * dx;
  return x;
}

double checked_place(const IrregularityProfile& p, const CochlearMap& map, double omega) {
  const double xp = map.place_m(omega);
  const double tol = 1e-9 * p.dx_m;
  if (p.x_m.empty() || xp < p.x_m.front() - tol || xp > p.x_m.back() + tol)
    throw std::invalid_argument("frequency outside tonotopic range");
  return xp;
}

}  // namespace

void CochlearMap::validate() const {
  if (!(l_m > 0.0 && lambda_m > 0.0 && delta_x_m > 0.0 && omega0_rad_s > 0.0))
    throw std::invalid_argument("cochlear map: all parameters must be positive");
}

double CochlearMap::place_m(double omega_rad_s) const {
  if (!(omega_rad_s > 0.0)) throw std::invalid_argument("cochlear map: frequency must be positive");
  return l_m * std::log(omega0_rad_s / omega_rad_s);
}

CochlearMap CochlearMap::with_ratios(double l_over_lambda, double dx_over_lambda) {
  CochlearMap m;
  m.lambda_m = m.l_m / l_over_lambda;
  m.delta_x_m = dx_over_lambda * m.lambda_m;
  m.validate();
  return m;
}

IrregularityProfile white_irregularity(double sigma_eps, std::uint64_t seed, double dx_m, double x_max_m) {
  if (sigma_eps < 0.0) throw std::invalid_argument("irregularity: sigma must be >= 0");
  IrregularityProfile p;
  const std::size_t n = grid_points(dx_m, x_max_m);
  p.x_m = x_axis(n, dx_m);
  p.dx_m = dx_m;
  p.sigma_eps = sigma_eps;
  p.seed = seed;
  p.eps.resize(n);
  Rng rng(seed);
  for (auto& e : p.eps) e = sigma_eps * rng.normal();
  return p;
}

IrregularityProfile correlated_irregularity(double sigma_eps, double D_m, std::uint64_t seed, double dx_m,
                                            double x_max_m) {
  if (sigma_eps < 0.0) throw std::invalid_argument("irregularity: sigma must be >= 0");
  if (D_m < dx_m * (1.0 - 1e-12)) throw std::invalid_argument("irregularity: D must be >= dx");
  const std::size_t n = grid_points(dx_m, x_max_m);
  const auto half = static_cast<std::size_t>(std::floor(0.5 * D_m / dx_m + 1e-9));
  std::vector<double> k(2 * half + 1);
  double e2 = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    const double u = (static_cast<double>(i) - static_cast<double>(half)) * dx_m;
    k[i] = std::cos(kPi * u / D_m);
    e2 += k[i] * k[i];
  }
  for (auto& v : k) v /= std::sqrt(e2);

  // Padding by the kernel half-width on both sides keeps every output sample
  // a full-support average.
  Rng rng(seed);
  std::vector<double> w(n + 2 * half);
  for (auto& v : w) v = rng.normal();

  IrregularityProfile p;
  p.x_m = x_axis(n, dx_m);
  p.dx_m = dx_m;
  p.sigma_eps = sigma_eps;
  p.corr_len_m = D_m;
  p.seed = seed;
  p.eps.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < k.size(); ++j) acc += k[j] * w[i + j];
    p.eps[i] = sigma_eps * acc;
  }
  return p;
}

ReflectanceSpectrum reflectance(const IrregularityProfile& profile, const CochlearMap& map,
                                const std::vector<double>& omegas) {
  map.validate();
  ReflectanceSpectrum out;
  out.omegas_rad_s = omegas;
  out.R.assign(omegas.size(), 0.0);
  const double dx = profile.dx_m;
  const double s2 = 2.0 * map.delta_x_m * map.delta_x_m;
  const double kc = 4.0 * kPi / map.lambda_m;
  const auto n = static_cast<std::ptrdiff_t>(profile.eps.size());
  const auto nw = static_cast<std::ptrdiff_t>(omegas.size());
  for (std::ptrdiff_t w = 0; w < nw; ++w) checked_place(profile, map, omegas[static_cast<std::size_t>(w)]);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t w = 0; w < nw; ++w) {
    const double xp = map.place_m(omegas[static_cast<std::size_t>(w)]);
    const auto lo = std::max<std::ptrdiff_t>(0, static_cast<std::ptrdiff_t>(std::floor((xp - kCut * map.delta_x_m) / dx)));
    const auto hi = std::min<std::ptrdiff_t>(n - 1, static_cast<std::ptrdiff_t>(std::ceil((xp + kCut * map.delta_x_m) / dx)));
    cplx acc = 0.0;
    for (std::ptrdiff_t i = lo; i <= hi; ++i) {
      const double e = profile.eps[static_cast<std::size_t>(i)];
      if (e == 0.0) continue;
      const double u = profile.x_m[static_cast<std::size_t>(i)] - xp;
      acc += e * std::exp(-u * u / s2) * std::polar(1.0, -kc * u);
    }
    out.R[static_cast<std::size_t>(w)] = acc * dx;
  }
  return out;
}

std::vector<double> spatial_filter_magnitude(const CochlearMap& map, const std::vector<double>& k) {
  std::vector<double> out(k.size());
  const double k0 = 4.0 * kPi / map.lambda_m;
  const double dx = map.delta_x_m;
  for (std::size_t i = 0; i < k.size(); ++i) {
    const double d = k[i] - k0;
    out[i] = std::sqrt(2.0 * kPi) * dx * std::exp(-0.5 * dx * dx * d * d);
  }
  return out;
}

ReflectanceSpectrum reflectance_wavenumber(const IrregularityProfile& profile, const CochlearMap& map,
                                           const std::vector<double>& omegas) {
  map.validate();
  for (double w : omegas) checked_place(profile, map, w);
  ReflectanceSpectrum out;
  out.omegas_rad_s = omegas;
  out.R.assign(omegas.size(), 0.0);

  // eps~(k) = sum_n eps_n exp(-i k x_n) dx on k_m = m dk. Padding to 8x the
  // record (at least 32768) pushes the periodic images of the filter far
  // outside the record.
  const double dx = profile.dx_m;
  const std::size_t M = std::max<std::size_t>(32768, next_pow2(8 * profile.eps.size()));
  std::vector<cplx> et(M, 0.0);
  for (std::size_t i = 0; i < profile.eps.size(); ++i) et[i] = profile.eps[i];
  Fft(M).forward(et, et);
  const double dk = 2.0 * kPi / (static_cast<double>(M) * dx);
  const double x0 = profile.x_m.front();

  const double k0 = 4.0 * kPi / map.lambda_m;
  const double span = kCut / map.delta_x_m;
  const auto m_lo = static_cast<std::ptrdiff_t>(std::floor((k0 - span) / dk));
  const auto m_hi = static_cast<std::ptrdiff_t>(std::ceil((k0 + span) / dk));
  std::vector<double> ks;
  std::vector<cplx> weights;  // rho^(-k) eps~(k) dk / 2pi
  const auto Mi = static_cast<std::ptrdiff_t>(M);
  for (std::ptrdiff_t m = m_lo; m <= m_hi; ++m) {
    const double k = static_cast<double>(m) * dk;
    const cplx e = et[static_cast<std::size_t>(((m % Mi) + Mi) % Mi)] * dx * std::polar(1.0, -k * x0);
    const double d = k - k0;
    const double rho = std::sqrt(2.0 * kPi) * map.delta_x_m * std::exp(-0.5 * map.delta_x_m * map.delta_x_m * d * d);
    ks.push_back(k);
    weights.push_back(rho * e * dk / (2.0 * kPi));
  }
  const auto nw = static_cast<std::ptrdiff_t>(omegas.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t w = 0; w < nw; ++w) {
    const double xp = map.place_m(omegas[static_cast<std::size_t>(w)]);
    cplx acc = 0.0;
    for (std::size_t i = 0; i < ks.size(); ++i) acc += weights[i] * std::polar(1.0, ks[i] * xp);
    out.R[static_cast<std::size_t>(w)] = acc;
  }
  return out;
}

std::vector<double> band_omegas(const ImpulseConfig& cfg) {
  std::vector<double> w;
  const double df = cfg.sample_rate_hz / static_cast<double>(cfg.n_fft);
  for (std::size_t k = 0; k <= cfg.n_fft / 2; ++k) {
    const double f = static_cast<double>(k) * df;
    if (f >= cfg.f_lo_hz - 1e-9 && f <= cfg.f_hi_hz + 1e-9) w.push_back(2.0 * kPi * f);
  }
  return w;
}

ReflectanceSpectrum reflectance_on_fft_grid(const IrregularityProfile& profile, const CochlearMap& map,
                                            const ImpulseConfig& cfg) {
  return reflectance(profile, map, band_omegas(cfg));
}

Signal impulse_response(const ReflectanceSpectrum& R, const ImpulseConfig& cfg) {
  const auto grid = band_omegas(cfg);
  if (grid.size() != R.omegas_rad_s.size()) throw std::invalid_argument("impulse_response: grid mismatch");
  const double df = cfg.sample_rate_hz / static_cast<double>(cfg.n_fft);
  std::vector<cplx> X(cfg.n_fft, 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (std::abs(grid[i] - R.omegas_rad_s[i]) > 1e-9 * grid[i])
      throw std::invalid_argument("impulse_response: grid mismatch");
    const auto k = static_cast<std::size_t>(std::llround(grid[i] / (2.0 * kPi * df)));
    X[k] = R.R[i];
  }
  Fft(cfg.n_fft).inverse(X, X);
  for (auto& v : X) v /= static_cast<double>(cfg.n_fft);
  return Signal(std::move(X), cfg.sample_rate_hz);
}

double expected_if(double t_s, const CochlearMap& map) {
  if (!(t_s > 0.0)) throw std::invalid_argument("expected_if: t must be positive");
  return 2.0 / t_s * map.l_over_lambda();
}

double expected_group_delay(double omega_rad_s, const CochlearMap& map) {
  if (!(omega_rad_s > 0.0)) throw std::invalid_argument("expected_group_delay: frequency must be positive");
  return 4.0 * kPi / map.lambda_m * map.l_m / omega_rad_s;
}

double phase_gradient_delay(const IrregularityProfile& profile, const CochlearMap& map, double omega,
                            double delta, double floor_abs) {
  const auto R = reflectance(profile, map, {omega - delta, omega, omega + delta});
  if (std::abs(R.R[1]) < floor_abs) return std::nan("");
  const double dphi = std::arg(R.R[2] * std::conj(R.R[0]));
  return -dphi / (2.0 * delta);
}

GroupDelayStats monte_carlo_group_delay(const CochlearMap& map, const std::vector<double>& freqs_hz,
                                        std::size_t n_realizations, std::uint64_t master_seed, double delta_hz) {
  constexpr std::uint64_t kStream = 0x4744454C41590001ULL;
  GroupDelayStats st;
  st.freqs_hz = freqs_hz;
  st.n_realizations = n_realizations;
  const ImpulseConfig icfg;
  const auto band = band_omegas(icfg);
  std::vector<std::vector<double>> per(n_realizations, std::vector<double>(freqs_hz.size()));
  const auto nr = static_cast<std::ptrdiff_t>(n_realizations);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t r = 0; r < nr; ++r) {
    const auto prof = white_irregularity(1.0, derive_seed(master_seed, kStream, static_cast<std::uint64_t>(r)));
    const auto Rb = reflectance(prof, map, band);
    double rmax = 0.0;
    for (const auto& v : Rb.R) rmax = std::max(rmax, std::abs(v));
    for (std::size_t f = 0; f < freqs_hz.size(); ++f)
      per[static_cast<std::size_t>(r)][f] =
          phase_gradient_delay(prof, map, 2.0 * kPi * freqs_hz[f], 2.0 * kPi * delta_hz, 1e-3 * rmax);
  }
  for (std::size_t f = 0; f < freqs_hz.size(); ++f) {
    double sum = 0.0;
    std::size_t used = 0;
    for (std::size_t r = 0; r < n_realizations; ++r) {
      const double v = per[r][f];
      if (std::isnan(v)) continue;
      sum += v;
      ++used;
    }
    st.mean_delay_s.push_back(used ? sum / static_cast<double>(used) : std::nan(""));
    st.expected_delay_s.push_back(expected_group_delay(2.0 * kPi * freqs_hz[f], map));
    st.n_used.push_back(used);
  }
  return st;
}

cplx tboae_constant(const CochlearMap& map) { return std::polar(1.0, 4.0 * kPi * map.l_over_lambda()); }

Signal tboae_approx(const Signal& stimulus, double omega_b, const ReflectanceSpectrum& R, const CochlearMap& map) {
  if (R.omegas_rad_s.empty()) throw std::invalid_argument("tboae_approx: empty reflectance grid");
  const auto it = std::min_element(R.omegas_rad_s.begin(), R.omegas_rad_s.end(),
                                   [&](double a, double b) { return std::abs(a - omega_b) < std::abs(b - omega_b); });
  const auto idx = static_cast<std::size_t>(it - R.omegas_rad_s.begin());
  const double step = R.omegas_rad_s.size() > 1 ? std::abs(R.omegas_rad_s[1] - R.omegas_rad_s[0]) : 0.0;
  if (std::abs(*it - omega_b) > 1e-6 * std::max(step, omega_b))
    throw std::invalid_argument("tboae_approx: frequency not on the reflectance grid");

  const double tau = expected_group_delay(omega_b, map);
  const cplx amp = tboae_constant(map) * R.R[idx];
  const std::size_t N = stimulus.size();
  const double fs = stimulus.sample_rate_hz();
  std::vector<cplx> X(stimulus.samples().begin(), stimulus.samples().end());
  const Fft fft(N);
  fft.forward(X, X);
  for (std::size_t k = 0; k < N; ++k) {
    const double kk = k <= N / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(N);
    const double f = kk * fs / static_cast<double>(N);
    X[k] *= amp * std::polar(1.0 / static_cast<double>(N), -2.0 * kPi * f * tau);
  }
  fft.inverse(X, X);
  return Signal(std::move(X), fs, stimulus.t0_s());
}

TwoToneReport two_tone_burst_experiment(const CochlearMap& map_in, const IrregularityProfile& profile,
                                        double delta_x_over_lambda, const ImpulseConfig& cfg) {
  if (!(delta_x_over_lambda > 0.0)) throw std::invalid_argument("two_tone: ratio must be positive");
  CochlearMap map = map_in;
  map.delta_x_m = delta_x_over_lambda * map.lambda_m;
  map.validate();
  const std::size_t N = cfg.n_fft;
  const double fs = cfg.sample_rate_hz;
  const auto hl = static_cast<std::size_t>(std::llround(4e-3 * fs));
  const double tones[2] = {4000.0, 2000.0};

  std::vector<cplx> parts[2];
  for (int j = 0; j < 2; ++j) {
    parts[j].assign(N, 0.0);
    for (std::size_t n = 0; n < hl && n < N; ++n) {
      const double w = 0.5 * (1.0 - std::cos(2.0 * kPi * static_cast<double>(n) / static_cast<double>(hl)));
      parts[j][n] = w * std::polar(1.0, 2.0 * kPi * tones[j] * static_cast<double>(n) / fs);
    }
  }
  std::vector<cplx> g(N);
  for (std::size_t n = 0; n < N; ++n) g[n] = parts[0][n] + parts[1][n];

  const auto R = reflectance_on_fft_grid(profile, map, cfg);
  const Signal r = impulse_response(R, cfg);
  std::vector<cplx> Rfull(r.samples().begin(), r.samples().end());
  const Fft fft(N);
  fft.forward(Rfull, Rfull);
  std::vector<cplx> B = g;
  fft.forward(B, B);
  for (std::size_t k = 0; k < N; ++k) B[k] *= Rfull[k] / static_cast<double>(N);
  fft.inverse(B, B);

  std::vector<cplx> bh(N, 0.0);
  for (int j = 0; j < 2; ++j) {
    const Signal gj(parts[j], fs);
    const Signal pj = tboae_approx(gj, 2.0 * kPi * tones[j], R, map);
    for (std::size_t n = 0; n < N; ++n) bh[n] += pj.samples()[n];
  }
  double num = 0.0, den = 0.0;
  for (std::size_t n = 0; n < N; ++n) {
    num += std::norm(B[n] - bh[n]);
    den += std::norm(B[n]);
  }
  TwoToneReport rep{Signal(std::move(B), fs), Signal(std::move(bh), fs), 0.0};
  rep.rel_err_l2 = den > 0.0 ? std::sqrt(num / den) : 0.0;
  return rep;
}

void write_profile_csv(const std::filesystem::path& path, const IrregularityProfile& p) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "x_m,eps\n";
  for (std::size_t i = 0; i < p.eps.size(); ++i) out << format_double(p.x_m[i]) << ',' << format_double(p.eps[i]) << '\n';
}

void write_spectrum_csv(const std::filesystem::path& path, const ReflectanceSpectrum& R) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "freq_hz,real,imag\n";
  for (std::size_t i = 0; i < R.R.size(); ++i)
    out << format_double(R.omegas_rad_s[i] / (2.0 * kPi)) << ',' << format_double(R.R[i].real()) << ','
        << format_double(R.R[i].imag()) << '\n';
}

}  // namespace conceft
