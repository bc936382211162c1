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

#include <cstdint>
#include <filesystem>
#include <vector>

namespace conceft {

// Log-linear tonotopic map x_p(w) = l ln(w0 / w). Lengths in meters.
struct CochlearMap {
  double l_m = 7.2e-3;
  double lambda_m = 7.2e-3 / 5.5;
  double delta_x_m = 7.2e-3 / 11.0;
  double omega0_rad_s = 2.0 * 3.14159265358979323846 * 16000.0;

  // Validates positivity; throws std::invalid_argument otherwise.
  void validate() const;
  double place_m(double omega_rad_s) const;
  double l_over_lambda() const { return l_m / lambda_m; }

  // l = 0.72 cm, Lambda = l / ratio, Delta x = dx_over_lambda * Lambda.
  static CochlearMap with_ratios(double l_over_lambda, double dx_over_lambda);
};

struct IrregularityProfile {
  std::vector<double> x_m;
  std::vector<double> eps;
  double dx_m = 5e-6;
  double sigma_eps = 0.0;
  double corr_len_m = 0.0;  // 0 for white profiles
  std::uint64_t seed = 0;
};

// I.i.d. N(0, sigma^2) on x = 0, dx, ..., x_max (7001 points by default).
IrregularityProfile white_irregularity(double sigma_eps, std::uint64_t seed, double dx_m = 5e-6,
                                       double x_max_m = 35e-3);

// White noise convolved with the half-cosine kernel cos(pi u / D), |u| <= D/2,
// scaled to unit energy so the stationary variance stays sigma^2. The
// resulting correlation vanishes beyond |x - x'| = D. D = dx gives white noise.
IrregularityProfile correlated_irregularity(double sigma_eps, double D_m, std::uint64_t seed, double dx_m = 5e-6,
                                            double x_max_m = 35e-3);

struct ReflectanceSpectrum {
  std::vector<double> omegas_rad_s;
  std::vector<cplx> R;
};

// R(w) = sum_x eps(x) exp(-(x - x_p)^2 / 2 dx^2) exp(-i 4 pi (x - x_p) / Lambda) dx
// with the Gaussian cut at 12 Delta x (below 1e-31 relative).
// Throws "frequency outside tonotopic range" when x_p leaves the profile grid.
ReflectanceSpectrum reflectance(const IrregularityProfile& profile, const CochlearMap& map,
                                const std::vector<double>& omegas_rad_s);

// Same quantity evaluated through the wavenumber domain:
// R(w) = (1/2pi) int rho^(-k) eps~(k) exp(i k x_p) dk, with eps~ the discrete
// spatial transform of the profile (zero-padded FFT) and rho^ the closed-form
// transform of the Gaussian-modulated spatial filter.
ReflectanceSpectrum reflectance_wavenumber(const IrregularityProfile& profile, const CochlearMap& map,
                                           const std::vector<double>& omegas_rad_s);

// |rho^(-k)| on the given wavenumbers (rad/m).
std::vector<double> spatial_filter_magnitude(const CochlearMap& map, const std::vector<double>& k_rad_m);

struct ImpulseConfig {
  std::size_t n_fft = 4096;
  double sample_rate_hz = 32000.0;
  double f_lo_hz = 200.0;
  double f_hi_hz = 16000.0;
};

// Angular frequencies of the nonnegative FFT bins inside the band.
std::vector<double> band_omegas(const ImpulseConfig& cfg);

// Reflectance on the in-band FFT bins.
ReflectanceSpectrum reflectance_on_fft_grid(const IrregularityProfile& profile, const CochlearMap& map,
                                            const ImpulseConfig& cfg);

// r[n] = (1/N) sum_k R_k exp(i 2 pi k n / N) with out-of-band and negative
// bins zero. R must hold exactly the band_omegas(cfg) grid.
Signal impulse_response(const ReflectanceSpectrum& R, const ImpulseConfig& cfg);

// Expected instantaneous frequency (2 / t)(l / Lambda), Hz.
double expected_if(double t_s, const CochlearMap& map);

// Mean group delay (4 pi / Lambda)(l / w), seconds.
double expected_group_delay(double omega_rad_s, const CochlearMap& map);

// -dPhi/dw by a centered difference of step delta, with the phase difference
// wrapped to (-pi, pi]. Returns NaN when |R(w)| < floor.
double phase_gradient_delay(const IrregularityProfile& profile, const CochlearMap& map, double omega_rad_s,
                            double delta_rad_s, double floor_abs);

struct GroupDelayStats {
  std::vector<double> freqs_hz;
  std::vector<double> mean_delay_s;
  std::vector<double> expected_delay_s;
  std::vector<std::size_t> n_used;
  std::size_t n_realizations = 0;
};

// Monte Carlo mean of the phase-gradient delay over white profiles with
// seeds derive_seed(master, stream, n). Bins with |R| < 1e-3 max|R| over the
// band are excluded per realization.
GroupDelayStats monte_carlo_group_delay(const CochlearMap& map, const std::vector<double>& freqs_hz,
                                        std::size_t n_realizations, std::uint64_t master_seed,
                                        double delta_hz = 1.0);

// b^(t) = C'' R(w_b) g(t - (4 pi / Lambda)(l / w_b)) with C'' = exp(i 4 pi l / Lambda),
// the delay applied as a linear phase on the DFT of the stimulus (circular
// over the stimulus length). Throws when w_b is not on the spectrum grid.
Signal tboae_approx(const Signal& stimulus, double omega_b_rad_s, const ReflectanceSpectrum& R,
                    const CochlearMap& map);

cplx tboae_constant(const CochlearMap& map);

struct TwoToneReport {
  Signal b;
  Signal b_hat;
  double rel_err_l2 = 0.0;
};

// Stimulus Hann(4 ms) (exp(i 2 pi 4000 t) + exp(i 2 pi 2000 t)) on the impulse
// grid; b = g convolved with r (through the DFT), b^ = sum of the two
// tboae_approx packets. The map's Delta x is replaced by ratio * Lambda.
TwoToneReport two_tone_burst_experiment(const CochlearMap& map, const IrregularityProfile& profile,
                                        double delta_x_over_lambda, const ImpulseConfig& cfg = {});

void write_profile_csv(const std::filesystem::path& path, const IrregularityProfile& p);
void write_spectrum_csv(const std::filesystem::path& path, const ReflectanceSpectrum& R);

}  // namespace conceft
