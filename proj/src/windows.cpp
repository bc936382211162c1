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

#include "conceft/windows.hpp"

#include "conceft/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace conceft {
namespace {

// Physicists' Hermite polynomials H_0..H_{n-1} at x.
std::vector<double> hermite_polys(int n, double x) {
  std::vector<double> H(static_cast<std::size_t>(std::max(n, 2)), 0.0);
  H[0] = 1.0;
  H[1] = 2.0 * x;
  for (int k = 1; k + 1 < n; ++k) H[k + 1] = 2.0 * x * H[k] - 2.0 * k * H[k - 1];
  return H;
}

// Derivative of order 0..2 of phi_k(u) = H_k(u/sigma) exp(-u^2 / 2 sigma^2).
double hermite_function(int k, double u, double sigma, int order) {
  const double x = u / sigma;
  const auto H = hermite_polys(k + 1, x);
  const double g = std::exp(-0.5 * x * x);
  const double Hk = H[k];
  const double dHk = k >= 1 ? 2.0 * k * H[k - 1] : 0.0;
  const double ddHk = k >= 2 ? 4.0 * k * (k - 1) * H[k - 2] : 0.0;
  switch (order) {
    case 0:
      return Hk * g;
    case 1:
      return (dHk - x * Hk) * g / sigma;
    case 2:
      return (ddHk - 2.0 * x * dHk + (x * x - 1.0) * Hk) * g / (sigma * sigma);
    default:
      throw std::invalid_argument("hermite_function: derivative order must be 0, 1 or 2");
  }
}

void check_length(double sigma_s, std::size_t length, double fs) {
  if (!(sigma_s > 0.0)) throw std::invalid_argument("window: sigma must be positive");
  if (!(fs > 0.0)) throw std::invalid_argument("window: sample rate must be positive");
  if (length % 2 == 0) throw std::invalid_argument("window: length must be odd");
  const double half_s = static_cast<double>((length - 1) / 2) / fs;
  if (half_s < 4.0 * sigma_s * (1.0 - 1e-12)) throw std::invalid_argument("window truncation");
}

// Fills the taper of family row j from its basis coefficients.
Taper build_taper(const std::vector<cplx>& coeffs, const std::vector<double>& axis,
                  const std::vector<std::vector<double>>& phi, const std::vector<std::vector<double>>& dphi,
                  const std::vector<std::vector<double>>& ddphi) {
  const std::size_t L = axis.size();
  Taper t;
  t.h.assign(L, 0.0);
  t.dh.assign(L, 0.0);
  t.ddh.assign(L, 0.0);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    for (std::size_t n = 0; n < L; ++n) {
      t.h[n] += coeffs[k] * phi[k][n];
      t.dh[n] += coeffs[k] * dphi[k][n];
      t.ddh[n] += coeffs[k] * ddphi[k][n];
    }
  }
  t.th.resize(L);
  t.tdh.resize(L);
  for (std::size_t n = 0; n < L; ++n) {
    t.th[n] = axis[n] * t.h[n];
    t.tdh[n] = axis[n] * t.dh[n];
  }
  return t;
}

}  // namespace

std::vector<double> WindowFamily::axis_s() const {
  std::vector<double> axis(length);
  const double c = static_cast<double>(half_length());
  for (std::size_t n = 0; n < length; ++n) axis[n] = (static_cast<double>(n) - c) / sample_rate_hz;
  return axis;
}

cplx WindowFamily::evaluate(std::size_t j, double u_s, int derivative_order) const {
  cplx acc = 0.0;
  const auto& c = basis_coeffs.at(j);
  for (std::size_t k = 0; k < c.size(); ++k)
    acc += c[k] * hermite_function(static_cast<int>(k), u_s, sigma_s, derivative_order);
  return acc;
}

cplx inner_product(const std::vector<cplx>& a, const std::vector<cplx>& b, double sample_rate_hz) {
  if (a.size() != b.size()) throw std::invalid_argument("inner_product: length mismatch");
  cplx acc = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) acc += a[n] * std::conj(b[n]);
  return acc / sample_rate_hz;
}

std::size_t min_window_length(double sigma_s, double sample_rate_hz) {
  const auto half = static_cast<std::size_t>(std::ceil(4.0 * sigma_s * sample_rate_hz - 1e-9));
  return 2 * half + 1;
}

WindowFamily gaussian_window(double sigma_s, std::size_t length_samples, double sample_rate_hz) {
  return hermite_windows(1, sigma_s, length_samples, sample_rate_hz);
}

WindowFamily hermite_windows(int J, double sigma_s, std::size_t length_samples, double sample_rate_hz) {
  if (J < 1 || J > 6) throw std::invalid_argument("hermite_windows: J must be in [1, 6]");
  check_length(sigma_s, length_samples, sample_rate_hz);

  WindowFamily fam;
  fam.length = length_samples;
  fam.sample_rate_hz = sample_rate_hz;
  fam.sigma_s = sigma_s;
  const auto axis = fam.axis_s();
  const std::size_t L = axis.size();
  const auto Jz = static_cast<std::size_t>(J);

  std::vector<std::vector<double>> phi(Jz, std::vector<double>(L));
  std::vector<std::vector<double>> dphi(Jz, std::vector<double>(L));
  std::vector<std::vector<double>> ddphi(Jz, std::vector<double>(L));
  for (std::size_t k = 0; k < Jz; ++k) {
    for (std::size_t n = 0; n < L; ++n) {
      phi[k][n] = hermite_function(static_cast<int>(k), axis[n], sigma_s, 0);
      dphi[k][n] = hermite_function(static_cast<int>(k), axis[n], sigma_s, 1);
      ddphi[k][n] = hermite_function(static_cast<int>(k), axis[n], sigma_s, 2);
    }
  }

  // Gram-Schmidt with one re-orthogonalization pass, tracking the
  // coefficients so companions inherit the exact same combination.
  std::vector<std::vector<double>> ortho;
  std::vector<std::vector<double>> coeffs;
  const double dt = 1.0 / sample_rate_hz;
  auto dot = [&](const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t n = 0; n < L; ++n) acc += a[n] * b[n];
    return acc * dt;
  };
  for (std::size_t j = 0; j < Jz; ++j) {
    std::vector<double> v = phi[j];
    std::vector<double> c(Jz, 0.0);
    c[j] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < ortho.size(); ++i) {
        const double p = dot(v, ortho[i]);
        for (std::size_t n = 0; n < L; ++n) v[n] -= p * ortho[i][n];
        for (std::size_t k = 0; k < Jz; ++k) c[k] -= p * coeffs[i][k];
      }
    }
    const double nrm = std::sqrt(dot(v, v));
    for (auto& x : v) x /= nrm;
    for (auto& x : c) x /= nrm;
    ortho.push_back(std::move(v));
    coeffs.push_back(std::move(c));
  }

  for (std::size_t j = 0; j < Jz; ++j) {
    std::vector<cplx> cj(coeffs[j].begin(), coeffs[j].end());
    fam.tapers.push_back(build_taper(cj, axis, phi, dphi, ddphi));
    fam.basis_coeffs.push_back(std::move(cj));
  }
  return fam;
}

SphereSample sample_sphere(int J, std::uint64_t seed) {
  if (J < 1) throw std::invalid_argument("sample_sphere: J must be >= 1");
  Rng rng(seed);
  SphereSample s;
  s.seed = seed;
  s.coefficients.resize(static_cast<std::size_t>(J));
  double nrm2 = 0.0;
  for (auto& c : s.coefficients) {
    const double re = rng.normal();
    const double im = rng.normal();
    c = cplx(re, im);
    nrm2 += re * re + im * im;
  }
  const double nrm = std::sqrt(nrm2);
  for (auto& c : s.coefficients) c /= nrm;
  return s;
}

SphereSample unit_sphere_vector(int J, int j) {
  if (J < 1 || j < 0 || j >= J) throw std::invalid_argument("unit_sphere_vector: index out of range");
  SphereSample s;
  s.coefficients.assign(static_cast<std::size_t>(J), 0.0);
  s.coefficients[static_cast<std::size_t>(j)] = 1.0;
  return s;
}

WindowFamily combine(const WindowFamily& family, const SphereSample& r) {
  if (r.coefficients.size() != family.size())
    throw std::invalid_argument("combine: sphere dimension does not match family size");
  WindowFamily out;
  out.length = family.length;
  out.sample_rate_hz = family.sample_rate_hz;
  out.sigma_s = family.sigma_s;
  const std::size_t L = family.length;
  Taper t;
  t.h.assign(L, 0.0);
  t.dh.assign(L, 0.0);
  t.ddh.assign(L, 0.0);
  t.th.assign(L, 0.0);
  t.tdh.assign(L, 0.0);
  std::vector<cplx> coeffs(family.basis_coeffs.empty() ? 0 : family.basis_coeffs[0].size(), 0.0);
  for (std::size_t j = 0; j < family.size(); ++j) {
    const cplx w = std::conj(r.coefficients[j]);
    if (w == cplx(0.0, 0.0)) continue;
    const Taper& s = family.tapers[j];
    for (std::size_t n = 0; n < L; ++n) {
      t.h[n] += w * s.h[n];
      t.dh[n] += w * s.dh[n];
      t.ddh[n] += w * s.ddh[n];
      t.th[n] += w * s.th[n];
      t.tdh[n] += w * s.tdh[n];
    }
    for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k] += w * family.basis_coeffs[j][k];
  }
  out.tapers.push_back(std::move(t));
  out.basis_coeffs.push_back(std::move(coeffs));
  return out;
}

WindowFamily select(const WindowFamily& family, std::size_t j) {
  WindowFamily out;
  out.length = family.length;
  out.sample_rate_hz = family.sample_rate_hz;
  out.sigma_s = family.sigma_s;
  out.tapers.push_back(family.tapers.at(j));
  out.basis_coeffs.push_back(family.basis_coeffs.at(j));
  return out;
}

std::vector<double> hann(std::size_t length) {
  if (length == 0 || length % 2 == 0) throw std::invalid_argument("hann: length must be odd and positive");
  std::vector<double> w(length);
  for (std::size_t n = 0; n < length; ++n)
    w[n] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(n + 1) /
                                 static_cast<double>(length + 1)));
  return w;
}

}  // namespace conceft
