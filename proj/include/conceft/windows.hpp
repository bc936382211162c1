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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace conceft {

using cplx = std::complex<double>;

// One analysis window and the companions the reassignment rules need, all
// sampled on the same centered axis u_n = (n - (L-1)/2) / fs:
//   h, Dh = dh/du (1/s), DDh = d2h/du2 (1/s^2), Th = u h (s), TDh = u Dh.
struct Taper {
  std::vector<cplx> h;
  std::vector<cplx> dh;
  std::vector<cplx> ddh;
  std::vector<cplx> th;
  std::vector<cplx> tdh;
};

// Orthonormal window family. Windows are stored complex so that sphere
// combinations (complex-valued) share the type with the real Hermite basis.
//
// Every window is a finite combination of continuous Hermite functions
// H_k(u / sigma) exp(-u^2 / 2 sigma^2); basis_coeffs[j][k] holds the weights,
// so the window can also be evaluated off-grid (used by derivative checks).
struct WindowFamily {
  std::size_t length = 0;
  double sample_rate_hz = 0.0;
  double sigma_s = 0.0;
  std::vector<Taper> tapers;
  std::vector<std::vector<cplx>> basis_coeffs;

  std::size_t size() const { return tapers.size(); }
  std::size_t half_length() const { return (length - 1) / 2; }
  // Centered time axis in seconds.
  std::vector<double> axis_s() const;

  // Continuous value of window j (derivative_order 0, 1 or 2) at time u_s.
  cplx evaluate(std::size_t j, double u_s, int derivative_order = 0) const;
};

// Discrete inner product sum_n a_n conj(b_n) / fs.
cplx inner_product(const std::vector<cplx>& a, const std::vector<cplx>& b, double sample_rate_hz);

// Smallest odd length covering +-4 sigma.
std::size_t min_window_length(double sigma_s, double sample_rate_hz);

// Unit-L2 Gaussian window with analytic companions. Throws
// std::invalid_argument("window truncation") when the length does not cover
// +-4 sigma, or for even lengths.
WindowFamily gaussian_window(double sigma_s, std::size_t length_samples, double sample_rate_hz);

// First J Hermite functions sharing one dilation sigma, orthonormalized in
// index order under the discrete inner product. J must be in [1, 6].
WindowFamily hermite_windows(int J, double sigma_s, std::size_t length_samples, double sample_rate_hz);

// Unit vector in C^J drawn uniformly from the sphere.
struct SphereSample {
  std::vector<cplx> coefficients;
  std::uint64_t seed = 0;
};

SphereSample sample_sphere(int J, std::uint64_t seed);

// Canonical basis vector e_j (0-based).
SphereSample unit_sphere_vector(int J, int j);

// h = sum_j conj(r_j) h_j, applied identically to every companion.
WindowFamily combine(const WindowFamily& family, const SphereSample& r);

// Single-window family holding window j of a larger family.
WindowFamily select(const WindowFamily& family, std::size_t j);

// Symmetric Hann window of odd length, peak 1 at the center.
std::vector<double> hann(std::size_t length);

}  // namespace conceft
