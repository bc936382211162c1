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
#include "conceft/stft.hpp"
#include "conceft/windows.hpp"

#include <cstdint>
#include <vector>

namespace conceft {

enum class SstOrder { first, second };

// How a reassigned coefficient is deposited on the output axis.
enum class Assignment { nearest, linear };

// How multi-window and ConceFT realizations are averaged.
//   complex: C = mean S_n, output |C|^2
//   modulus: C = mean |S_n|, output C^2
//   power:   output mean |S_n|^2
enum class Averaging { complex, modulus, power };

struct SstConfig {
  double gamma_rel = 1e-4;  // validity floor, fraction of the grid's max |V|
  SstOrder order = SstOrder::second;
  Assignment assignment = Assignment::nearest;
};

// Reassigned frequency (Hz) per lattice cell; meaningful only where valid.
struct ReassignmentField {
  std::vector<double> times_s;
  std::vector<double> freqs_hz;
  std::vector<double> omega;
  std::vector<char> valid;
  double threshold = 0.0;  // absolute |V| floor used
  std::size_t n_valid = 0;
  // Second order only: cells where the chirp correction was applied, and
  // cells that fell back to the first-order estimate.
  std::size_t n_corrected = 0;
  std::size_t n_fallback = 0;

  double at(std::size_t t, std::size_t f) const { return omega[t * freqs_hz.size() + f]; }
  bool is_valid(std::size_t t, std::size_t f) const { return valid[t * freqs_hz.size() + f] != 0; }
};

// omega = nu - Im(V_Dh / (2 pi V_h)) where |V_h| exceeds the floor.
ReassignmentField reassign_first(const StftFamily& fam, const SstConfig& cfg);

// Omega = omega + Re(q) (t - T) where dT/dnu is numerically nonzero, with
//   T = t + Re(V_Th / V_h)
//   q = (V_DDh V_h - V_Dh^2) / (2 pi i (V_h^2 + V_Th V_Dh - V_D(Th) V_h)),
// where D(Th) = h + u Dh, so the denominator reduces to V_Th V_Dh - V_TDh V_h
// with TDh = u Dh. This makes q equal the chirp rate for linear chirps.
// Cells whose denominator vanishes fall back to omega.
ReassignmentField reassign_second(const StftFamily& fam, const SstConfig& cfg);

ReassignmentField reassign(const StftFamily& fam, const SstConfig& cfg);

struct SstResult {
  ComplexGrid grid;
  // Sums of |V| dnu over the lattice: all cells, cells below the floor, and
  // valid cells reassigned outside the output axis.
  double total_abs_mass = 0.0;
  double below_threshold_abs_mass = 0.0;
  double dropped_abs_mass = 0.0;
  std::size_t n_dropped = 0;

  double dropped_fraction() const;
  double below_threshold_fraction() const;
};

// Moves every valid coefficient V(t, nu') dnu' along the frequency axis of its
// own time column into the output bin nearest to its reassigned frequency (or
// split linearly between the two neighbours). Output values are densities:
// sum_k S(t, k) dnu_out equals the in-band sum of V dnu'. out_freqs must be
// uniformly spaced and increasing.
SstResult synchrosqueeze(const StftFamily& fam, const ReassignmentField& field, const std::vector<double>& out_freqs,
                         Assignment assignment = Assignment::nearest);

// STFT family, reassignment and squeezing onto the STFT frequency axis.
SstResult sst(const Signal& signal, const WindowFamily& window, const SstConfig& cfg, const StftConfig& lattice);

// (1/J) sum_j S^(h_j) combined per the averaging mode. Complex mode keeps
// the complex average; the other modes return real values stored in the
// real part (and GridKind::power).
ComplexGrid multitaper_sst(const Signal& signal, const WindowFamily& family, const SstConfig& cfg,
                           const StftConfig& lattice, Averaging averaging = Averaging::complex);

// Sphere samples carry a uniformly distributed global phase and every S_n
// inherits it, so the complex mean of realizations tends to zero; modulus
// averaging is the default here.
struct ConceftConfig {
  int n_realizations = 90;
  std::uint64_t master_seed = 0;
  Averaging averaging = Averaging::modulus;
  SstConfig sst;
};

// Stream id for sphere-sample seeds: seed_n = derive_seed(master, kSphereStream, n).
inline constexpr std::uint64_t kSphereStream = 0x5350484552450001ULL;

// Sphere samples used by conceft for a given configuration, in realization order.
std::vector<SphereSample> conceft_sphere_samples(int J, const ConceftConfig& cfg);

// Power output of ConceFT for the averaging mode (|C|^2 for complex, C^2 for
// modulus averaging).
RealGrid conceft(const Signal& signal, const WindowFamily& family, const ConceftConfig& cfg,
                 const StftConfig& lattice);

// Same with explicit sphere samples (one realization per sample).
RealGrid conceft_with_samples(const Signal& signal, const WindowFamily& family,
                              const std::vector<SphereSample>& samples, const SstConfig& sst_cfg,
                              Averaging averaging, const StftConfig& lattice);

// Mean of |V^(h_n)|^2 over the given sphere samples (random-window spectrogram).
RealGrid random_window_spectrogram(const Signal& signal, const WindowFamily& family,
                                   const std::vector<SphereSample>& samples, const StftConfig& lattice);

// (1/J) sum_j |V^(h_j)|^2.
RealGrid multitaper_spectrogram(const Signal& signal, const WindowFamily& family, const StftConfig& lattice);

}  // namespace conceft
