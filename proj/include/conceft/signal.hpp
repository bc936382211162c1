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
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace conceft {

using cplx = std::complex<double>;

// Uniformly sampled waveform. Real-valued waveforms are stored as complex
// samples with zero imaginary part and is_real() set; analysis then keeps
// only nonnegative frequencies.
class Signal {
 public:
  Signal(std::vector<cplx> samples, double sample_rate_hz, double t0_s = 0.0, bool is_real = false);

  static Signal from_real(std::span<const double> samples, double sample_rate_hz, double t0_s = 0.0);

  std::span<const cplx> samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  double sample_rate_hz() const { return sample_rate_hz_; }
  double sample_period_s() const { return 1.0 / sample_rate_hz_; }
  double t0_s() const { return t0_s_; }
  double duration_s() const { return static_cast<double>(samples_.size()) / sample_rate_hz_; }
  double time_at(std::size_t n) const { return t0_s_ + static_cast<double>(n) / sample_rate_hz_; }
  bool is_real() const { return is_real_; }

  // Real part as a new real-valued signal.
  Signal real_part() const;
  std::vector<double> real_samples() const;

 private:
  std::vector<cplx> samples_;
  double sample_rate_hz_;
  double t0_s_;
  bool is_real_;
};

// Mean of |x|^2 over the whole record.
double mean_power(const Signal& s);

enum class GridKind { complex_coefficients, power, bilinear };

// Time-frequency matrix, row-major over (time frame, frequency bin).
//
// kind == power means every value is >= 0. kind == bilinear marks a real
// distribution that may carry negative values (Wigner-Ville family).
template <typename T>
struct Grid {
  std::vector<double> times_s;
  std::vector<double> freqs_hz;
  std::vector<T> values;
  GridKind kind = GridKind::power;
  // Nonzero for frames whose analysis support reaches past the record edges.
  std::vector<char> boundary;

  Grid() = default;
  Grid(std::vector<double> times, std::vector<double> freqs, GridKind k)
      : times_s(std::move(times)), freqs_hz(std::move(freqs)),
        values(times_s.size() * freqs_hz.size(), T{}), kind(k), boundary(times_s.size(), 0) {}

  std::size_t n_times() const { return times_s.size(); }
  std::size_t n_freqs() const { return freqs_hz.size(); }
  T& at(std::size_t t, std::size_t f) { return values[t * freqs_hz.size() + f]; }
  const T& at(std::size_t t, std::size_t f) const { return values[t * freqs_hz.size() + f]; }
  std::span<T> row(std::size_t t) { return {values.data() + t * freqs_hz.size(), freqs_hz.size()}; }
  std::span<const T> row(std::size_t t) const {
    return {values.data() + t * freqs_hz.size(), freqs_hz.size()};
  }
  double freq_step_hz() const { return freqs_hz.size() > 1 ? freqs_hz[1] - freqs_hz[0] : 1.0; }
  bool same_axes(const Grid<T>& o) const { return times_s == o.times_s && freqs_hz == o.freqs_hz; }
  template <typename U>
  bool same_axes(const Grid<U>& o) const { return times_s == o.times_s && freqs_hz == o.freqs_hz; }
};

using ComplexGrid = Grid<cplx>;
using RealGrid = Grid<double>;

// Elementwise squared modulus.
RealGrid to_power(const ComplexGrid& grid);

// Record of one noise draw. A clean passthrough is recorded with sigma == 0
// and snr_db == +inf.
struct NoiseRealization {
  std::uint64_t seed = 0;
  double sigma = 0.0;
  double snr_db = std::numeric_limits<double>::infinity();
  bool has_snr = true;
};

inline constexpr double kCleanSnr = std::numeric_limits<double>::infinity();

// Adds white Gaussian noise scaled after generation so that the full-record
// SNR equals snr_db exactly. snr_db == kCleanSnr returns the input unchanged.
// Throws std::invalid_argument("degenerate signal") for a zero-power input.
std::pair<Signal, NoiseRealization> add_noise(const Signal& s, double snr_db, std::uint64_t seed);

// Adds white Gaussian noise of fixed standard deviation (per real component
// for real signals; total complex variance sigma^2 otherwise).
std::pair<Signal, NoiseRealization> add_noise_sigma(const Signal& s, double sigma, std::uint64_t seed);

// 10 log10(P_clean / P_(noisy - clean)); +inf when the two are identical.
double measure_snr(const Signal& clean, const Signal& noisy);

}  // namespace conceft
