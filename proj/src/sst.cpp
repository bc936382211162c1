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

#include "conceft/sst.hpp"

#include "conceft/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace conceft {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double max_modulus(const ComplexGrid& g) {
  double m = 0.0;
  for (const auto& v : g.values) m = std::max(m, std::abs(v));
  return m;
}

ReassignmentField empty_field(const StftFamily& fam, const SstConfig& cfg) {
  if (!(cfg.gamma_rel > 0.0 && cfg.gamma_rel < 1.0)) throw std::invalid_argument("sst: gamma_rel must be in (0, 1)");
  ReassignmentField f;
  f.times_s = fam.v_h.times_s;
  f.freqs_hz = fam.v_h.freqs_hz;
  f.omega.assign(fam.v_h.values.size(), 0.0);
  f.valid.assign(fam.v_h.values.size(), 0);
  f.threshold = cfg.gamma_rel * max_modulus(fam.v_h);
  return f;
}

}  // namespace

ReassignmentField reassign_first(const StftFamily& fam, const SstConfig& cfg) {
  ReassignmentField f = empty_field(fam, cfg);
  if (f.threshold <= 0.0) return f;
  const std::size_t nf = f.freqs_hz.size();
  for (std::size_t i = 0; i < f.omega.size(); ++i) {
    const cplx vh = fam.v_h.values[i];
    if (!(std::abs(vh) > f.threshold)) continue;
    const double w = f.freqs_hz[i % nf] - std::imag(fam.v_dh.values[i] / (kTwoPi * vh));
    if (!std::isfinite(w)) continue;
    f.omega[i] = w;
    f.valid[i] = 1;
    ++f.n_valid;
  }
  return f;
}

ReassignmentField reassign_second(const StftFamily& fam, const SstConfig& cfg) {
  ReassignmentField f = reassign_first(fam, cfg);
  if (f.n_valid == 0) return f;
  const std::size_t nt = f.times_s.size();
  const std::size_t nf = f.freqs_hz.size();
  const double dt_tol = 1e-8 * static_cast<double>(fam.lattice.hop) / fam.lattice.sample_rate_hz;

  // Time offset T - t = Re(V_Th / V_h) wherever V_h is nonzero; neighbours
  // below the floor still help the dT/dnu test.
  std::vector<double> toff(f.omega.size(), 0.0);
  std::vector<char> has_t(f.omega.size(), 0);
  for (std::size_t i = 0; i < toff.size(); ++i) {
    const cplx vh = fam.v_h.values[i];
    if (vh == cplx(0.0, 0.0)) continue;
    const double v = std::real(fam.v_th.values[i] / vh);
    if (!std::isfinite(v)) continue;
    toff[i] = v;
    has_t[i] = 1;
  }

  for (std::size_t t = 0; t < nt; ++t) {
    for (std::size_t k = 0; k < nf; ++k) {
      const std::size_t i = t * nf + k;
      if (!f.valid[i]) continue;
      double dT = 0.0;
      const bool lo = k > 0 && has_t[i - 1];
      const bool hi = k + 1 < nf && has_t[i + 1];
      if (lo && hi)
        dT = 0.5 * (toff[i + 1] - toff[i - 1]);
      else if (hi)
        dT = toff[i + 1] - toff[i];
      else if (lo)
        dT = toff[i] - toff[i - 1];
      if (!(std::abs(dT) > dt_tol)) {
        ++f.n_fallback;
        continue;
      }
      const cplx vh = fam.v_h.values[i];
      const cplx vdh = fam.v_dh.values[i];
      // V_h^2 + V_Th V_Dh - V_(D T h) V_h with D(T h) = h + u Dh; the V_h^2
      // terms cancel, leaving the companions we store.
      const cplx den = fam.v_th.values[i] * vdh - fam.v_tdh.values[i] * vh;
      if (!(std::abs(den) > 1e-12 * std::norm(vh))) {
        ++f.n_fallback;
        continue;
      }
      const cplx q = (fam.v_ddh.values[i] * vh - vdh * vdh) / (cplx(0.0, kTwoPi) * den);
      const double w = f.omega[i] - q.real() * toff[i];
      if (!std::isfinite(w)) {
        ++f.n_fallback;
        continue;
      }
      f.omega[i] = w;
      ++f.n_corrected;
    }
  }
  return f;
}

ReassignmentField reassign(const StftFamily& fam, const SstConfig& cfg) {
  return cfg.order == SstOrder::first ? reassign_first(fam, cfg) : reassign_second(fam, cfg);
}

double SstResult::dropped_fraction() const {
  const double in = total_abs_mass - below_threshold_abs_mass;
  return in > 0.0 ? dropped_abs_mass / in : 0.0;
}

double SstResult::below_threshold_fraction() const {
  return total_abs_mass > 0.0 ? below_threshold_abs_mass / total_abs_mass : 0.0;
}

SstResult synchrosqueeze(const StftFamily& fam, const ReassignmentField& field, const std::vector<double>& out_freqs,
                         Assignment assignment) {
  if (!fam.v_h.same_axes(fam.v_dh) || field.times_s != fam.v_h.times_s || field.freqs_hz != fam.v_h.freqs_hz)
    throw std::invalid_argument("synchrosqueeze: field and family axes differ");
  if (out_freqs.size() < 2) throw std::invalid_argument("synchrosqueeze: output axis needs at least two bins");
  SstResult res;
  res.grid = ComplexGrid(fam.v_h.times_s, out_freqs, GridKind::complex_coefficients);
  res.grid.boundary = fam.v_h.boundary;
  const double f0 = out_freqs.front();
  const double dout = (out_freqs.back() - f0) / static_cast<double>(out_freqs.size() - 1);
  const double dnu = fam.v_h.freq_step_hz();
  const std::size_t nt = fam.v_h.n_times();
  const std::size_t nf = fam.v_h.n_freqs();
  const auto nout = static_cast<std::ptrdiff_t>(out_freqs.size());

  for (std::size_t t = 0; t < nt; ++t) {
    auto row = res.grid.row(t);
    for (std::size_t k = 0; k < nf; ++k) {
      const std::size_t i = t * nf + k;
      const cplx v = fam.v_h.values[i];
      const double a = std::abs(v) * dnu;
      res.total_abs_mass += a;
      if (!field.valid[i]) {
        res.below_threshold_abs_mass += a;
        continue;
      }
      const double pos = (field.omega[i] - f0) / dout;
      const cplx m = v * (dnu / dout);
      if (assignment == Assignment::nearest) {
        const double r = std::round(pos);
        if (r < 0.0 || r >= static_cast<double>(nout)) {
          res.dropped_abs_mass += a;
          ++res.n_dropped;
          continue;
        }
        row[static_cast<std::size_t>(r)] += m;
      } else {
        if (pos < -0.5 || pos > static_cast<double>(nout) - 0.5) {
          res.dropped_abs_mass += a;
          ++res.n_dropped;
          continue;
        }
        // Within half a bin of either end the whole mass goes to the end bin.
        const double c = std::clamp(pos, 0.0, static_cast<double>(nout - 1));
        const auto lo = static_cast<std::ptrdiff_t>(std::floor(c));
        const double frac = c - static_cast<double>(lo);
        row[static_cast<std::size_t>(lo)] += m * (1.0 - frac);
        if (frac > 0.0) row[static_cast<std::size_t>(lo + 1)] += m * frac;
      }
    }
  }
  return res;
}

SstResult sst(const Signal& signal, const WindowFamily& window, const SstConfig& cfg, const StftConfig& lattice) {
  const StftFamily fam = stft_family(signal, window, lattice);
  const ReassignmentField field = reassign(fam, cfg);
  return synchrosqueeze(fam, field, fam.v_h.freqs_hz, cfg.assignment);
}

namespace {

// Running accumulation of realizations in a fixed order.
struct Accumulator {
  Averaging mode;
  std::vector<cplx> c;
  std::vector<double> r;
  std::size_t count = 0;

  void add(const ComplexGrid& g) {
    if (mode == Averaging::complex) {
      if (c.empty()) c.assign(g.values.size(), 0.0);
      for (std::size_t i = 0; i < c.size(); ++i) c[i] += g.values[i];
    } else {
      if (r.empty()) r.assign(g.values.size(), 0.0);
      if (mode == Averaging::modulus)
        for (std::size_t i = 0; i < r.size(); ++i) r[i] += std::abs(g.values[i]);
      else
        for (std::size_t i = 0; i < r.size(); ++i) r[i] += std::norm(g.values[i]);
    }
    ++count;
  }
};

}  // namespace

ComplexGrid multitaper_sst(const Signal& signal, const WindowFamily& family, const SstConfig& cfg,
                           const StftConfig& lattice, Averaging averaging) {
  if (family.size() < 1) throw std::invalid_argument("multitaper_sst: empty window family");
  Accumulator acc{averaging, {}, {}, 0};
  ComplexGrid out;
  for (std::size_t j = 0; j < family.size(); ++j) {
    SstResult s = sst(signal, select(family, j), cfg, lattice);
    acc.add(s.grid);
    if (j == 0) out = std::move(s.grid);
  }
  const double inv = 1.0 / static_cast<double>(family.size());
  if (averaging == Averaging::complex) {
    if (family.size() > 1)
      for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = acc.c[i] * inv;
  } else {
    out.kind = GridKind::power;
    for (std::size_t i = 0; i < out.values.size(); ++i) {
      double v = acc.r[i] * inv;
      if (averaging == Averaging::modulus) v *= v;
      out.values[i] = v;
    }
  }
  return out;
}

std::vector<SphereSample> conceft_sphere_samples(int J, const ConceftConfig& cfg) {
  if (cfg.n_realizations < 1) throw std::invalid_argument("conceft: N must be >= 1");
  std::vector<SphereSample> s;
  s.reserve(static_cast<std::size_t>(cfg.n_realizations));
  for (int n = 0; n < cfg.n_realizations; ++n)
    s.push_back(sample_sphere(J, derive_seed(cfg.master_seed, kSphereStream, static_cast<std::uint64_t>(n))));
  return s;
}

namespace {

// Evaluates one grid per sample in parallel, folding results into the
// accumulator strictly in sample order so the sum is schedule independent.
template <typename Eval>
void ordered_reduce(std::size_t n, const Eval& eval, Accumulator& acc) {
  constexpr std::size_t kBlock = 16;
  std::vector<ComplexGrid> block(kBlock);
  for (std::size_t b0 = 0; b0 < n; b0 += kBlock) {
    const auto cnt = static_cast<std::ptrdiff_t>(std::min(kBlock, n - b0));
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < cnt; ++i) block[static_cast<std::size_t>(i)] = eval(b0 + static_cast<std::size_t>(i));
    for (std::ptrdiff_t i = 0; i < cnt; ++i) acc.add(block[static_cast<std::size_t>(i)]);
  }
}

RealGrid finish(const Accumulator& acc, const ComplexGrid& axes) {
  RealGrid out(axes.times_s, axes.freqs_hz, GridKind::power);
  out.boundary = axes.boundary;
  const double inv = 1.0 / static_cast<double>(acc.count);
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    switch (acc.mode) {
      case Averaging::complex:
        out.values[i] = std::norm(acc.c[i] * inv);
        break;
      case Averaging::modulus: {
        const double v = acc.r[i] * inv;
        out.values[i] = v * v;
        break;
      }
      case Averaging::power:
        out.values[i] = acc.r[i] * inv;
        break;
    }
  }
  return out;
}

}  // namespace

RealGrid conceft_with_samples(const Signal& signal, const WindowFamily& family,
                              const std::vector<SphereSample>& samples, const SstConfig& sst_cfg,
                              Averaging averaging, const StftConfig& lattice) {
  if (samples.empty()) throw std::invalid_argument("conceft: N must be >= 1");
  Accumulator acc{averaging, {}, {}, 0};
  ordered_reduce(
      samples.size(),
      [&](std::size_t n) { return sst(signal, combine(family, samples[n]), sst_cfg, lattice).grid; }, acc);
  // Axes and boundary flags are those of the STFT lattice.
  const ComplexGrid ref = stft(signal, select(family, 0), lattice);
  return finish(acc, ref);
}

RealGrid conceft(const Signal& signal, const WindowFamily& family, const ConceftConfig& cfg,
                 const StftConfig& lattice) {
  const auto samples = conceft_sphere_samples(static_cast<int>(family.size()), cfg);
  return conceft_with_samples(signal, family, samples, cfg.sst, cfg.averaging, lattice);
}

RealGrid random_window_spectrogram(const Signal& signal, const WindowFamily& family,
                                   const std::vector<SphereSample>& samples, const StftConfig& lattice) {
  if (samples.empty()) throw std::invalid_argument("random_window_spectrogram: no samples");
  Accumulator acc{Averaging::power, {}, {}, 0};
  ordered_reduce(
      samples.size(), [&](std::size_t n) { return stft(signal, combine(family, samples[n]), lattice); }, acc);
  const ComplexGrid ref = stft(signal, select(family, 0), lattice);
  return finish(acc, ref);
}

RealGrid multitaper_spectrogram(const Signal& signal, const WindowFamily& family, const StftConfig& lattice) {
  Accumulator acc{Averaging::power, {}, {}, 0};
  ComplexGrid axes;
  for (std::size_t j = 0; j < family.size(); ++j) {
    ComplexGrid g = stft(signal, select(family, j), lattice);
    acc.add(g);
    if (j == 0) axes = std::move(g);
  }
  return finish(acc, axes);
}

}  // namespace conceft
