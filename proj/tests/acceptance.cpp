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

// Acceptance checks. Prints one PASS/FAIL line per criterion, followed by the
// measured quantities, and exits nonzero if any criterion fails.
//
// Usage: acceptance [criterion ...]   (default: all of 1..10)

#include "conceft/benchmark.hpp"
#include "conceft/imt.hpp"
#include "conceft/oae.hpp"
#include "conceft/otd.hpp"
#include "conceft/rng.hpp"
#include "conceft/sst.hpp"
#include "conceft/stft.hpp"
#include "conceft/windows.hpp"
#include "support.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <set>
#include <string>
#include <vector>

using namespace conceft;
using namespace testsupport;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

template <typename... Args>
std::string fmtn(const char* f, Args... a) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, a...);
  return buf;
}

// 1. Orthonormality and analytic derivatives of the Hermite families.
Outcome window_suite() {
  double worst_ortho = 0.0, worst_d1 = 0.0, worst_d2 = 0.0;
  const std::size_t L = min_window_length(kSigma, kFs);
  for (int J = 1; J <= 6; ++J) {
    const WindowFamily fam = hermite_windows(J, kSigma, L, kFs);
    for (int a = 0; a < J; ++a)
      for (int b = 0; b < J; ++b) {
        const cplx ip = inner_product(fam.tapers[a].h, fam.tapers[b].h, kFs);
        worst_ortho = std::max(worst_ortho, std::abs(ip - cplx(a == b ? 1.0 : 0.0, 0.0)));
      }
    // Centered differences of the continuous window on a fine grid, step
    // sigma / 1000 (truncation error ~ 1e-7 relative).
    const double h = kSigma * 1e-4;
    for (int j = 0; j < J; ++j) {
      std::vector<cplx> d1, fd1, d2, fd2;
      for (double u = -4.0 * kSigma; u <= 4.0 * kSigma; u += kSigma / 50.0) {
        d1.push_back(fam.evaluate(j, u, 1));
        fd1.push_back((fam.evaluate(j, u + h, 0) - fam.evaluate(j, u - h, 0)) / (2.0 * h));
        d2.push_back(fam.evaluate(j, u, 2));
        fd2.push_back((fam.evaluate(j, u + h, 1) - fam.evaluate(j, u - h, 1)) / (2.0 * h));
      }
      worst_d1 = std::max(worst_d1, rel_l2(fd1, d1));
      worst_d2 = std::max(worst_d2, rel_l2(fd2, d2));
    }
  }
  return {worst_ortho <= 1e-8 && worst_d1 <= 1e-6 && worst_d2 <= 1e-6,
          fmtn("max |<h_a,h_b> - delta| = %.3g; derivative rel L2: first %.3g, second %.3g", worst_ortho, worst_d1,
               worst_d2)};
}

// 2. Tone concentration and chirp ridge accuracy.
Outcome tone_chirp_suite() {
  const std::size_t L = min_window_length(kSigma, kFs);
  const WindowFamily g = gaussian_window(kSigma, L, kFs);
  const StftConfig lat{4, 512};
  const double f0 = 3000.3;
  double worst_conc = 1.0;
  for (SstOrder ord : {SstOrder::first, SstOrder::second}) {
    SstConfig c;
    c.order = ord;
    worst_conc = std::min(worst_conc, worst_tone_concentration(sst(tone(f0, 1024), g, c, lat).grid, f0));
  }

  // Gaussian-enveloped chirp 1 kHz + 400 kHz/s; slices with envelope >= e^-2.
  const double b = 1000.0, a = 4e5, tc = 0.016, es = 0.006;
  const Signal ch = gaussian_chirp(b, a, tc, es, 1024);
  SstConfig c2;
  c2.order = SstOrder::second;
  const SstResult r2 = sst(ch, g, c2, lat);
  const double df = r2.grid.freq_step_hz();
  double worst_bins = 0.0;
  for (std::size_t t = 0; t < r2.grid.n_times(); ++t) {
    const double tt = r2.grid.times_s[t];
    if (r2.grid.boundary[t] || std::abs(tt - tc) > 2.0 * es) continue;
    worst_bins = std::max(worst_bins, std::abs(ridge_hz(r2.grid, t) - (b + a * tt)) / df);
  }

  // Fast chirp 2 kHz + 1.5 MHz/s: median absolute ridge error per order.
  const double fb = 2000.0, fa = 1.5e6;
  const Signal fast = gaussian_chirp(fb, fa, tc, es, 1024);
  const double med[2] = {fast_chirp_ridge_error(fast, g, SstOrder::first, fb, fa, tc, es),
                         fast_chirp_ridge_error(fast, g, SstOrder::second, fb, fa, tc, es)};
  const bool pass = worst_conc >= 0.99 && worst_bins <= 1.0 && med[1] < med[0];
  return {pass, fmtn("tone worst-slice concentration %.6f; chirp max ridge error %.3f bins; fast chirp median error "
                     "first %.1f Hz, second %.1f Hz",
                     worst_conc, worst_bins, med[0], med[1])};
}

// 3. Per-slice mass conservation and out-of-band loss.
Outcome mass_suite() {
  const std::size_t L = min_window_length(kSigma, kFs);
  const WindowFamily g = gaussian_window(kSigma, L, kFs);
  const StftConfig lat{4, 512};
  std::vector<std::pair<std::string, Signal>> sigs;
  sigs.emplace_back("tone", tone(3000.3, 1024));
  sigs.emplace_back("chirp", gaussian_chirp(1000.0, 4e5, 0.016, 0.006, 1024));
  const GroundTruth truth = three_component_signal(1);
  sigs.emplace_back("three-component", truth.signal);
  sigs.emplace_back("three-component 0 dB", add_noise(truth.signal, 0.0, 5).first);
  const CochlearMap map;
  const IrregularityProfile prof = white_irregularity(1.0, 3);
  ImpulseConfig guarded;
  guarded.f_hi_hz = 12000.0;
  sigs.emplace_back("oae impulse to 12 kHz",
                    impulse_response(reflectance_on_fft_grid(prof, map, guarded), guarded).real_part());
  // Spectrum reaching fs / 2: its onset sweep is legitimately reassigned past
  // the axis, so it enters the mass check but not the in-band loss bound.
  const ImpulseConfig full;
  const Signal full_band = impulse_response(reflectance_on_fft_grid(prof, map, full), full).real_part();

  double worst_mass = 0.0, worst_drop = 0.0, full_band_drop = 0.0;
  std::string worst_drop_case;
  const auto check = [&](const std::string& name, const Signal& s, bool in_band) {
    const StftFamily fam = stft_family(s, g, lat);
    for (SstOrder ord : {SstOrder::first, SstOrder::second}) {
      SstConfig c;
      c.order = ord;
      const ReassignmentField f = reassign(fam, c);
      for (Assignment as : {Assignment::nearest, Assignment::linear}) {
        const SstResult r = synchrosqueeze(fam, f, fam.v_h.freqs_hz, as);
        worst_mass = std::max(worst_mass, worst_slice_mass_error(fam, f, r));
        if (!in_band) {
          full_band_drop = std::max(full_band_drop, r.dropped_fraction());
        } else if (r.dropped_fraction() > worst_drop) {
          worst_drop = r.dropped_fraction();
          worst_drop_case = name + (ord == SstOrder::first ? ", first order" : ", second order");
        }
      }
    }
  };
  for (const auto& [name, s] : sigs) check(name, s, true);
  check("oae impulse to fs / 2", full_band, false);
  return {worst_mass <= 1e-10 && worst_drop < 0.01,
          fmtn("worst per-slice mass mismatch %.3g (relative); worst in-band dropped fraction %.3g (%s); "
               "full-band oae impulse dropped %.3g (not bounded)",
               worst_mass, worst_drop, worst_drop_case.c_str(), full_band_drop)};
}

// 4. Random-window spectrogram average versus the multitaper spectrogram.
Outcome collapse_suite() {
  const std::size_t L = min_window_length(kSigma, kFs);
  const GroundTruth truth = three_component_signal(1);
  const Signal s = add_noise(truth.signal, 5.0, 17).first;
  const WindowFamily fam = hermite_windows(2, kSigma, L, kFs);
  ConceftConfig cc;
  cc.n_realizations = 2000;
  cc.master_seed = 11;
  const StftConfig lat{4, 512};
  const RealGrid rw = random_window_spectrogram(s, fam, conceft_sphere_samples(2, cc), lat);
  const RealGrid mt = multitaper_spectrogram(s, fam, lat);
  double ab = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < mt.values.size(); ++i) {
    ab += rw.values[i] * mt.values[i];
    bb += mt.values[i] * mt.values[i];
  }
  const double c = ab / bb;
  std::vector<double> scaled(mt.values.size());
  for (std::size_t i = 0; i < scaled.size(); ++i) scaled[i] = c * mt.values[i];
  const double err = rel_l2(scaled, rw.values);
  return {c > 0.0 && err <= 0.02, fmtn("fitted scale %.5f; relative L2 %.4g", c, err)};
}

// 5. Direct reflectance integral versus the wavenumber form.
Outcome reflectance_suite() {
  const CochlearMap map;  // l = 0.72 cm, Lambda = l / 5.5, Delta x = Lambda / 2
  std::vector<double> om;
  for (double f = 200.0; f <= 16000.0; f += 10.0) om.push_back(2.0 * std::numbers::pi * f);
  double worst = 0.0;
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const IrregularityProfile prof = white_irregularity(1.0, seed);
    worst = std::max(worst, rel_l2(reflectance_wavenumber(prof, map, om).R, reflectance(prof, map, om).R));
  }
  return {worst <= 1e-6, fmtn("worst relative L2 over 3 profiles, %zu frequencies: %.3g", om.size(), worst)};
}

// 6. Monte Carlo mean group delay.
Outcome group_delay_suite() {
  const CochlearMap map;
  const GroupDelayStats st = monte_carlo_group_delay(map, {1000.0, 2000.0, 4000.0}, 200, 1);
  bool pass = true;
  std::string d;
  for (std::size_t i = 0; i < st.freqs_hz.size(); ++i) {
    const double rel = st.mean_delay_s[i] / st.expected_delay_s[i] - 1.0;
    pass = pass && std::abs(rel) <= 0.05;
    d += fmtn("%s%.0f Hz %.3f ms vs %.3f ms (%+.2f%%)", i ? "; " : "", st.freqs_hz[i], st.mean_delay_s[i] * 1e3,
              st.expected_delay_s[i] * 1e3, rel * 100.0);
  }
  return {pass, d};
}

// 7. Second-order SST ridge of the simulated impulse response versus the EIF.
Outcome eif_suite() {
  const CochlearMap map;
  const ImpulseConfig ic;
  const std::size_t L = min_window_length(kSigma, kFs);
  const WindowFamily g = gaussian_window(kSigma, L, kFs);
  SstConfig c;
  c.order = SstOrder::second;
  std::vector<double> pooled, per_seed;
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const IrregularityProfile prof = white_irregularity(1.0, seed);
    const Signal r = impulse_response(reflectance_on_fft_grid(prof, map, ic), ic).real_part();
    const SstResult res = sst(r, g, c, {1, 512});
    std::vector<double> ratios;
    for (std::size_t t = 0; t < res.grid.n_times(); ++t) {
      const double tt = res.grid.times_s[t];
      if (tt < 3e-3 || tt > 8e-3) continue;
      ratios.push_back(ridge_hz(res.grid, t) / expected_if(tt, map));
    }
    per_seed.push_back(median(ratios));
    pooled.insert(pooled.end(), ratios.begin(), ratios.end());
  }
  const double m = median(pooled);
  const auto [mn, mx] = std::minmax_element(per_seed.begin(), per_seed.end());
  return {std::abs(m - 1.0) <= 0.10,
          fmtn("median ridge / (11.0 / t) over 12 seeds, t in [3, 8] ms: %.4f (per-seed medians %.3f..%.3f)", m, *mn,
               *mx)};
}

// 8. Two-tone-burst approximation error versus Delta x / Lambda.
Outcome two_tone_suite() {
  const CochlearMap map = CochlearMap::with_ratios(5.7, 0.5);
  const double delay = expected_group_delay(2.0 * std::numbers::pi * 4000.0, map);
  int wins = 0;
  const int n = 50;
  for (int seed = 1; seed <= n; ++seed) {
    const IrregularityProfile prof = white_irregularity(1.0, static_cast<std::uint64_t>(seed));
    const double e05 = two_tone_burst_experiment(map, prof, 0.5).rel_err_l2;
    const double e20 = two_tone_burst_experiment(map, prof, 2.0).rel_err_l2;
    if (e20 < e05) ++wins;
  }
  const bool pass = wins >= 45 && std::abs(delay - 2.85e-3) <= 1e-15;
  return {pass, fmtn("error(2.0) < error(0.5) for %d/%d seeds; 4 kHz delay %.12f ms", wins, n, delay * 1e3)};
}

// Transport cost through the quantile functions, by merging the two
// cumulative sequences (independent of the cumulative-difference formula).
double quantile_otd(const SliceMeasure& a, const SliceMeasure& b) {
  std::size_t i = 0, j = 0;
  double ca = a.mass[0], cb = b.mass[0], prev = 0.0, cost = 0.0;
  const std::size_t n = a.mass.size();
  while (i < n && j < n) {
    const double next = std::min(ca, cb);
    cost += (next - prev) * std::abs(a.freqs_hz[i] - b.freqs_hz[j]);
    prev = next;
    if (ca <= cb) {
      if (++i < n) ca += a.mass[i];
    } else {
      if (++j < n) cb += b.mass[j];
    }
    if (prev >= 1.0 - 1e-15) break;
  }
  return cost;
}

// 9. OTD metric properties.
Outcome otd_suite() {
  Rng rng(2024);
  double worst_dirac = 0.0, worst_ident = 0.0, worst_sym = 0.0, worst_tri = 0.0, worst_oracle = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 200.0);
    std::vector<double> f(n);
    double x = rng.uniform() * 100.0;
    for (auto& v : f) {
      v = x;
      x += 0.1 + rng.uniform() * 50.0;
    }
    auto random_measure = [&] {
      std::vector<double> m(n);
      for (auto& v : m) v = rng.uniform() < 0.3 ? 0.0 : rng.uniform();
      m[static_cast<std::size_t>(rng.uniform() * static_cast<double>(n))] += 1.0;
      return normalize_slice(m, f);
    };
    const SliceMeasure a = random_measure(), b = random_measure(), c = random_measure();
    const double ab = otd(a, b), ba = otd(b, a), ac = otd(a, c), cb = otd(c, b);
    worst_ident = std::max(worst_ident, otd(a, a));
    worst_sym = std::max(worst_sym, std::abs(ab - ba));
    worst_tri = std::max(worst_tri, ab - (ac + cb));
    worst_oracle = std::max(worst_oracle, std::abs(ab - quantile_otd(a, b)) / std::max(1.0, ab));
    std::vector<double> da(n, 0.0), db(n, 0.0);
    const std::size_t ia = static_cast<std::size_t>(rng.uniform() * static_cast<double>(n));
    const std::size_t ib = static_cast<std::size_t>(rng.uniform() * static_cast<double>(n));
    da[ia] = 1.0 + rng.uniform();
    db[ib] = 1.0 + rng.uniform();
    const double dd = otd(normalize_slice(da, f), normalize_slice(db, f));
    worst_dirac = std::max(worst_dirac, std::abs(dd - std::abs(f[ia] - f[ib])) / std::max(1.0, std::abs(f[ia] - f[ib])));
  }
  const bool pass = worst_dirac <= 1e-9 && worst_ident <= 1e-9 && worst_sym <= 1e-9 && worst_tri <= 1e-9 &&
                    worst_oracle <= 1e-9;
  return {pass, fmtn("1000 trials: dirac %.3g, identity %.3g, symmetry %.3g, triangle excess %.3g, quantile form %.3g",
                     worst_dirac, worst_ident, worst_sym, worst_tri, worst_oracle)};
}

// 10. Benchmark orderings over 30 noise realizations.
Outcome table_suite() {
  BenchmarkConfig cfg;
  cfg.snr_db = {100.0, 10.0, 5.0, 2.0, 0.0};
  cfg.n_realizations = 30;
  const BenchmarkReport r = run_benchmark(cfg);
  auto col = [&](const std::string& m) {
    return static_cast<std::size_t>(std::find(r.methods.begin(), r.methods.end(), m) - r.methods.begin());
  };
  const std::size_t sc = col("scalogram"), sp = col("spwv"), cw = col("cwd"), s1 = col("sst1"), cf = col("conceft");
  bool a = true, b = true, c = true;
  std::string d;
  for (std::size_t si = 0; si < r.snr_db.size(); ++si) {
    const auto& m = r.mean_otd[si];
    const double best = std::min({m[sc], m[sp], m[cw]});
    const double impr = (best - m[cf]) / best;
    d += fmtn("\n    %5.0f dB: scalogram %.3f spwv %.3f cwd %.3f sst1 %.3f sst2 %.3f conceft %.3f kHz; improvement %.1f%%",
              r.snr_db[si], m[sc] / 1e3, m[sp] / 1e3, m[cw] / 1e3, m[s1] / 1e3, m[col("sst2")] / 1e3, m[cf] / 1e3,
              impr * 100.0);
    if (r.snr_db[si] >= 100.0) {
      c = c && m[s1] < m[cf];
      continue;
    }
    a = a && m[cf] <= m[s1] && m[s1] <= best;
    b = b && impr >= 0.05 && impr <= 0.30;
  }
  return {a && b && c, fmtn("(a) ordering %s, (b) improvement band %s, (c) clean inversion %s", a ? "ok" : "violated",
                            b ? "ok" : "violated", c ? "ok" : "violated") +
                           d};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> suites = {
      {"window suite", window_suite},
      {"tone/chirp oracles", tone_chirp_suite},
      {"mass conservation", mass_suite},
      {"spectrogram collapse", collapse_suite},
      {"reflectance oracle", reflectance_suite},
      {"mean group delay", group_delay_suite},
      {"EIF ridge", eif_suite},
      {"two-tone burst", two_tone_suite},
      {"OTD metric", otd_suite},
      {"benchmark orderings", table_suite},
  };
  std::set<int> pick;
  for (int i = 1; i < argc; ++i) pick.insert(std::atoi(argv[i]));
  int failed = 0;
  for (std::size_t i = 0; i < suites.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!pick.empty() && !pick.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = suites[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %d (%s) [%.1f s]: %s\n", o.pass ? "PASS" : "FAIL", id, suites[i].first, sec,
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
