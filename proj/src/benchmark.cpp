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

#include "conceft/benchmark.hpp"

#include "conceft/bilinear.hpp"
#include "conceft/otd.hpp"
#include "conceft/rng.hpp"
#include "conceft/stft.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace conceft {

std::string method_name(Method m) {
  switch (m) {
    case Method::scalogram:
      return "scalogram";
    case Method::spwv:
      return "spwv";
    case Method::cwd:
      return "cwd";
    case Method::sst1:
      return "sst1";
    case Method::sst2:
      return "sst2";
    case Method::conceft:
      return "conceft";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (Method m : all_methods())
    if (method_name(m) == s) return m;
  throw std::invalid_argument("unknown method: " + name);
}

std::vector<Method> all_methods() {
  return {Method::scalogram, Method::spwv, Method::cwd, Method::sst1, Method::sst2, Method::conceft};
}

std::size_t AnalysisSetup::resolved_window_length(double fs) const {
  return window_length != 0 ? window_length : min_window_length(sigma_s, fs);
}

void AnalysisSetup::record(KeyValue& kv, const std::string& p) const {
  kv.set(p + "window_sigma_s", sigma_s);
  kv.set(p + "window_length", window_length);
  kv.set(p + "hop_samples", hop);
  kv.set(p + "n_fft", n_fft);
  kv.set(p + "gamma_rel", gamma_rel);
  kv.set(p + "conceft_J", conceft_J);
  kv.set(p + "conceft_N", conceft_N);
  const char* avg = averaging == Averaging::complex ? "complex" : averaging == Averaging::modulus ? "modulus" : "power";
  kv.set(p + "conceft_averaging", std::string(avg));
  kv.set(p + "scalogram_wavelet", std::string("morlet"));
  kv.set(p + "scalogram_omega0", scalogram.omega0);
  kv.set(p + "scalogram_voices_per_octave", scalogram.voices_per_octave);
  kv.set(p + "scalogram_f_min_hz", scalogram.f_min_hz);
  kv.set(p + "scalogram_f_max_hz", scalogram.f_max_hz);
  kv.set(p + "cwd_sigma", cwd_sigma);
}

RealGrid analyze_method(Method m, const Signal& signal, const AnalysisSetup& setup, std::uint64_t conceft_seed) {
  const double fs = signal.sample_rate_hz();
  const std::size_t L = setup.resolved_window_length(fs);
  const StftConfig lat = setup.stft_config();
  switch (m) {
    case Method::scalogram: {
      // Each voice's squared modulus is the mass of that voice, as each
      // pixel is for the lattice methods; divide by the voice width so the
      // mass-conserving rebin sees a density.
      RealGrid sc = scalogram(signal, setup.scalogram);
      const auto e = axis_edges(sc.freqs_hz);
      for (std::size_t t = 0; t < sc.n_times(); ++t)
        for (std::size_t k = 0; k < sc.n_freqs(); ++k) sc.at(t, k) /= e[k + 1] - e[k];
      const Lattice l = make_lattice(signal, L, lat);
      return rebin_frequency(sc, l.times_s(), l.freqs_hz());
    }
    case Method::spwv: {
      CohenConfig c = cohen_config_for(L, setup.hop, setup.n_fft);
      c.cwd_sigma = setup.cwd_sigma;
      return spwv(signal, c);
    }
    case Method::cwd: {
      CohenConfig c = cohen_config_for(L, setup.hop, setup.n_fft);
      c.cwd_sigma = setup.cwd_sigma;
      return cwd(signal, c);
    }
    case Method::sst1:
    case Method::sst2: {
      SstConfig cfg;
      cfg.gamma_rel = setup.gamma_rel;
      cfg.order = m == Method::sst1 ? SstOrder::first : SstOrder::second;
      return to_power(sst(signal, gaussian_window(setup.sigma_s, L, fs), cfg, lat).grid);
    }
    case Method::conceft: {
      ConceftConfig cc;
      cc.n_realizations = setup.conceft_N;
      cc.master_seed = conceft_seed;
      cc.averaging = setup.averaging;
      cc.sst.gamma_rel = setup.gamma_rel;
      cc.sst.order = SstOrder::second;
      return conceft(signal, hermite_windows(setup.conceft_J, setup.sigma_s, L, fs), cc, lat);
    }
  }
  throw std::invalid_argument("unknown method");
}

BenchmarkReport run_benchmark(const BenchmarkConfig& cfg) {
  if (cfg.methods.empty()) throw std::invalid_argument("benchmark: no methods");
  if (cfg.snr_db.empty()) throw std::invalid_argument("benchmark: no SNR values");
  if (cfg.n_realizations < 1) throw std::invalid_argument("benchmark: n_realizations must be >= 1");

  const GroundTruth truth = three_component_signal(cfg.signal_seed);
  const double fs = truth.signal.sample_rate_hz();
  const Lattice lat = make_lattice(truth.signal, cfg.setup.resolved_window_length(fs), cfg.setup.stft_config());
  const RealGrid itfr = ideal_tfr(truth, lat.times_s(), lat.freqs_hz(), cfg.squared_itfr);

  BenchmarkReport rep;
  for (Method m : cfg.methods) rep.methods.push_back(method_name(m));
  rep.snr_db = cfg.snr_db;
  rep.n_realizations = cfg.n_realizations;
  for (std::size_t r = 0; r < cfg.n_realizations; ++r) rep.noise_seeds.push_back(derive_seed(cfg.master_seed, kNoiseStream, r));

  const std::size_t ns = cfg.snr_db.size(), nm = cfg.methods.size(), nr = cfg.n_realizations;
  rep.scores.assign(ns, std::vector<std::vector<double>>(nm, std::vector<double>(nr, 0.0)));
  SlicePolicy policy;
  policy.skip_boundary_frames = cfg.skip_boundary_frames;

  // Each (SNR, realization) job writes only its own score slots.
  const auto jobs = static_cast<std::ptrdiff_t>(ns * nr);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t j = 0; j < jobs; ++j) {
    const std::size_t si = static_cast<std::size_t>(j) / nr;
    const std::size_t r = static_cast<std::size_t>(j) % nr;
    const Signal noisy = add_noise(truth.signal, cfg.snr_db[si], rep.noise_seeds[r]).first;
    const std::uint64_t cseed = derive_seed(cfg.master_seed, kConceftStream, si * nr + r);
    for (std::size_t mi = 0; mi < nm; ++mi) {
      const RealGrid g = analyze_method(cfg.methods[mi], noisy, cfg.setup, cseed);
      rep.scores[si][mi][r] = mean_otd(g, itfr, policy).value;
    }
  }

  rep.mean_otd.assign(ns, std::vector<double>(nm, 0.0));
  rep.std_otd.assign(ns, std::vector<double>(nm, 0.0));
  for (std::size_t si = 0; si < ns; ++si) {
    for (std::size_t mi = 0; mi < nm; ++mi) {
      const auto& v = rep.scores[si][mi];
      double mean = 0.0;
      for (double x : v) mean += x;
      mean /= static_cast<double>(nr);
      double var = 0.0;
      for (double x : v) var += (x - mean) * (x - mean);
      rep.mean_otd[si][mi] = mean;
      rep.std_otd[si][mi] = nr > 1 ? std::sqrt(var / static_cast<double>(nr - 1)) : 0.0;
    }
  }

  KeyValue& kv = rep.manifest;
  kv.set("command", std::string("benchmark"));
  std::string methods;
  for (const auto& m : rep.methods) methods += (methods.empty() ? "" : ",") + m;
  kv.set("methods", methods);
  std::string snrs;
  for (double s : cfg.snr_db) snrs += (snrs.empty() ? "" : ",") + format_double(s);
  kv.set("snr_db", snrs);
  kv.set("n_realizations", cfg.n_realizations);
  kv.set("master_seed", static_cast<unsigned long long>(cfg.master_seed));
  kv.set("signal_seed", static_cast<unsigned long long>(cfg.signal_seed));
  kv.set("signal_attempts", truth.attempts);
  kv.set("signal_edge_ms", kImtEdgeMs);
  kv.set("squared_itfr", cfg.squared_itfr);
  kv.set("skip_boundary_frames", cfg.skip_boundary_frames);
  kv.set("rng", std::string(Rng::kName) + " v" + std::to_string(Rng::kVersion));
  kv.set("noise_seed_rule", std::string("derive_seed(master_seed, noise_stream, realization)"));
  kv.set("conceft_seed_rule", std::string("derive_seed(master_seed, conceft_stream, snr_index * n + realization)"));
  std::string seeds;
  for (auto s : rep.noise_seeds) seeds += (seeds.empty() ? "" : ",") + std::to_string(s);
  kv.set("noise_seeds", seeds);
  kv.set("lattice_frames", lat.n_frames());
  kv.set("lattice_bins", lat.n_freqs());
  kv.set("lattice_freq_step_hz", lat.freq_step_hz());
  cfg.setup.record(kv);
  kv.set("resolved_window_length", cfg.setup.resolved_window_length(fs));
  return rep;
}

void write_table_csv(const std::filesystem::path& path, const BenchmarkReport& r) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "snr_db";
  for (const auto& m : r.methods) out << ',' << m;
  out << '\n';
  char buf[64];
  for (std::size_t si = 0; si < r.snr_db.size(); ++si) {
    out << format_double(r.snr_db[si]);
    for (std::size_t mi = 0; mi < r.methods.size(); ++mi) {
      std::snprintf(buf, sizeof buf, "%.2f (%.2f)", r.mean_otd[si][mi] / 1000.0, r.std_otd[si][mi] / 1000.0);
      out << ',' << buf;
    }
    out << '\n';
  }
}

void write_long_csv(const std::filesystem::path& path, const BenchmarkReport& r) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "snr_db,method,realization,noise_seed,otd_khz\n";
  for (std::size_t si = 0; si < r.snr_db.size(); ++si)
    for (std::size_t mi = 0; mi < r.methods.size(); ++mi)
      for (std::size_t k = 0; k < r.n_realizations; ++k)
        out << format_double(r.snr_db[si]) << ',' << r.methods[mi] << ',' << k << ',' << r.noise_seeds[k] << ','
            << format_double(r.scores[si][mi][k] / 1000.0) << '\n';
}

}  // namespace conceft
