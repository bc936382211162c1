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

// Command-line front end: synthesis, analysis, benchmarking and replay.

#include "conceft/benchmark.hpp"
#include "conceft/bilinear.hpp"
#include "conceft/imt.hpp"
#include "conceft/io.hpp"
#include "conceft/oae.hpp"
#include "conceft/rng.hpp"
#include "conceft/scalogram.hpp"
#include "conceft/sst.hpp"
#include "conceft/stft.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace conceft;

namespace {

fs::path default_out_dir() {
  const char* env = std::getenv("CONCEFT_OUT_DIR");
  return env && *env ? fs::path(env) : fs::path(".");
}

// Manifest keys shared by every command: the argument vector (for replay)
// and the RNG identity.
KeyValue base_manifest(const std::string& command, const std::vector<std::string>& args) {
  KeyValue kv;
  kv.set("command", command);
  kv.set("argc", args.size());
  for (std::size_t i = 0; i < args.size(); ++i) kv.set("arg." + std::to_string(i), args[i]);
  kv.set("rng", std::string(Rng::kName) + " v" + std::to_string(Rng::kVersion));
  return kv;
}

Averaging parse_averaging(const std::string& s) {
  if (s == "complex") return Averaging::complex;
  if (s == "modulus") return Averaging::modulus;
  if (s == "power") return Averaging::power;
  throw CLI::ValidationError("--averaging", "expected complex, modulus or power");
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item == "inf" || item == "clean") {
      v.push_back(kCleanSnr);
      continue;
    }
    try {
      v.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw CLI::ValidationError("list", "not a number: " + item);
    }
  }
  return v;
}

RealGrid clip_for_export(RealGrid g) {
  if (g.kind == GridKind::bilinear)
    for (double& v : g.values) v = std::max(v, 0.0);
  return g;
}

RealGrid real_of(const ComplexGrid& g) {
  if (g.kind == GridKind::complex_coefficients) return to_power(g);
  RealGrid r(g.times_s, g.freqs_hz, GridKind::power);
  r.boundary = g.boundary;
  for (std::size_t i = 0; i < g.values.size(); ++i) r.values[i] = g.values[i].real();
  return r;
}

struct SynthOaeArgs {
  std::uint64_t seed = 1;
  double sigma_eps = 1.0;
  double l_cm = 0.72;
  double l_over_lambda = 5.5;
  double delta_x_ratio = 0.5;
  double corr_len_mm = 0.0;
  double f0_khz = 16.0;
  double noise_snr = NAN;
  double noise_sigma = NAN;
  std::uint64_t noise_seed = 1;
  bool complex_out = false;
  std::string out;
  std::string prefix = "oae";
};

int run_synth_oae(const SynthOaeArgs& a, const std::vector<std::string>& args) {
  CochlearMap map;
  map.l_m = a.l_cm * 1e-2;
  map.lambda_m = map.l_m / a.l_over_lambda;
  map.delta_x_m = a.delta_x_ratio * map.lambda_m;
  map.omega0_rad_s = 2.0 * std::numbers::pi * a.f0_khz * 1e3;
  map.validate();
  const auto prof = a.corr_len_mm > 0.0 ? correlated_irregularity(a.sigma_eps, a.corr_len_mm * 1e-3, a.seed)
                                        : white_irregularity(a.sigma_eps, a.seed);
  const ImpulseConfig icfg;
  const auto R = reflectance_on_fft_grid(prof, map, icfg);
  const Signal r = impulse_response(R, icfg);
  Signal out = a.complex_out ? r : r.real_part();

  KeyValue kv = base_manifest("synth-oae", args);
  kv.set("seed", static_cast<unsigned long long>(a.seed));
  kv.set("sigma_eps", a.sigma_eps);
  kv.set("l_m", map.l_m);
  kv.set("lambda_m", map.lambda_m);
  kv.set("delta_x_m", map.delta_x_m);
  kv.set("omega0_rad_s", map.omega0_rad_s);
  kv.set("corr_len_m", prof.corr_len_m);
  kv.set("dx_m", prof.dx_m);
  kv.set("x_max_m", prof.x_m.back());
  kv.set("n_fft", icfg.n_fft);
  kv.set("sample_rate_hz", icfg.sample_rate_hz);
  kv.set("band_hz", format_double(icfg.f_lo_hz) + "," + format_double(icfg.f_hi_hz));
  if (!std::isnan(a.noise_snr) && !std::isnan(a.noise_sigma))
    throw CLI::ValidationError("noise", "give --noise-snr or --noise-sigma, not both");
  if (!std::isnan(a.noise_snr)) {
    auto [s, nr] = add_noise(out, a.noise_snr, a.noise_seed);
    out = s;
    kv.set("noise_seed", static_cast<unsigned long long>(nr.seed));
    kv.set("noise_sigma", nr.sigma);
    kv.set("noise_snr_db", nr.snr_db);
  } else if (!std::isnan(a.noise_sigma)) {
    auto [s, nr] = add_noise_sigma(out, a.noise_sigma, a.noise_seed);
    out = s;
    kv.set("noise_seed", static_cast<unsigned long long>(nr.seed));
    kv.set("noise_sigma", nr.sigma);
  }

  const fs::path dir = a.out.empty() ? default_out_dir() : fs::path(a.out);
  fs::create_directories(dir);
  KeyValue prov;
  prov.set("generator", std::string("synth-oae"));
  prov.set("seed", static_cast<unsigned long long>(a.seed));
  write_signal_csv(dir / (a.prefix + "_signal.csv"), out, prov);
  write_profile_csv(dir / (a.prefix + "_irregularity.csv"), prof);
  kv.write(dir / (a.prefix + "_manifest.txt"));
  std::cout << "synth-oae: wrote " << out.size() << " samples to " << (dir / (a.prefix + "_signal.csv")).string()
            << '\n';
  return 0;
}

struct SynthImtArgs {
  std::uint64_t seed = 1;
  double noise_snr = NAN;
  std::uint64_t noise_seed = 1;
  std::size_t hop = 4;
  std::size_t n_fft = 512;
  bool squared = false;
  std::string out;
  std::string prefix = "imt";
};

int run_synth_imt(const SynthImtArgs& a, const std::vector<std::string>& args) {
  const GroundTruth g = three_component_signal(a.seed);
  Signal out = g.signal;
  KeyValue kv = base_manifest("synth-imt", args);
  kv.set("seed", static_cast<unsigned long long>(a.seed));
  kv.set("attempts", g.attempts);
  kv.set("edge_ms", kImtEdgeMs);
  if (!std::isnan(a.noise_snr)) {
    auto [s, nr] = add_noise(out, a.noise_snr, a.noise_seed);
    out = s;
    kv.set("noise_seed", static_cast<unsigned long long>(nr.seed));
    kv.set("noise_snr_db", nr.snr_db);
    kv.set("noise_sigma", nr.sigma);
  }
  const fs::path dir = a.out.empty() ? default_out_dir() : fs::path(a.out);
  fs::create_directories(dir);
  KeyValue prov;
  prov.set("generator", std::string("synth-imt"));
  prov.set("seed", static_cast<unsigned long long>(a.seed));
  write_signal_csv(dir / (a.prefix + "_signal.csv"), out, prov);
  write_components_csv(dir / (a.prefix + "_components.csv"), g);
  StftConfig sc{a.hop, a.n_fft};
  const Lattice lat = make_lattice(g.signal, 1, sc);
  const RealGrid itfr = ideal_tfr(g, lat.times_s(), lat.freqs_hz(), a.squared);
  write_grid_csv(dir / (a.prefix + "_itfr.csv"), itfr);
  write_grid_pgm(dir / (a.prefix + "_itfr.pgm"), itfr);
  kv.set("hop_samples", a.hop);
  kv.set("n_fft", a.n_fft);
  kv.set("squared_itfr", a.squared);
  kv.write(dir / (a.prefix + "_manifest.txt"));
  std::cout << "synth-imt: wrote " << out.size() << " samples (" << g.attempts << " draw(s)) to " << dir.string()
            << '\n';
  return 0;
}

struct AnalyzeArgs {
  std::string input;
  std::string method;
  double sigma_ms = 5.0 / 12.0;
  std::size_t window_length = 0;
  std::size_t hop = 4;
  std::size_t n_fft = 0;
  int J = 2;
  int N = 30;
  std::uint64_t seed = 1;
  double gamma = 1e-4;
  std::string averaging;  // empty: complex for mt, modulus for conceft
  int voices = 32;
  double cwd_sigma = 1.0;
  bool linear = false;
  std::string out;
  std::string prefix;
};

int run_analyze(const AnalyzeArgs& a, const std::vector<std::string>& args) {
  const std::vector<std::string> known = {"stft", "scalogram", "wv", "spwv", "cwd", "sst1", "sst2", "mt", "conceft"};
  if (std::find(known.begin(), known.end(), a.method) == known.end())
    throw CLI::ValidationError("--method", "unknown method: " + a.method);
  const Signal s = read_signal_csv(a.input);
  const double fsr = s.sample_rate_hz();
  const double sigma = a.sigma_ms * 1e-3;
  const std::size_t L = a.window_length ? a.window_length : min_window_length(sigma, fsr);
  const std::size_t nfft = a.n_fft ? a.n_fft : default_n_fft(L);
  const StftConfig lat{a.hop, nfft};
  SstConfig sc;
  sc.gamma_rel = a.gamma;
  sc.assignment = a.linear ? Assignment::linear : Assignment::nearest;
  const std::string avg_name = !a.averaging.empty() ? a.averaging : a.method == "conceft" ? "modulus" : "complex";
  const Averaging avg = parse_averaging(avg_name);

  KeyValue kv = base_manifest("analyze", args);
  kv.set("input", a.input);
  kv.set("method", a.method);
  kv.set("window_sigma_s", sigma);
  kv.set("window_length", L);
  kv.set("hop_samples", a.hop);
  kv.set("n_fft", nfft);
  kv.set("gamma_rel", a.gamma);

  RealGrid g;
  if (a.method == "stft") {
    g = to_power(stft(s, gaussian_window(sigma, L, fsr), lat));
  } else if (a.method == "scalogram") {
    ScalogramConfig c;
    c.voices_per_octave = a.voices;
    const RealGrid sg = scalogram(s, c);
    const Lattice l = make_lattice(s, L, lat);
    g = rebin_frequency(sg, l.times_s(), l.freqs_hz());
    kv.set("scalogram_wavelet", std::string("morlet"));
    kv.set("scalogram_voices_per_octave", a.voices);
  } else if (a.method == "wv") {
    g = wigner_ville(s, a.hop, nfft);
  } else if (a.method == "spwv" || a.method == "cwd") {
    CohenConfig c = cohen_config_for(L, a.hop, nfft);
    c.cwd_sigma = a.cwd_sigma;
    g = a.method == "spwv" ? spwv(s, c) : cwd(s, c);
    kv.set("time_window_samples", c.time_window_samples);
    kv.set("freq_window_samples", c.freq_window_samples);
    kv.set("cwd_sigma", c.cwd_sigma);
  } else if (a.method == "sst1" || a.method == "sst2") {
    sc.order = a.method == "sst1" ? SstOrder::first : SstOrder::second;
    const SstResult r = sst(s, gaussian_window(sigma, L, fsr), sc, lat);
    g = to_power(r.grid);
    kv.set("dropped_fraction", r.dropped_fraction());
    kv.set("below_threshold_fraction", r.below_threshold_fraction());
  } else if (a.method == "mt") {
    g = real_of(multitaper_sst(s, hermite_windows(a.J, sigma, L, fsr), sc, lat, avg));
    kv.set("J", a.J);
    kv.set("averaging", avg_name);
  } else {
    ConceftConfig cc;
    cc.n_realizations = a.N;
    cc.master_seed = a.seed;
    cc.averaging = avg;
    cc.sst = sc;
    g = conceft::conceft(s, hermite_windows(a.J, sigma, L, fsr), cc, lat);
    kv.set("J", a.J);
    kv.set("N", a.N);
    kv.set("master_seed", static_cast<unsigned long long>(a.seed));
    kv.set("averaging", avg_name);
    kv.set("sphere_seed_rule", std::string("derive_seed(master_seed, sphere_stream, n)"));
  }

  const fs::path dir = a.out.empty() ? default_out_dir() : fs::path(a.out);
  fs::create_directories(dir);
  const std::string stem = (a.prefix.empty() ? fs::path(a.input).stem().string() : a.prefix) + "_" + a.method;
  const RealGrid e = clip_for_export(g);
  write_grid_csv(dir / (stem + ".csv"), e);
  write_grid_pgm(dir / (stem + ".pgm"), e);
  kv.write(dir / (stem + "_manifest.txt"));
  std::cout << "analyze: " << a.method << ' ' << g.n_times() << "x" << g.n_freqs() << " grid written to "
            << (dir / (stem + ".csv")).string() << '\n';
  return 0;
}

struct BenchArgs {
  std::string snr = "10,5,2,0";
  std::string methods = "scalogram,spwv,cwd,sst1,sst2,conceft";
  std::size_t n = 30;
  std::uint64_t seed = 1;
  std::uint64_t signal_seed = 1;
  int J = 2;
  int N = 30;
  std::size_t hop = 4;
  std::size_t n_fft = 512;
  std::string averaging = "modulus";
  bool squared = false;
  std::string out;
};

int run_benchmark_cmd(const BenchArgs& a, const std::vector<std::string>& args) {
  BenchmarkConfig cfg;
  cfg.snr_db = parse_list(a.snr);
  if (cfg.snr_db.empty()) throw CLI::ValidationError("--snr", "empty SNR list");
  cfg.methods.clear();
  std::stringstream ss(a.methods);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      cfg.methods.push_back(parse_method(item));
    } catch (const std::invalid_argument& e) {
      throw CLI::ValidationError("--methods", e.what());
    }
  }
  if (cfg.methods.empty()) throw CLI::ValidationError("--methods", "empty method list");
  if (a.n < 1) throw CLI::ValidationError("--n", "must be >= 1");
  cfg.n_realizations = a.n;
  cfg.master_seed = a.seed;
  cfg.signal_seed = a.signal_seed;
  cfg.squared_itfr = a.squared;
  cfg.setup.conceft_J = a.J;
  cfg.setup.conceft_N = a.N;
  cfg.setup.hop = a.hop;
  cfg.setup.n_fft = a.n_fft;
  cfg.setup.averaging = parse_averaging(a.averaging);

  BenchmarkReport rep = run_benchmark(cfg);
  KeyValue kv = base_manifest("benchmark", args);
  for (const auto& [k, v] : rep.manifest.entries())
    if (k != "command") kv.set(k, v);

  const fs::path dir = a.out.empty() ? default_out_dir() : fs::path(a.out);
  fs::create_directories(dir);
  write_table_csv(dir / "benchmark_table.csv", rep);
  write_long_csv(dir / "benchmark_scores.csv", rep);
  kv.write(dir / "benchmark_manifest.txt");
  std::cout << "benchmark: " << rep.snr_db.size() << " SNR x " << rep.methods.size() << " methods x "
            << rep.n_realizations << " realizations -> " << (dir / "benchmark_table.csv").string() << '\n';
  return 0;
}

int dispatch(int argc, char** argv);

int run_replay(const std::string& manifest, const std::string& out) {
  const KeyValue kv = KeyValue::read(manifest);
  const auto n = static_cast<std::size_t>(std::stoull(kv.get("argc")));
  std::vector<std::string> args;
  for (std::size_t i = 0; i < n; ++i) args.push_back(kv.get("arg." + std::to_string(i)));
  if (!out.empty()) {
    // Drop any recorded output directory and use the requested one.
    std::vector<std::string> kept;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--out") {
        ++i;
        continue;
      }
      if (args[i].rfind("--out=", 0) == 0) continue;
      kept.push_back(args[i]);
    }
    kept.push_back("--out");
    kept.push_back(out);
    args = std::move(kept);
  }
  std::vector<char*> av;
  std::string prog = "conceft";
  av.push_back(prog.data());
  for (auto& s : args) av.push_back(s.data());
  return dispatch(static_cast<int>(av.size()), av.data());
}

int dispatch(int argc, char** argv) {
  CLI::App app{"ConceFT time-frequency analysis, OAE synthesis and OTD benchmarking"};
  app.require_subcommand(1);
  std::vector<std::string> args(argv + 1, argv + argc);

  SynthOaeArgs so;
  auto* c_oae = app.add_subcommand("synth-oae", "Coherent-reflection impulse response");
  c_oae->add_option("--seed", so.seed, "irregularity seed");
  c_oae->add_option("--sigma-eps", so.sigma_eps, "irregularity standard deviation")->check(CLI::NonNegativeNumber);
  c_oae->add_option("--l-cm", so.l_cm, "tonotopic length scale l (cm)")->check(CLI::PositiveNumber);
  c_oae->add_option("--l-over-lambda", so.l_over_lambda, "l / Lambda")->check(CLI::PositiveNumber);
  c_oae->add_option("--delta-x-ratio", so.delta_x_ratio, "Delta x / Lambda")->check(CLI::PositiveNumber);
  c_oae->add_option("--corr-len-mm", so.corr_len_mm, "irregularity correlation length D (mm), 0 = white")
      ->check(CLI::NonNegativeNumber);
  c_oae->add_option("--f0-khz", so.f0_khz, "frequency mapped to x = 0 (kHz)")->check(CLI::PositiveNumber);
  c_oae->add_option("--noise-snr", so.noise_snr, "add white noise at this SNR (dB)");
  c_oae->add_option("--noise-sigma", so.noise_sigma, "add white noise of this standard deviation")
      ->check(CLI::NonNegativeNumber);
  c_oae->add_option("--noise-seed", so.noise_seed, "noise seed");
  c_oae->add_flag("--complex", so.complex_out, "write complex r(t) instead of Re{r(t)}");
  c_oae->add_option("--out", so.out, "output directory (default $CONCEFT_OUT_DIR or .)");
  c_oae->add_option("--prefix", so.prefix, "output file prefix");

  SynthImtArgs si;
  auto* c_imt = app.add_subcommand("synth-imt", "Three-component test signal with its ideal TFR");
  c_imt->add_option("--seed", si.seed, "signal seed");
  c_imt->add_option("--noise-snr", si.noise_snr, "add white noise at this SNR (dB)");
  c_imt->add_option("--noise-seed", si.noise_seed, "noise seed");
  c_imt->add_option("--hop", si.hop, "iTFR hop (samples)")->check(CLI::PositiveNumber);
  c_imt->add_option("--n-fft", si.n_fft, "iTFR frequency bins = n_fft/2 + 1")->check(CLI::PositiveNumber);
  c_imt->add_flag("--squared-itfr", si.squared, "deposit A^2 instead of A");
  c_imt->add_option("--out", si.out, "output directory");
  c_imt->add_option("--prefix", si.prefix, "output file prefix");

  AnalyzeArgs an;
  auto* c_an = app.add_subcommand("analyze", "Time-frequency analysis of a signal CSV");
  c_an->add_option("--input", an.input, "signal CSV (time_s,real,imag)")->required()->check(CLI::ExistingFile);
  c_an->add_option("--method", an.method, "stft|scalogram|wv|spwv|cwd|sst1|sst2|mt|conceft")->required();
  c_an->add_option("--sigma-ms", an.sigma_ms, "Gaussian / Hermite sigma (ms)")->check(CLI::PositiveNumber);
  c_an->add_option("--window-length", an.window_length, "window length in samples (odd; default covers +-4 sigma)");
  c_an->add_option("--hop", an.hop, "hop (samples)")->check(CLI::PositiveNumber);
  c_an->add_option("--n-fft", an.n_fft, "FFT size (default next pow2 >= 4 L)");
  c_an->add_option("--J", an.J, "number of Hermite windows")->check(CLI::Range(1, 6));
  c_an->add_option("--N", an.N, "ConceFT realizations")->check(CLI::PositiveNumber);
  c_an->add_option("--seed", an.seed, "ConceFT master seed");
  c_an->add_option("--gamma", an.gamma, "relative magnitude floor")->check(CLI::Range(0.0, 1.0));
  c_an->add_option("--averaging", an.averaging, "complex|modulus|power (default complex for mt, modulus for conceft)");
  c_an->add_option("--voices", an.voices, "scalogram voices per octave")->check(CLI::PositiveNumber);
  c_an->add_option("--cwd-sigma", an.cwd_sigma, "Choi-Williams kernel parameter")->check(CLI::PositiveNumber);
  c_an->add_flag("--linear-assignment", an.linear, "split squeezed mass between two bins");
  c_an->add_option("--out", an.out, "output directory");
  c_an->add_option("--prefix", an.prefix, "output file stem (default: input stem)");

  BenchArgs be;
  auto* c_be = app.add_subcommand("benchmark", "OTD benchmark on the three-component signal");
  c_be->add_option("--snr", be.snr, "comma-separated SNR list (dB)");
  c_be->add_option("--methods", be.methods, "comma-separated methods");
  c_be->add_option("--n", be.n, "noise realizations per SNR");
  c_be->add_option("--seed", be.seed, "master seed");
  c_be->add_option("--signal-seed", be.signal_seed, "three-component signal seed");
  c_be->add_option("--J", be.J, "ConceFT windows")->check(CLI::Range(1, 6));
  c_be->add_option("--N", be.N, "ConceFT realizations")->check(CLI::PositiveNumber);
  c_be->add_option("--hop", be.hop, "lattice hop")->check(CLI::PositiveNumber);
  c_be->add_option("--n-fft", be.n_fft, "lattice FFT size")->check(CLI::PositiveNumber);
  c_be->add_option("--averaging", be.averaging, "ConceFT averaging: complex|modulus|power (default modulus)");
  c_be->add_flag("--squared-itfr", be.squared, "deposit A^2 in the ideal TFR");
  c_be->add_option("--out", be.out, "output directory");

  std::string replay_manifest, replay_out;
  auto* c_re = app.add_subcommand("replay", "Re-run a command from its manifest");
  c_re->add_option("manifest", replay_manifest, "manifest file")->required()->check(CLI::ExistingFile);
  c_re->add_option("--out", replay_out, "override the output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 2;
  }
  try {
    if (*c_oae) return run_synth_oae(so, args);
    if (*c_imt) return run_synth_imt(si, args);
    if (*c_an) return run_analyze(an, args);
    if (*c_be) return run_benchmark_cmd(be, args);
    if (*c_re) return run_replay(replay_manifest, replay_out);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
