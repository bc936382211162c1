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

#include "conceft/io.hpp"

#include "conceft/windows.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace conceft {

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void KeyValue::set(const std::string& key, const std::string& value) {
  if (key.find('=') != std::string::npos || key.find('\n') != std::string::npos)
    throw std::invalid_argument("manifest key contains '=' or newline: " + key);
  for (auto& e : entries_) {
    if (e.first == key) {
      e.second = value;
      return;
    }
  }
  entries_.emplace_back(key, value);
}

void KeyValue::set(const std::string& key, double value) { set(key, format_double(value)); }
void KeyValue::set(const std::string& key, long long value) { set(key, std::to_string(value)); }
void KeyValue::set(const std::string& key, unsigned long long value) { set(key, std::to_string(value)); }

bool KeyValue::contains(const std::string& key) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const auto& e) { return e.first == key; });
}

const std::string& KeyValue::get(const std::string& key) const {
  for (const auto& e : entries_)
    if (e.first == key) return e.second;
  throw std::out_of_range("missing key: " + key);
}

double KeyValue::get_double(const std::string& key) const {
  const std::string& s = get(key);
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  return std::stod(s);
}

void KeyValue::write(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (const auto& [k, v] : entries_) out << k << '=' << v << '\n';
}

KeyValue KeyValue::read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  KeyValue kv;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::runtime_error("malformed key-value line: " + line);
    kv.entries_.emplace_back(line.substr(0, eq), line.substr(eq + 1));
  }
  return kv;
}

void write_signal_csv(const std::filesystem::path& path, const Signal& s, const KeyValue& provenance) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "time_s,real,imag\n";
  for (std::size_t n = 0; n < s.size(); ++n) {
    const cplx v = s.samples()[n];
    out << format_double(s.time_at(n)) << ',' << format_double(v.real()) << ','
        << format_double(v.imag()) << '\n';
  }
  KeyValue meta;
  meta.set("sample_rate_hz", s.sample_rate_hz());
  meta.set("t0_s", s.t0_s());
  meta.set("n_samples", s.size());
  meta.set("is_real", s.is_real());
  for (const auto& [k, v] : provenance.entries()) meta.set(k, v);
  meta.write(path.string() + ".meta");
}

Signal read_signal_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty signal file " + path.string());
  if (line.rfind("time_s,real", 0) != 0) throw std::runtime_error("unexpected signal header in " + path.string());
  std::vector<double> times;
  std::vector<cplx> z;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string a, b, c;
    std::getline(ss, a, ',');
    std::getline(ss, b, ',');
    std::getline(ss, c, ',');
    times.push_back(std::stod(a));
    z.emplace_back(std::stod(b), c.empty() ? 0.0 : std::stod(c));
  }
  if (z.empty()) throw std::runtime_error("no samples in " + path.string());

  const std::filesystem::path meta_path = path.string() + ".meta";
  double fs = 0.0;
  double t0 = times.front();
  bool is_real = std::all_of(z.begin(), z.end(), [](const cplx& v) { return v.imag() == 0.0; });
  if (std::filesystem::exists(meta_path)) {
    const KeyValue meta = KeyValue::read(meta_path);
    fs = meta.get_double("sample_rate_hz");
    if (meta.contains("t0_s")) t0 = meta.get_double("t0_s");
    if (meta.contains("is_real")) is_real = meta.get("is_real") == "true";
  } else {
    if (times.size() < 2) throw std::runtime_error("cannot infer sample rate from " + path.string());
    fs = static_cast<double>(times.size() - 1) / (times.back() - times.front());
  }
  return Signal(std::move(z), fs, t0, is_real);
}

void write_grid_csv(const std::filesystem::path& path, const RealGrid& grid) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "time_s,freq_hz,value\n";
  for (std::size_t t = 0; t < grid.n_times(); ++t)
    for (std::size_t f = 0; f < grid.n_freqs(); ++f)
      out << format_double(grid.times_s[t]) << ',' << format_double(grid.freqs_hz[f]) << ','
          << format_double(grid.at(t, f)) << '\n';
}

void write_grid_pgm(const std::filesystem::path& path, const RealGrid& grid, double floor_db) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  const std::size_t w = grid.n_times();
  const std::size_t h = grid.n_freqs();
  double vmax = 0.0;
  for (double v : grid.values) vmax = std::max(vmax, v);
  out << "P5\n" << w << ' ' << h << "\n255\n";
  std::vector<unsigned char> px(w * h, 0);
  if (vmax > 0.0) {
    for (std::size_t r = 0; r < h; ++r) {
      const std::size_t f = h - 1 - r;
      for (std::size_t t = 0; t < w; ++t) {
        const double v = grid.at(t, f);
        if (!(v > 0.0)) continue;
        const double db = std::max(floor_db, 10.0 * std::log10(v / vmax));
        px[r * w + t] = static_cast<unsigned char>(std::lround(255.0 * (db - floor_db) / -floor_db));
      }
    }
  }
  out.write(reinterpret_cast<const char*>(px.data()), static_cast<std::streamsize>(px.size()));
}

void write_windows_csv(const std::filesystem::path& path, const WindowFamily& family) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "t_s";
  for (std::size_t j = 0; j < family.size(); ++j) out << ",h_" << (j + 1);
  out << '\n';
  const auto axis = family.axis_s();
  for (std::size_t n = 0; n < family.length; ++n) {
    out << format_double(axis[n]);
    for (std::size_t j = 0; j < family.size(); ++j) out << ',' << format_double(family.tapers[j].h[n].real());
    out << '\n';
  }
}

}  // namespace conceft
