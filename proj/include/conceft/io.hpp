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

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace conceft {

struct WindowFamily;

// Ordered key-value text (one "key=value" per line). Used for signal sidecars,
// run manifests and experiment reports.
class KeyValue {
 public:
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value);
  void set(const std::string& key, long long value);
  void set(const std::string& key, unsigned long long value);
  void set(const std::string& key, int value) { set(key, static_cast<long long>(value)); }
  void set(const std::string& key, std::size_t value) { set(key, static_cast<unsigned long long>(value)); }
  void set(const std::string& key, bool value) { set(key, std::string(value ? "true" : "false")); }

  bool contains(const std::string& key) const;
  const std::string& get(const std::string& key) const;
  double get_double(const std::string& key) const;

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

  void write(const std::filesystem::path& path) const;
  static KeyValue read(const std::filesystem::path& path);

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

// Shortest round-trip decimal representation.
std::string format_double(double v);

// Signal CSV: header "time_s,real,imag"; sidecar "<path>.meta" carries
// sample_rate_hz, t0_s, is_real plus any provenance keys given.
void write_signal_csv(const std::filesystem::path& path, const Signal& s, const KeyValue& provenance = {});
Signal read_signal_csv(const std::filesystem::path& path);

// Long-form grid CSV: header "time_s,freq_hz,value".
void write_grid_csv(const std::filesystem::path& path, const RealGrid& grid);

// 8-bit binary PGM heatmap: one column per time frame, rows ordered by
// descending frequency, 10 log10(v / max) clipped at floor_db and mapped to
// 0..255. Nonpositive values map to 0. An all-zero grid yields an all-zero image.
void write_grid_pgm(const std::filesystem::path& path, const RealGrid& grid, double floor_db = -80.0);

// One row per sample: "t_s,h_1,...,h_J" (real parts of the analysis windows).
void write_windows_csv(const std::filesystem::path& path, const WindowFamily& family);

}  // namespace conceft
