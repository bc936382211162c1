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

#include <cstdint>
#include <random>

namespace conceft {

// Seeded Gaussian source used everywhere randomness enters a computation.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. The normal transform is done here (Marsaglia polar method) instead
// of std::normal_distribution, which is implementation-defined, so a given
// seed produces the same variates with any standard library.
class Rng {
 public:
  // Bumped whenever the variate sequence for a given seed changes.
  static constexpr int kVersion = 1;
  static constexpr const char* kName = "mt19937_64+polar";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Standard normal variate.
  double normal();

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Stable per-realization seed: depends only on (master, stream, index), never
// on execution order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index);

}  // namespace conceft
