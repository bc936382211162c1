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

#include "conceft/scalogram.hpp"
#include "conceft/stft.hpp"

#include <catch_amalgamated.hpp>

#include "support.hpp"

#include <omp.h>

#include <cmath>

using namespace conceft;
using namespace testsupport;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("scalogram axis is log-spaced from f_min to at most fs / 2") {
  const RealGrid g = scalogram(tone(1000.0, 512), ScalogramConfig{});
  CHECK(g.freqs_hz.front() == 125.0);
  CHECK(g.freqs_hz.back() <= kFs / 2.0);
  CHECK(g.freqs_hz.size() == 225);  // 7 octaves at 32 voices, plus the first
  CHECK_THAT(g.freqs_hz[32] / g.freqs_hz[0], WithinRel(2.0, 1e-12));
  CHECK(g.n_times() == 512);
  CHECK(g.kind == GridKind::power);
}

TEST_CASE("a tone peaks at its own voice with its squared amplitude") {
  for (double f0 : {125.0 * std::exp2(70.0 / 32.0), 4000.0}) {
    const RealGrid g = scalogram(tone(f0, 2048), ScalogramConfig{});
    std::size_t nearest = 0;
    for (std::size_t k = 0; k < g.n_freqs(); ++k)
      if (std::abs(std::log(g.freqs_hz[k] / f0)) < std::abs(std::log(g.freqs_hz[nearest] / f0))) nearest = k;
    for (std::size_t t = 400; t < 1600; t += 50) {
      CHECK(ridge_hz(g, t) == g.freqs_hz[nearest]);
      if (g.freqs_hz[nearest] == f0) CHECK_THAT(g.at(t, nearest), WithinAbs(1.0, 1e-3));
    }
  }
}

TEST_CASE("high-frequency wavelets are wider in Hz") {
  const auto half_power_width = [](double f0) {
    const RealGrid g = scalogram(tone(f0, 2048), ScalogramConfig{});
    const auto e = axis_edges(g.freqs_hz);
    double peak = 0.0, width = 0.0;
    for (std::size_t k = 0; k < g.n_freqs(); ++k) peak = std::max(peak, g.at(1024, k));
    for (std::size_t k = 0; k < g.n_freqs(); ++k)
      if (g.at(1024, k) >= 0.5 * peak) width += e[k + 1] - e[k];
    return width;
  };
  CHECK(half_power_width(4000.0) > half_power_width(1000.0));
}

TEST_CASE("scalogram is thread-count independent") {
  const Signal s = tone(3333.0, 600);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const RealGrid a = scalogram(s, ScalogramConfig{});
  omp_set_num_threads(4);
  const RealGrid b = scalogram(s, ScalogramConfig{});
  omp_set_num_threads(saved);
  CHECK(a.values == b.values);
}

TEST_CASE("scalogram configuration errors") {
  ScalogramConfig c;
  c.f_min_hz = 0.0;
  CHECK_THROWS(scalogram(tone(1000.0, 256), c));
  c = ScalogramConfig{};
  c.f_max_hz = kFs;
  CHECK_THROWS(scalogram(tone(1000.0, 256), c));
  c = ScalogramConfig{};
  c.voices_per_octave = 0;
  CHECK_THROWS(scalogram(tone(1000.0, 256), c));
}

TEST_CASE("axis edges use midpoints and mirrored ends") {
  const auto e = axis_edges({1.0, 2.0, 4.0});
  REQUIRE(e.size() == 4);
  CHECK(e[0] == 0.5);
  CHECK(e[1] == 1.5);
  CHECK(e[2] == 3.0);
  CHECK(e[3] == 5.0);
}

TEST_CASE("rebinning conserves mass inside the destination range") {
  const RealGrid g = scalogram(tone(2000.0, 1024), ScalogramConfig{});
  const Lattice l = make_lattice(tone(2000.0, 1024), 109, {4, 512});
  const RealGrid r = rebin_frequency(g, l.times_s(), l.freqs_hz());
  CHECK(r.same_axes(RealGrid(l.times_s(), l.freqs_hz(), GridKind::power)));
  const auto se = axis_edges(g.freqs_hz);
  const auto de = axis_edges(r.freqs_hz);
  for (std::size_t t = 20; t < 230; t += 10) {
    const auto src_row = static_cast<std::size_t>(std::lround(r.times_s[t] * kFs));
    double src = 0.0, dst = 0.0;
    for (std::size_t k = 0; k < g.n_freqs(); ++k) {
      const double lo = std::max(se[k], de.front()), hi = std::min(se[k + 1], de.back());
      if (hi > lo) src += g.at(src_row, k) * (hi - lo);
    }
    for (std::size_t k = 0; k < r.n_freqs(); ++k) dst += r.at(t, k) * (de[k + 1] - de[k]);
    CHECK_THAT(dst, WithinRel(src, 1e-12));
  }
}
