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
#include "conceft/rng.hpp"
#include "conceft/signal.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

using namespace conceft;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("conceft_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("engine output is the standard mt19937_64 sequence") {
  // The 10000th output of a default-seeded mt19937_64 is fixed by the standard.
  Rng r(5489u);
  std::uint64_t v = 0;
  for (int i = 0; i < 10000; ++i) v = r.raw();
  CHECK(v == 9981545732273789042ULL);
}

TEST_CASE("normal variates have unit moments and are reproducible") {
  Rng a(42), b(42);
  double s = 0.0, s2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = a.normal();
    REQUIRE(x == b.normal());
    s += x;
    s2 += x * x;
  }
  CHECK(std::abs(s / n) < 0.01);
  CHECK_THAT(s2 / n, WithinAbs(1.0, 0.01));
}

TEST_CASE("derived seeds depend only on master, stream and index") {
  CHECK(derive_seed(1, 2, 3) == derive_seed(1, 2, 3));
  CHECK(derive_seed(1, 2, 3) != derive_seed(1, 2, 4));
  CHECK(derive_seed(1, 2, 3) != derive_seed(1, 3, 3));
  CHECK(derive_seed(1, 2, 3) != derive_seed(2, 2, 3));
}

TEST_CASE("add_noise hits the requested SNR exactly") {
  std::vector<double> x(4000);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sin(0.01 * static_cast<double>(i));
  const Signal s = Signal::from_real(x, 32000.0);
  for (double snr : {100.0, 10.0, 0.0, -5.0}) {
    const auto [noisy, rec] = add_noise(s, snr, 9);
    CHECK_THAT(measure_snr(s, noisy), WithinAbs(snr, 1e-9));
    CHECK(rec.seed == 9);
    CHECK(noisy.is_real());
    for (auto v : noisy.samples()) CHECK(v.imag() == 0.0);
  }
  const auto [clean, rec] = add_noise(s, kCleanSnr, 9);
  CHECK(rec.sigma == 0.0);
  CHECK(std::isinf(measure_snr(s, clean)));
}

TEST_CASE("add_noise rejects a zero-power signal") {
  const Signal z = Signal::from_real(std::vector<double>(16, 0.0), 1000.0);
  CHECK_THROWS_WITH(add_noise(z, 10.0, 1), Catch::Matchers::ContainsSubstring("degenerate signal"));
}

TEST_CASE("noise with the same seed is identical, different seeds differ") {
  const Signal s = Signal::from_real(std::vector<double>(256, 1.0), 1000.0);
  const auto a = add_noise(s, 3.0, 1).first, b = add_noise(s, 3.0, 1).first, c = add_noise(s, 3.0, 2).first;
  CHECK(std::equal(a.samples().begin(), a.samples().end(), b.samples().begin()));
  CHECK_FALSE(std::equal(a.samples().begin(), a.samples().end(), c.samples().begin()));
}

TEST_CASE("key-value files round-trip in order") {
  const auto dir = scratch_dir("kv");
  KeyValue kv;
  kv.set("b", 1.25);
  kv.set("a", std::string("text"));
  kv.set("n", 42);
  kv.set("flag", true);
  kv.set("b", 2.5);  // overwrite keeps the first position
  kv.write(dir / "m.txt");
  const KeyValue r = KeyValue::read(dir / "m.txt");
  REQUIRE(r.entries().size() == 4);
  CHECK(r.entries()[0].first == "b");
  CHECK(r.get_double("b") == 2.5);
  CHECK(r.get("a") == "text");
  CHECK(r.get("flag") == "true");
  CHECK_FALSE(r.contains("missing"));
}

TEST_CASE("format_double round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, -2.5}) CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("signal CSV round-trips exactly with its sidecar") {
  const auto dir = scratch_dir("sig");
  std::vector<cplx> z = {{1.0, 0.5}, {-0.25, 1e-17}, {3.0, -2.0}};
  const Signal s(z, 48000.0, 0.125, false);
  KeyValue prov;
  prov.set("seed", 7);
  write_signal_csv(dir / "s.csv", s, prov);
  const Signal r = read_signal_csv(dir / "s.csv");
  CHECK(r.sample_rate_hz() == 48000.0);
  CHECK(r.t0_s() == 0.125);
  CHECK_FALSE(r.is_real());
  REQUIRE(r.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(r.samples()[i] == z[i]);
  CHECK(KeyValue::read(dir / "s.csv.meta").get("seed") == "7");
}

TEST_CASE("PGM export handles zero grids and writes the expected header") {
  const auto dir = scratch_dir("pgm");
  RealGrid g({0.0, 1.0, 2.0}, {0.0, 10.0}, GridKind::power);
  write_grid_pgm(dir / "z.pgm", g);
  std::ifstream in(dir / "z.pgm", std::ios::binary);
  std::string magic;
  int w = 0, h = 0, mx = 0;
  in >> magic >> w >> h >> mx;
  CHECK(magic == "P5");
  CHECK(w == 3);
  CHECK(h == 2);
  CHECK(mx == 255);
  in.get();
  std::string px((std::istreambuf_iterator<char>(in)), {});
  CHECK(px == std::string(6, '\0'));
}
