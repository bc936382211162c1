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

#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using conceft::KeyValue;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(CONCEFT_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("conceft_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("synth-oae writes the signal, profile and manifest") {
  const fs::path d = fresh_dir("oae");
  REQUIRE(run("synth-oae --seed 3 --out " + d.string()) == 0);
  CHECK(fs::exists(d / "oae_signal.csv"));
  CHECK(fs::exists(d / "oae_signal.csv.meta"));
  CHECK(fs::exists(d / "oae_irregularity.csv"));
  const KeyValue m = KeyValue::read(d / "oae_manifest.txt");
  CHECK(m.get("seed") == "3");
  CHECK(m.get("sample_rate_hz") == "32000");
}

TEST_CASE("synth-imt and analyze produce grids for every method") {
  const fs::path d = fresh_dir("imt");
  REQUIRE(run("synth-imt --seed 2 --noise-snr 5 --out " + d.string()) == 0);
  CHECK(fs::exists(d / "imt_components.csv"));
  CHECK(fs::exists(d / "imt_itfr.pgm"));
  const std::string in = (d / "imt_signal.csv").string();
  for (const char* m : {"stft", "scalogram", "wv", "spwv", "cwd", "sst1", "sst2", "mt", "conceft"}) {
    INFO(m);
    REQUIRE(run(std::string("analyze --input ") + in + " --method " + m + " --N 3 --out " + d.string()) == 0);
    const fs::path csv = d / (std::string("imt_signal_") + m + ".csv");
    CHECK(fs::exists(csv));
    CHECK(slurp(csv).rfind("time_s,freq_hz,value\n", 0) == 0);
    CHECK(fs::exists(d / (std::string("imt_signal_") + m + ".pgm")));
  }
  const KeyValue cm = KeyValue::read(d / "imt_signal_conceft_manifest.txt");
  CHECK(cm.get("averaging") == "modulus");
  CHECK(KeyValue::read(d / "imt_signal_mt_manifest.txt").get("averaging") == "complex");
}

TEST_CASE("replay reproduces an analysis bit for bit") {
  const fs::path d = fresh_dir("replay");
  REQUIRE(run("synth-imt --seed 5 --out " + d.string()) == 0);
  const std::string in = (d / "imt_signal.csv").string();
  REQUIRE(run("analyze --input " + in + " --method conceft --N 4 --seed 9 --out " + d.string()) == 0);
  const fs::path again = d / "again";
  REQUIRE(run("replay " + (d / "imt_signal_conceft_manifest.txt").string() + " --out " + again.string()) == 0);
  CHECK(slurp(d / "imt_signal_conceft.csv") == slurp(again / "imt_signal_conceft.csv"));
}

TEST_CASE("benchmark writes table, scores and manifest") {
  const fs::path d = fresh_dir("bench");
  REQUIRE(run("benchmark --snr 10 --methods sst1,conceft --n 2 --N 3 --out " + d.string()) == 0);
  const std::string table = slurp(d / "benchmark_table.csv");
  CHECK(table.rfind("snr_db,sst1,conceft\n10,", 0) == 0);
  CHECK(fs::exists(d / "benchmark_scores.csv"));
  const KeyValue m = KeyValue::read(d / "benchmark_manifest.txt");
  CHECK(m.get("n_realizations") == "2");
  CHECK(m.contains("noise_seeds"));
}

TEST_CASE("usage errors exit with status 2") {
  const fs::path d = fresh_dir("errors");
  CHECK(run("") == 2);
  CHECK(run("no-such-command") == 2);
  CHECK(run("benchmark --methods stft --out " + d.string()) == 2);
  CHECK(run("benchmark --snr abc --out " + d.string()) == 2);
  CHECK(run("analyze --input /no/such/file.csv --method sst1") == 2);
  REQUIRE(run("synth-imt --out " + d.string()) == 0);
  CHECK(run("analyze --input " + (d / "imt_signal.csv").string() + " --method bogus --out " + d.string()) == 2);
  CHECK(run("analyze --input " + (d / "imt_signal.csv").string() + " --method conceft --averaging x --out " +
            d.string()) == 2);
  CHECK(run("synth-oae --noise-snr 5 --noise-sigma 1 --out " + d.string()) == 2);
}

TEST_CASE("runtime failures exit with status 1") {
  const fs::path d = fresh_dir("runtime");
  // Window (sigma 20 ms covers 5121 samples) longer than the 1024-sample record.
  REQUIRE(run("synth-imt --out " + d.string()) == 0);
  CHECK(run("analyze --input " + (d / "imt_signal.csv").string() + " --method sst2 --sigma-ms 20 --out " +
            d.string()) == 1);
}
