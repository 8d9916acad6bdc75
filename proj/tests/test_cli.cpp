// Copyright 2026 The nboson-contextuality Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

struct Result {
  int code = -1;
  std::string out;
};

Result nbc(const std::string& args, bool merge_stderr = false) {
  const std::string cmd = std::string(NBC_CLI_PATH) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path write_temp(const std::string& name, const std::string& text) {
  const fs::path dir = fs::temp_directory_path() / "nbc_cli_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << text;
  return p;
}

const char* const kCanonical =
    "photons N=4\nprepare all path=1 pol=H\nqbs pol=H\nhwp path=2\nmeasure chsh\n"
    "shots 100000\nseed 42\n";

std::map<std::string, std::pair<double, std::string>> read_quantity_csv(const std::string& csv) {
  std::map<std::string, std::pair<double, std::string>> out;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "quantity,value,stderr");
  while (std::getline(in, line)) {
    const auto a = line.find(',');
    const auto b = line.find(',', a + 1);
    out[line.substr(0, a)] = {std::stod(line.substr(a + 1, b - a - 1)), line.substr(b + 1)};
  }
  return out;
}

TEST(Cli, ChshExactValues) {
  auto r = nbc("chsh --n 4 --collective --exact --out json");
  ASSERT_EQ(r.code, 0);
  auto j = json::parse(r.out);
  EXPECT_NEAR(j["E"].get<double>(), 2 * std::numbers::sqrt2, 1e-12);
  EXPECT_TRUE(j["violated"].get<bool>());
  for (const char* key : {"manifest", "correlators", "E", "violated"}) EXPECT_TRUE(j.contains(key));
  EXPECT_FALSE(j.contains("stderr"));
  const auto& m = j["manifest"];
  for (const char* key :
       {"command", "parameters", "seed", "engine_version", "rng", "basis_sizes", "wall_time_s"}) {
    EXPECT_TRUE(m.contains(key)) << key;
  }
  EXPECT_EQ(m["basis_sizes"][0]["size"].get<int>(), 35);

  r = nbc("chsh --n 4 --single-rescaled --out json");
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(json::parse(r.out)["E"].get<double>(), std::numbers::sqrt2, 1e-12);
  EXPECT_FALSE(json::parse(r.out)["violated"].get<bool>());

  r = nbc("chsh --n 1 --single --out json");
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(json::parse(r.out)["E"].get<double>(), 2 * std::numbers::sqrt2, 1e-12);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(nbc("chsh").code, 2);
  EXPECT_EQ(nbc("chsh --n 0").code, 2);
  EXPECT_EQ(nbc("chsh --n 2 --single").code, 2);
  EXPECT_EQ(nbc("chsh --n 2 --exact --shots 10").code, 2);
  EXPECT_EQ(nbc("chsh --n 2 --collective --single").code, 2);
  EXPECT_EQ(nbc("chsh --n 2 --out xml").code, 2);
  EXPECT_EQ(nbc("frobnicate").code, 2);
  EXPECT_EQ(nbc("sweep --n-min 3 --n-max 2").code, 2);
  EXPECT_EQ(nbc("run /nonexistent/experiment.nbc").code, 2);
  EXPECT_EQ(nbc("--help").code, 0);
}

TEST(Cli, ParseErrorsExitThree) {
  const auto bad = write_temp("bad.nbc", "photons N=4\nprepare all path=3 pol=H\nqbs pol=H\n");
  auto r = nbc("run " + bad.string(), true);
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find("2:18: error: path must be 1 or 2"), std::string::npos) << r.out;
  EXPECT_EQ(nbc("dsl validate " + bad.string()).code, 3);
  const auto good = write_temp("good.nbc", kCanonical);
  EXPECT_EQ(nbc("dsl validate " + good.string()).code, 0);
  r = nbc("dsl format " + good.string());
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, kCanonical);
}

TEST(Cli, SampledJsonIsReproducible) {
  auto strip = [](std::string text) {
    auto j = json::parse(text);
    j["manifest"].erase("wall_time_s");
    return j;
  };
  const auto a = nbc("chsh --n 3 --shots 20000 --seed 5 --out json");
  const auto b = nbc("chsh --n 3 --shots 20000 --seed 5 --out json");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(strip(a.out), strip(b.out));
  const auto j = json::parse(a.out);
  EXPECT_TRUE(j.contains("stderr"));
  EXPECT_EQ(j["manifest"]["seed"].get<std::uint64_t>(), 5u);
  const auto c = nbc("chsh --n 3 --shots 20000 --seed 6 --out json");
  EXPECT_NE(strip(a.out)["E"], strip(c.out)["E"]);
}

TEST(Cli, ChshCsvMatchesJson) {
  const auto j = json::parse(nbc("chsh --n 3 --shots 1000 --seed 1 --out json").out);
  const auto csv = read_quantity_csv(nbc("chsh --n 3 --shots 1000 --seed 1 --out csv").out);
  for (const char* key : {"AB", "AB'", "A'B", "A'B'"}) {
    EXPECT_EQ(csv.at(key).first, j["correlators"][key].get<double>()) << key;
    EXPECT_EQ(std::stod(csv.at(key).second), j["stderr"][key].get<double>()) << key;
  }
  EXPECT_EQ(csv.at("E").first, j["E"].get<double>());
  EXPECT_EQ(std::stod(csv.at("E").second), j["stderr"]["E"].get<double>());
}

TEST(Cli, SweepCsvMatchesJsonAndIsConstant) {
  const auto j = json::parse(nbc("sweep --n-min 1 --n-max 8 --collective --out json").out);
  const auto csv = nbc("sweep --n-min 1 --n-max 8 --collective --out csv").out;
  ASSERT_EQ(j["rows"].size(), 8u);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "N,AB,AB',A'B,A'B',E,violated");
  int i = 0;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    ASSERT_EQ(cells.size(), 7u);
    const auto& row = j["rows"][i];
    EXPECT_EQ(std::stoi(cells[0]), row["N"].get<int>());
    EXPECT_EQ(std::stod(cells[1]), row["correlators"]["AB"].get<double>());
    EXPECT_EQ(std::stod(cells[5]), row["E"].get<double>());
    EXPECT_NEAR(row["E"].get<double>(), 2 * std::numbers::sqrt2, 1e-12);
    ++i;
  }
  EXPECT_EQ(i, 8);

  const auto one = json::parse(nbc("sweep --n-min 5 --n-max 5 --single-rescaled --out json").out);
  ASSERT_EQ(one["rows"].size(), 1u);
  EXPECT_NEAR(one["rows"][0]["E"].get<double>(), std::numbers::sqrt2, 1e-12);
}

TEST(Cli, RunCanonicalDocument) {
  const auto file = write_temp("canonical.nbc", kCanonical);
  const auto r = nbc("run " + file.string() + " --out json");
  ASSERT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  for (const char* key : {"manifest", "correlators", "E", "violated", "stderr", "histograms"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  const double e = j["E"].get<double>();
  const double se = j["stderr"]["E"].get<double>();
  EXPECT_LT(std::abs(e - 2 * std::numbers::sqrt2), 5 * se);
  EXPECT_EQ(j["histograms"].size(), 4u);
  std::uint64_t total = 0;
  for (const auto& o : j["histograms"]["Jz x Sz(pi/4)"]["outcomes"]) {
    total += o["count"].get<std::uint64_t>();
  }
  EXPECT_EQ(total, 100000u);
  EXPECT_EQ(j["manifest"]["seed"].get<int>(), 42);

  const auto csv = read_quantity_csv(nbc("run " + file.string() + " --out csv").out);
  EXPECT_EQ(csv.at("E").first, e);
  EXPECT_EQ(csv.at("Jx x Sz(-pi/4)").first, j["correlators"]["Jx x Sz(-pi/4)"].get<double>());

  const auto exact = json::parse(nbc("run " + file.string() + " --exact --out json").out);
  EXPECT_NEAR(exact["E"].get<double>(), 2 * std::numbers::sqrt2, 1e-12);
  EXPECT_FALSE(exact.contains("stderr"));
}

TEST(Cli, CheckSuite) {
  auto r = nbc("check --out json");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(json::parse(r.out)["passed"].get<bool>());

  r = nbc("check --n-max 2 --inject-jy-flip --out json");
  EXPECT_EQ(r.code, 4);
  bool su2_failed = false;
  const json flipped = json::parse(r.out);
  for (const auto& c : flipped["checks"]) {
    if (!c["passed"].get<bool>()) {
      EXPECT_EQ(c["group"], "spin-observables");
      su2_failed = su2_failed || c["check"].get<std::string>().find("SU(2) collective J") == 0;
    }
  }
  EXPECT_TRUE(su2_failed);

  r = nbc("check --n-max 3 --tol 0 --out json");
  EXPECT_EQ(r.code, 4);
  bool boundary_failed = false;
  const json strict = json::parse(r.out);
  for (const auto& c : strict["checks"]) {
    if (c["exact"].get<bool>()) {
      EXPECT_TRUE(c["passed"].get<bool>());
    }
    boundary_failed = boundary_failed || !c["passed"].get<bool>();
  }
  EXPECT_TRUE(boundary_failed);
}

}  // namespace
