// Copyright 2026 The Authors.
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


#include <doctest.h>

#include <unistd.h>

#include <atomic>
#include <fstream>
#include <sstream>

#include "critique/catalog.hpp"
#include "critique/cli.hpp"
#include "support.hpp"

using namespace critique;
using critique::testing::data_dir;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    static std::atomic<int> counter{0};
    path = fs::temp_directory_path() /
           ("critique-cli-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

const std::string kHousing = (data_dir() / "housing.json").string();
const std::string kCheaper = (data_dir() / "cheaper.json").string();

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  auto bad = run({"suggest", "--catalog", kHousing});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("--model") != std::string::npos);
  CHECK(run({"suggest", "--catalog", kHousing, "--model", kCheaper, "--set", "many"}).code == 2);
  auto help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("simulate") != std::string::npos);
}

TEST_CASE("runtime errors exit with 1") {
  auto missing = run({"suggest", "--catalog", "/nonexistent.json", "--model", kCheaper});
  CHECK(missing.code == 1);
  CHECK(missing.err.rfind("error:", 0) == 0);
  CHECK(run({"suggest", "--catalog", kHousing, "--model", kCheaper, "--strategy", "oracle"}).code == 1);
  CHECK(run({"simulate", "--catalog-spec", "rand-10x3int", "--m", "9", "--runs", "1"}).code == 1);
}

TEST_CASE("suggest names o4 first") {
  auto r = run({"suggest", "--catalog", kHousing, "--model", kCheaper, "--strategy", "prob", "--set", "1"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "o4\n");
  r = run({"suggest", "--catalog", (data_dir() / "housing.csv").string(), "--model", kCheaper,
           "--set", "2"});
  CHECK(r.out == "o4\no3\n");
}

TEST_CASE("suggest writes the score table") {
  auto r = run({"suggest", "--catalog", (data_dir() / "housing_pinned.json").string(), "--model",
                kCheaper, "--out", "-"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header, o1, o2;
  std::getline(lines, header);
  std::getline(lines, o1);
  std::getline(lines, o2);
  CHECK(header == "option_id,F_C,F_P,delta_rent,delta_type,delta_distance,delta_furnished");
  CHECK(o1 == "o1,0,0,0,0,0,0");
  CHECK(o2 == "o2,1,0.125,0,0,0.25,0");

  TempDir dir;
  auto csv = dir.path / "scores.csv";
  r = run({"suggest", "--catalog", kHousing, "--model", kCheaper, "--strategy", "counting", "--out",
           csv.string()});
  CHECK(r.out == "o2\n");
  CHECK(slurp(csv).rfind("option_id,F_C,F_P", 0) == 0);
}

TEST_CASE("gen-catalog is deterministic and loadable") {
  TempDir dir;
  auto a = dir.path / "a.json";
  auto b = dir.path / "b.csv";
  CHECK(run({"--seed", "4", "gen-catalog", "--n", "12", "--attrs", "3int+1qual", "--out", a.string()}).code == 0);
  CHECK(run({"--seed", "4", "gen-catalog", "--spec", "rand-12x3int+1qual", "--out", b.string()}).code == 0);
  auto ca = load_catalog_file(a);
  CHECK(ca.size() == 12);
  CHECK(ca == load_catalog_file(b));
  auto out = run({"--seed", "4", "gen-catalog", "--n", "12", "--attrs", "3int+1qual"});
  CHECK(out.out == run({"--seed", "4", "gen-catalog", "--n", "12", "--attrs", "3int+1qual"}).out);
  auto schema = run({"gen-catalog", "--n", "5", "--schema",
                     (data_dir() / "student_housing_schema.json").string(), "--format", "csv"});
  CHECK(schema.code == 0);
  CHECK(schema.out.rfind("id,type:qualitative", 0) == 0);
}

TEST_CASE("simulate output is reproducible") {
  TempDir one, two;
  for (const auto* dir : {&one, &two}) {
    auto r = run({"--seed", "5", "simulate", "--runs", "1", "--catalog-spec", "rand-30x6int", "--m", "6",
                  "--out-dir", dir->path.string()});
    REQUIRE(r.code == 0);
  }
  for (const char* file : {"runs.csv", "aggregate.csv", "curve.csv"}) {
    CHECK(slurp(one.path / file) == slurp(two.path / file));
  }
  auto aggregate = slurp(one.path / "aggregate.csv");
  CHECK(aggregate.rfind("config,random,extreme,diversity,counting,prob1,prob2\n6/6,", 0) == 0);
  CHECK(slurp(one.path / "runs.csv").rfind("run,strategy,discovered,cycles,found\n", 0) == 0);
}

TEST_CASE("json config supplies options per subcommand") {
  TempDir dir;
  auto config = dir.path / "config.json";
  std::ofstream(config) << R"({"seed": 5, "simulate": {"runs": 1, "catalog-spec": "rand-30x6int", "m": 6,
                              "strategy": "prob2", "label": "cfg", "out-dir": ")"
                         << dir.path.string() << R"("}})";
  auto r = run({"--config", config.string(), "simulate"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("cfg,") != std::string::npos);
  auto direct = run({"--seed", "5", "simulate", "--runs", "1", "--catalog-spec", "rand-30x6int", "--m", "6",
                     "--strategy", "prob2", "--label", "cfg", "--out-dir", dir.path.string()});
  CHECK(r.out == direct.out);
}

}  // TEST_SUITE
