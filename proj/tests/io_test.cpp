/*
 * Copyright 2026 The DCQE Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "dcqe/error.hpp"
#include "dcqe/experiments.hpp"
#include "dcqe/io/config.hpp"
#include "dcqe/io/csv.hpp"
#include "dcqe/io/report.hpp"
#include "doctest.h"

namespace dcqe::io {
namespace {

namespace fs = std::filesystem;

// Fresh directory per test case, removed afterwards.
struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("dcqe_io_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path write(const std::string& name, const std::string& text) const {
    const fs::path p = path / name;
    std::ofstream(p) << text;
    return p;
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST_CASE("minimal simulate config takes the defaults") {
  const RunConfig c = parse_config_text("", Command::kSimulate);
  CHECK(c.bootstrap_replicates == 1000);
  CHECK(c.seed == 0);
  CHECK(c.estimators == std::vector<Method>{Method::kIpw});
  CHECK(c.estimand == Estimand::kAte);
  CHECK(c.partition == equal_partition(1000, 6, 2, 2));
  CHECK(c.intermediate_dim == 2);
  CHECK(c.benchmark == 1.0);
  CHECK(c.scopes == std::vector<std::string>{"IA", "L", "T", "W", "CA"});
}

TEST_CASE("config values are parsed") {
  const RunConfig c = parse_config_text(R"(
# comment
command = simulate
seed = 42          # trailing comment
bootstrap.replicates = 50
bootstrap.resample = false
estimation.estimators = PSM, IPW
estimation.estimand = ATT
scenario.scopes = W, CA
simulate.n = 300
partition.rows = 100, 200
reduction.collaborative_dim = 5
benchmark = none
output.formats = csv
)",
                                        Command::kSimulate, "/base");
  CHECK(c.seed == 42);
  CHECK(c.bootstrap_replicates == 50);
  CHECK_FALSE(c.resample);
  CHECK(c.estimators == std::vector<Method>{Method::kPsm, Method::kIpw});
  CHECK(c.estimand == Estimand::kAtt);
  CHECK(c.partition.row_sizes == std::vector<std::size_t>{100, 200});
  CHECK(c.partition.col_sizes == std::vector<std::size_t>{3, 3});
  CHECK(c.collaborative_dim == 5);
  CHECK_FALSE(c.benchmark.has_value());
  CHECK(c.output.formats == std::vector<OutputFormat>{OutputFormat::kCsv});
  CHECK(c.output.dir == fs::path("/base/results"));
}

TEST_CASE("config errors name the offending key") {
  CHECK_THROWS_WITH_AS(parse_config_text("reduction.intermediate_dim = 3", Command::kSimulate),
                       doctest::Contains("reduction must be strict"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_text("bogus.key = 1", Command::kSimulate), doctest::Contains("bogus.key"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_text("seed = 1\nseed = 2", Command::kSimulate), doctest::Contains("seed"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_text("seed = -1", Command::kSimulate), doctest::Contains("seed"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_text("simulate.rho = 1.5", Command::kSimulate),
                       doctest::Contains("simulate.rho"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_text("partition.rows = 10, 10", Command::kSimulate),
                       doctest::Contains("partition.rows"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_text("scenario.scopes = W, X", Command::kSimulate),
                       doctest::Contains("scenario.scopes"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_text("reduction.collaborative_dim = 7", Command::kSimulate),
                       doctest::Contains("reduction.collaborative_dim"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_text("command = run", Command::kSimulate), doctest::Contains("command"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_text("just words", Command::kSimulate), doctest::Contains("line 1"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_text("evaluate.data = /does/not/exist.csv", Command::kEvaluate),
                       doctest::Contains("evaluate.data"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_text("", Command::kRun), doctest::Contains("run.party"), ConfigError);
  CHECK_THROWS_AS(parse_config("/does/not/exist.conf", Command::kSimulate), ConfigError);
}

TEST_CASE("effective config round trips through its text form") {
  TempDir dir;
  const fs::path data = dir.write("pooled.csv", "x\n1\n");
  for (Command command : {Command::kSimulate, Command::kEvaluate}) {
    const std::string text = command == Command::kSimulate
                                 ? "seed = 9\nestimation.estimators = PSM\nsimulate.rho = 0.3\nbenchmark = 1.25\n"
                                 : "seed = 9\nevaluate.data = pooled.csv\nestimation.estimand = ATT\n";
    const RunConfig c = parse_config_text(text, command, dir.path);
    CHECK(parse_config_text(to_text(c), command, dir.path) == c);
  }
  const RunConfig eval = parse_config_text("evaluate.data = pooled.csv", Command::kEvaluate, dir.path);
  CHECK(eval.evaluate.data == data);
  CHECK(eval.partition.row_sizes == std::vector<std::size_t>{1337, 1337});
  CHECK(eval.partition.col_sizes == std::vector<std::size_t>{4, 4});
  CHECK(eval.benchmark == kEmploymentBenchmark);
}

TEST_CASE("scenario expansion follows estimator then scope order") {
  const RunConfig c = parse_config_text("estimation.estimators = PSM, IPW\nscenario.scopes = IA, T, CA",
                                        Command::kSimulate);
  const auto scenarios = scenario_configs(c);
  REQUIRE(scenarios.size() == 6);
  CHECK(scenarios[0].estimator == Method::kPsm);
  CHECK(scenarios[0].analysis == Analysis::kIndividual);
  CHECK(scenarios[0].scope == CollaborationScope::single({0, 0}));
  CHECK(scenarios[1].analysis == Analysis::kDcqe);
  CHECK(scenarios[1].label == "T-clb");
  CHECK(scenarios[2].analysis == Analysis::kCentralized);
  CHECK(scenarios[3].estimator == Method::kIpw);
  CHECK(scenarios[1].intermediate_dims.for_party({0, 1}) == 2);

  const RunConfig automatic = parse_config_text("reduction.intermediate_dim = 0\npartition.cols = 2, 4",
                                                Command::kSimulate);
  const auto s = scenario_configs(automatic);
  CHECK(s[0].intermediate_dims.for_party({1, 0}) == 1);
  CHECK(s[0].intermediate_dims.for_party({1, 1}) == 3);
}

TEST_CASE("csv ingestion") {
  TempDir dir;
  const fs::path good = dir.write("good.csv", "a,treat,b,y\n1.5,1,-2,10\n2.5,0,3e-1,20\n\n");
  TableSchema schema;
  schema.treatment_column = "treat";
  schema.outcome_column = "y";
  schema.outcome_scale = 0.5;
  const Dataset d = ingest_csv(good, schema);
  CHECK(d.covariates == Matrix{{1.5, -2}, {2.5, 0.3}});
  CHECK(d.treatments == Treatments{1, 0});
  CHECK(d.outcomes == Vector{5, 10});

  schema.covariates = {"b"};
  CHECK(ingest_csv(good, schema).covariates == Matrix{{-2}, {0.3}});

  const fs::path two = dir.write("two.csv", "a,treat,y\n1,1,0\n2,0,0\n3,2,0\n");
  schema.covariates = {};
  CHECK_THROWS_WITH_AS(ingest_csv(two, schema), doctest::Contains("row 3"), IngestionError);
  const fs::path nan = dir.write("nan.csv", "a,treat,y\n1,1,0\nnan,0,0\n");
  CHECK_THROWS_WITH_AS(ingest_csv(nan, schema), doctest::Contains("column 'a'"), IngestionError);
  const fs::path empty_cell = dir.write("empty.csv", "a,treat,y\n1,1,0\n,0,0\n");
  CHECK_THROWS_AS(ingest_csv(empty_cell, schema), IngestionError);
  const fs::path ragged = dir.write("ragged.csv", "a,treat,y\n1,1\n");
  CHECK_THROWS_WITH_AS(ingest_csv(ragged, schema), doctest::Contains("line 2"), IngestionError);
  schema.outcome_column = "missing";
  CHECK_THROWS_WITH_AS(ingest_csv(good, schema), doctest::Contains("missing"), IngestionError);
  CHECK_THROWS_AS(read_csv(dir.path / "nope.csv"), IngestionError);
}

TEST_CASE("dataset csv round trip is exact") {
  TempDir dir;
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal(0.0, 1e3);
  Matrix x(25, 3);
  Treatments z(25);
  Vector y(25);
  for (std::size_t i = 0; i < 25; ++i) {
    for (std::size_t j = 0; j < 3; ++j) x(i, j) = normal(rng) * (j == 2 ? 1e-9 : 1.0);
    z[i] = static_cast<int>(i % 2);
    y[i] = normal(rng) / 3.0;
  }
  const Dataset d = make_dataset(x, z, y);
  const fs::path p = dir.path / "d.csv";
  write_dataset_csv(p, d, {"u", "v", "w"}, "treat", "y");
  TableSchema schema;
  schema.treatment_column = "treat";
  schema.outcome_column = "y";
  CHECK(ingest_csv(p, schema) == d);
}

TEST_CASE("party files are aligned by id") {
  TempDir dir;
  RunSettings run;
  run.id_column = "id";
  run.treatment_column = "z";
  run.outcome_column = "y";
  run.party_files[{0, 0}] = dir.write("p11.csv", "id,a\nr1,1\nr2,2\nr3,3\n");
  run.party_files[{0, 1}] = dir.write("p12.csv", "id,b,c\nr1,4,7\nr2,5,8\nr3,6,9\n");
  run.party_files[{1, 0}] = dir.write("p21.csv", "id,a\ns1,10\ns2,11\n");
  run.party_files[{1, 1}] = dir.write("p22.csv", "id,b,c\ns1,12,14\ns2,13,15\n");
  run.outcome_files = {dir.write("o1.csv", "id,z,y\nr1,1,0.5\nr2,0,1.5\nr3,1,2.5\n"),
                       dir.write("o2.csv", "id,z,y\ns1,0,3\ns2,1,4\n")};
  const PartyInput input = ingest_party_files(run);
  CHECK(input.partition.row_sizes == std::vector<std::size_t>{3, 2});
  CHECK(input.partition.col_sizes == std::vector<std::size_t>{1, 2});
  CHECK(input.covariate_names == std::vector<std::string>{"a", "b", "c"});
  CHECK(input.data.covariates == Matrix{{1, 4, 7}, {2, 5, 8}, {3, 6, 9}, {10, 12, 14}, {11, 13, 15}});
  CHECK(input.data.treatments == Treatments{1, 0, 1, 0, 1});
  CHECK(input.data.outcomes == Vector{0.5, 1.5, 2.5, 3, 4});

  run.party_files[{0, 1}] = dir.write("p12x.csv", "id,b,c\nr2,5,8\nr1,4,7\nr3,6,9\n");
  CHECK_THROWS_WITH_AS(ingest_party_files(run), doctest::Contains("does not match"), IngestionError);
  run.party_files[{0, 1}] = dir.write("p12y.csv", "id,b\nr1,4\nr2,5\nr3,6\n");
  CHECK_THROWS_AS(ingest_party_files(run), IngestionError);
}

std::vector<ScenarioResult> small_table() {
  ExperimentOneOptions options;
  options.data.n = 200;
  options.bootstrap_replicates = 4;
  options.seed = 3;
  return run_experiment_one(options);
}

TEST_CASE("report formats") {
  const auto table = small_table();
  const std::string csv = results_csv({table[3]}, 3);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
  CHECK(csv.find(",3\n") != std::string::npos);

  const std::string text = results_table(table);
  CHECK(std::count(text.begin(), text.end(), '\n') == 12);
  for (const char* column : {"Estimator", "Collaboration", "ATE", "Gap", "InconsistencyTrue", "InconsistencyCA", "MASMD"}) {
    CHECK(text.find(column) != std::string::npos);
  }
  char expected[64];
  std::snprintf(expected, sizeof(expected), "%.4f (%.4f)", table[3].estimate.mean, table[3].estimate.se);
  CHECK(text.find(expected) != std::string::npos);

  const ReportContext context{"seed = 3\n", 3, "scalar"};
  const std::string json = results_json(table, context);
  CHECK(results_from_json(json) == table);
  CHECK(json.find("\"seed\": 3") != std::string::npos);
  CHECK_THROWS_AS(results_from_json("{"), IoError);

  const std::string sidecar = bootstrap_csv(table);
  CHECK(std::count(sidecar.begin(), sidecar.end(), '\n') == 1 + 10 * 4);
}

TEST_CASE("emit_report writes the selected files") {
  TempDir dir;
  const auto table = small_table();
  OutputSettings settings;
  settings.dir = dir.path / "out";
  settings.bootstrap_sidecar = true;
  const auto written = emit_report(table, {"", 3, "scalar"}, settings);
  CHECK(written.size() == 4);
  for (const auto& p : written) CHECK(fs::exists(p));
  CHECK(slurp(settings.dir / "results.csv") == results_csv(table, 3));
  CHECK_THROWS_AS(emit_report({}, {}, settings), IoError);

  const fs::path blocker = dir.write("file", "x");
  settings.dir = blocker / "sub";
  CHECK_THROWS_AS(emit_report(table, {}, settings), IoError);
}

#ifdef DCQE_CLI_PATH
int run_cli(const std::string& args) {
  const std::string command = std::string(DCQE_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST_CASE("command line exit codes") {
  TempDir dir;
  const fs::path ok = dir.write("ok.conf", "bootstrap.replicates = 2\nsimulate.n = 200\nscenario.scopes = W\n");
  CHECK(run_cli("simulate --quiet --config " + ok.string() + " --out " + (dir.path / "out").string()) == 0);
  CHECK(fs::exists(dir.path / "out" / "results.csv"));
  CHECK(run_cli("simulate") == 1);
  CHECK(run_cli("frobnicate") == 1);
  const fs::path bad = dir.write("bad.conf", "reduction.intermediate_dim = 3\n");
  CHECK(run_cli("simulate --quiet --config " + bad.string()) == 2);
  const fs::path data = dir.write("data.csv", "age,treat,re78\n1,2,3\n");
  const fs::path eval = dir.write("eval.conf", "scenario.scopes = W\n");
  CHECK(run_cli("evaluate --quiet --config " + eval.string() + " --data " + data.string()) == 3);
  const fs::path blocker = dir.write("blocker", "x");
  CHECK(run_cli("simulate --quiet --config " + ok.string() + " --out " + (blocker / "out").string()) == 5);
}
#endif

}  // namespace
}  // namespace dcqe::io
