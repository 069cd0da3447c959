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

// dcqe: command-line front end.
//
//   dcqe simulate --config <file> [--seed N] [--out DIR]
//   dcqe run      --config <file>
//   dcqe evaluate --config <file> --data <csv>
//
// Exit codes: 0 success, 1 usage, 2 config, 3 ingestion, 4 runtime, 5 io.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dcqe/error.hpp"
#include "dcqe/experiments.hpp"
#include "dcqe/io/config.hpp"
#include "dcqe/io/csv.hpp"
#include "dcqe/io/report.hpp"
#include "dcqe/simd/kernels.hpp"

namespace {

namespace fs = std::filesystem;
using dcqe::io::Command;
using dcqe::io::RunConfig;

enum ExitCode : int { kOk = 0, kUsage = 1, kConfig = 2, kIngestion = 3, kRuntime = 4, kIo = 5 };

struct Options {
  fs::path config;
  std::optional<std::uint64_t> seed;
  std::optional<fs::path> out;
  std::optional<fs::path> data;
  std::optional<unsigned> threads;
  bool quiet = false;
};

std::vector<dcqe::ScenarioResult> run_all(const dcqe::Dataset& data, const std::optional<dcqe::Vector>& truth,
                                          const RunConfig& config, bool quiet) {
  std::vector<dcqe::ScenarioResult> results;
  for (const auto& scenario : dcqe::io::scenario_configs(config)) {
    results.push_back(dcqe::run_scenario(data, truth, scenario));
    if (!quiet) {
      const auto& r = results.back();
      std::cerr << "  " << r.estimator << " " << r.collaboration << ": " << r.estimate.mean << " (" << r.estimate.se
                << ")\n";
    }
  }
  return results;
}

int execute(Command command, const Options& options) {
  RunConfig config = dcqe::io::parse_config(options.config, command);
  if (options.seed) config.seed = *options.seed;
  if (options.out) config.output.dir = fs::absolute(*options.out).lexically_normal();
  if (options.data) config.evaluate.data = fs::absolute(*options.data).lexically_normal();
  if (options.threads) config.threads = *options.threads;

  std::vector<dcqe::ScenarioResult> results;
  switch (command) {
    case Command::kSimulate: {
      dcqe::io::validate_config(config);
      dcqe::ArtificialDataConfig data_config{config.simulate.n, config.simulate.m, config.simulate.rho,
                                             config.simulate.noise_sd, config.seed};
      const dcqe::ArtificialData generated = dcqe::generate_artificial(data_config);
      results = run_all(generated.data, generated.true_propensities, config, options.quiet);
      break;
    }
    case Command::kEvaluate: {
      if (config.evaluate.data.empty()) throw dcqe::ConfigError("evaluate.data: no data file (use --data)");
      dcqe::io::validate_config(config);
      dcqe::io::TableSchema schema;
      schema.covariates = config.evaluate.covariates;
      schema.treatment_column = config.evaluate.treatment_column;
      schema.outcome_column = config.evaluate.outcome_column;
      schema.outcome_scale = config.evaluate.outcome_scale;
      const dcqe::Dataset pooled = dcqe::io::ingest_csv(config.evaluate.data, schema);
      const dcqe::Dataset data = dcqe::prepare_experiment_two(pooled, config.seed, config.evaluate.subjects_used);
      results = run_all(data, std::nullopt, config, options.quiet);
      break;
    }
    case Command::kRun: {
      dcqe::io::PartyInput input = dcqe::io::ingest_party_files(config.run);
      config.partition = input.partition;
      dcqe::io::validate_config(config);
      results = run_all(input.data, std::nullopt, config, options.quiet);
      break;
    }
  }

  const dcqe::io::ReportContext context{dcqe::io::to_text(config), config.seed,
                                        std::string(dcqe::simd::isa_name(dcqe::simd::active_isa()))};
  for (const auto& path : dcqe::io::emit_report(results, context, config.output)) {
    if (!options.quiet) std::cerr << "wrote " << path.string() << "\n";
  }
  if (!options.quiet) std::cout << dcqe::io::results_table(results);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Data collaboration quasi-experiments: causal effect estimation on distributed data"};
  app.require_subcommand(1);

  Options options;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", options.config, "Configuration file")->required()->check(CLI::ExistingFile);
    sub->add_option("--threads", options.threads, "Worker threads for bootstrap replicates");
    sub->add_flag("--quiet", options.quiet, "Only write the report files");
  };
  CLI::App* simulate = app.add_subcommand("simulate", "Synthetic-data experiment");
  add_common(simulate);
  simulate->add_option("--seed", options.seed, "Master seed (overrides the config)");
  simulate->add_option("--out", options.out, "Output directory (overrides the config)");
  CLI::App* run = app.add_subcommand("run", "DC-QE on user-supplied party files");
  add_common(run);
  CLI::App* evaluate = app.add_subcommand("evaluate", "Benchmark evaluation on a pooled observational dataset");
  add_common(evaluate);
  evaluate->add_option("--data", options.data, "Pooled CSV file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  const Command command = simulate->parsed() ? Command::kSimulate
                          : run->parsed()    ? Command::kRun
                                             : Command::kEvaluate;
  try {
    return execute(command, options);
  } catch (const dcqe::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const dcqe::IngestionError& e) {
    std::cerr << "ingestion error: " << e.what() << "\n";
    return kIngestion;
  } catch (const dcqe::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
}
