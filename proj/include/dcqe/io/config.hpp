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

#ifndef DCQE_IO_CONFIG_HPP_
#define DCQE_IO_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dcqe/causal.hpp"
#include "dcqe/datamodel.hpp"
#include "dcqe/experiments.hpp"

// Run configuration files: one `key = value` pair per line, keys with dotted
// section names, `#` starts a comment. Lists are comma separated. Relative
// paths resolve against the directory holding the config file.
namespace dcqe::io {

enum class Command { kSimulate, kRun, kEvaluate };
enum class OutputFormat { kCsv, kJson, kText };

std::string_view command_name(Command c);

struct SimulateSettings {
  std::size_t n = 1000;
  std::size_t m = 6;
  double rho = 0.5;
  double noise_sd = 0.1;
  friend bool operator==(const SimulateSettings&, const SimulateSettings&) = default;
};

struct EvaluateSettings {
  std::filesystem::path data;
  std::string treatment_column = "treat";
  std::string outcome_column = "re78";
  std::vector<std::string> covariates = kEmploymentCovariates;
  double outcome_scale = 0.001;
  std::size_t subjects_used = 2674;
  friend bool operator==(const EvaluateSettings&, const EvaluateSettings&) = default;
};

struct RunSettings {
  std::string id_column;  // empty: rows are aligned by position
  std::string treatment_column = "treat";
  std::string outcome_column = "outcome";
  std::map<PartyIndex, std::filesystem::path> party_files;  // covariates of party (k, l)
  std::vector<std::filesystem::path> outcome_files;         // treatments/outcomes of row block k
  friend bool operator==(const RunSettings&, const RunSettings&) = default;
};

struct OutputSettings {
  std::filesystem::path dir = "results";
  std::vector<OutputFormat> formats = {OutputFormat::kCsv, OutputFormat::kJson, OutputFormat::kText};
  bool bootstrap_sidecar = false;
  friend bool operator==(const OutputSettings&, const OutputSettings&) = default;
};

struct RunConfig {
  Command command = Command::kSimulate;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::size_t bootstrap_replicates = 1000;
  bool resample = true;
  std::vector<Method> estimators = {Method::kIpw};
  Estimand estimand = Estimand::kAte;
  // Scope tokens: IA, L-IA, R-IA, CA, L, R, T, B, W.
  std::vector<std::string> scopes;
  PartitionSpec partition;
  std::size_t intermediate_dim = 0;    // 0: m_l - 1 for every party
  std::size_t collaborative_dim = 0;   // 0: auto_collaborative_dim
  std::size_t anchor_rows = 0;         // 0: number of subjects
  std::optional<double> benchmark;
  SimulateSettings simulate;
  EvaluateSettings evaluate;
  RunSettings run;
  OutputSettings output;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses and validates a config. Defaults depend on the command; the
/// command named in the file (if any) must agree with `command`.
RunConfig parse_config(const std::filesystem::path& path, Command command);
RunConfig parse_config_text(std::string_view text, Command command,
                            const std::filesystem::path& base_dir = std::filesystem::current_path());

/// Cross-field checks: dimension relations, scope tokens, reduction
/// strictness and (for run/evaluate) existence of referenced files. Throws
/// ConfigError naming the offending key.
void validate_config(const RunConfig& config);

/// The effective configuration as config-file text; parse_config_text on the
/// output reproduces the same RunConfig.
std::string to_text(const RunConfig& config);

/// Expands the config into one ScenarioConfig per (estimator, scope), in
/// estimator-major order. For `run`, the partition must be filled in from the
/// party files first.
std::vector<ScenarioConfig> scenario_configs(const RunConfig& config);

}  // namespace dcqe::io

#endif  // DCQE_IO_CONFIG_HPP_
