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

#ifndef DCQE_EXPERIMENTS_HPP_
#define DCQE_EXPERIMENTS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dcqe/causal.hpp"
#include "dcqe/collaboration.hpp"
#include "dcqe/datamodel.hpp"
#include "dcqe/metrics.hpp"

namespace dcqe {

struct ArtificialDataConfig {
  std::size_t n = 1000;
  std::size_t m = 6;
  double rho = 0.5;
  double noise_sd = 0.1;
  std::uint64_t seed = 0;
};

struct ArtificialData {
  Dataset data;
  Vector true_propensities;
};

/// Covariates ~ N(0, S) with unit variances and common correlation rho;
/// treatment ~ Bernoulli(sigmoid(sum_j x_j / m)); outcome = sum_j x_j + z + noise.
/// The treatment effect is exactly 1 for every subject.
ArtificialData generate_artificial(const ArtificialDataConfig& config);

enum class Analysis { kDcqe, kCentralized, kIndividual };

std::string_view analysis_name(Analysis a);

struct ScenarioConfig {
  PartitionSpec partition;
  CollaborationScope scope;
  IntermediateDims intermediate_dims;
  std::size_t collaborative_dim = 0;  // 0: auto_collaborative_dim
  std::size_t anchor_rows = 0;        // 0: number of subjects in the dataset
  Method estimator = Method::kIpw;
  Estimand estimand = Estimand::kAte;
  Analysis analysis = Analysis::kDcqe;
  std::size_t bootstrap_replicates = 1000;
  bool resample = true;
  std::uint64_t master_seed = 0;
  std::optional<double> benchmark;
  std::string label;  // collaboration label for tables; derived when empty
  unsigned threads = 1;
};

/// Collaborative dimension used when the config leaves it at 0: the number
/// of covariates the scope covers, capped by the combined width of the
/// parties' anchor images and by the anchor row count.
std::size_t auto_collaborative_dim(const ScenarioConfig& config, std::size_t anchor_rows);

// Bootstrap mean and standard error of a metric plus its value on the
// original (non-resampled) data.
struct MetricSummary {
  double mean = 0.0;
  double se = 0.0;
  double point = 0.0;

  friend bool operator==(const MetricSummary&, const MetricSummary&) = default;
};

struct ScenarioResult {
  std::string estimator;      // e.g. "PSM", "DC-QE(IPW)"
  std::string collaboration;  // e.g. "IA", "W-clb", "CA"
  Method method = Method::kPsm;
  Estimand estimand = Estimand::kAte;
  Analysis analysis = Analysis::kDcqe;
  std::size_t subjects = 0;
  std::size_t collaborative_dim = 0;  // effective dimension on the original data; 0 for raw analyses
  BootstrapDistribution bootstrap;
  MetricSummary estimate;
  std::optional<double> benchmark;
  std::optional<double> gap;
  std::optional<MetricSummary> inconsistency_true;
  MetricSummary inconsistency_ca;
  MetricSummary masmd;
  Vector smd;  // per covariate, original data

  friend bool operator==(const ScenarioResult&, const ScenarioResult&) = default;
};

// Outcome of the full pipeline on one dataset.
struct PipelineOutcome {
  double estimate = 0.0;
  std::optional<double> inconsistency_true;
  double inconsistency_ca = 0.0;
  BalanceReport balance;
  std::size_t collaborative_dim = 0;
  Vector scores;  // propensities of the scope's subjects
};

/// Anchor generation, intermediate representations, integration, propensity
/// estimation and effect estimation for the configured scope, plus the
/// evaluation metrics against the centralized analysis of `data`.
PipelineOutcome run_pipeline(const Dataset& data, const std::optional<Vector>& true_scores,
                             const ScenarioConfig& config, std::uint64_t anchor_seed);

/// Bootstrap indices for replicate b: every row block is resampled with
/// replacement within itself, so block sizes are preserved. Draws are
/// repeated (up to 100 times) until the scope rows and the whole dataset
/// contain both treatment groups.
std::vector<std::size_t> bootstrap_indices(const Dataset& data, const PartitionSpec& spec,
                                           const ScopeGrid& grid, std::uint64_t master_seed, std::size_t b);

ScenarioResult run_scenario(const Dataset& data, const std::optional<Vector>& true_scores,
                            const ScenarioConfig& config);

struct ExperimentOneOptions {
  ArtificialDataConfig data;
  std::size_t bootstrap_replicates = 1000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

/// {PSM, IPW} x {IA, L-clb, T-clb, W-clb, CA} on artificial data split over a
/// 2 x 2 grid, ATE, benchmark 1.
std::vector<ScenarioResult> run_experiment_one(const ExperimentOneOptions& options);

// Column order expected by the employment-data experiment: left parties hold
// the first four covariates, right parties the last four.
inline const std::vector<std::string> kEmploymentCovariates = {"age",      "married", "education", "nodegree",
                                                               "hispanic", "black",   "re74",      "re75"};
inline constexpr double kEmploymentBenchmark = 1.794;

struct ExperimentTwoOptions {
  std::size_t bootstrap_replicates = 1000;
  std::uint64_t seed = 0;
  std::size_t subjects_used = 2674;
  std::size_t intermediate_dim = 3;
  double benchmark = kEmploymentBenchmark;
  unsigned threads = 1;
};

/// Shuffles the pooled dataset under `seed` and keeps the first
/// subjects_used rows (which must be even, split into two equal row blocks).
Dataset prepare_experiment_two(const Dataset& pooled, std::uint64_t seed, std::size_t subjects_used);

/// {PSM, IPW} x {L-IA, R-IA, L-clb, R-clb, T-clb, W-clb, CA}, ATT. `pooled`
/// has the eight covariates in kEmploymentCovariates order, outcomes in
/// thousands of dollars.
std::vector<ScenarioResult> run_experiment_two(const Dataset& pooled, const ExperimentTwoOptions& options);

}  // namespace dcqe

#endif  // DCQE_EXPERIMENTS_HPP_
