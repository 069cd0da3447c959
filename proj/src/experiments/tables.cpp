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

#include <algorithm>
#include <numeric>
#include <string>

#include "dcqe/error.hpp"
#include "dcqe/experiments.hpp"
#include "dcqe/random.hpp"

namespace dcqe {
namespace {

struct Row {
  std::string label;
  Analysis analysis;
  CollaborationScope scope;
  std::size_t collaborative_dim;
};

std::vector<ScenarioResult> run_rows(const Dataset& data, const std::optional<Vector>& truth,
                                     const ScenarioConfig& base, const std::vector<Row>& rows) {
  std::vector<ScenarioResult> table;
  for (Method method : {Method::kPsm, Method::kIpw}) {
    for (const Row& row : rows) {
      ScenarioConfig config = base;
      config.estimator = method;
      config.analysis = row.analysis;
      config.scope = row.scope;
      config.collaborative_dim = row.collaborative_dim;
      config.label = row.label;
      table.push_back(run_scenario(data, truth, config));
    }
  }
  return table;
}

}  // namespace

std::vector<ScenarioResult> run_experiment_one(const ExperimentOneOptions& options) {
  ArtificialDataConfig data_config = options.data;
  data_config.seed = options.seed;
  const ArtificialData generated = generate_artificial(data_config);

  const PartitionSpec spec = equal_partition(data_config.n, data_config.m, 2, 2);
  ScenarioConfig base;
  base.partition = spec;
  base.intermediate_dims.uniform = 2;
  base.estimand = Estimand::kAte;
  base.bootstrap_replicates = options.bootstrap_replicates;
  base.master_seed = options.seed;
  base.benchmark = 1.0;
  base.threads = options.threads;

  const std::vector<Row> rows = {
      {"IA", Analysis::kIndividual, CollaborationScope::single({0, 0}), 0},
      {"L-clb", Analysis::kDcqe, CollaborationScope::of_kind(ScopeKind::kLeft, spec), 0},
      {"T-clb", Analysis::kDcqe, CollaborationScope::of_kind(ScopeKind::kTop, spec), 0},
      {"W-clb", Analysis::kDcqe, CollaborationScope::of_kind(ScopeKind::kWhole, spec), 0},
      {"CA", Analysis::kCentralized, CollaborationScope::of_kind(ScopeKind::kWhole, spec), 0},
  };
  return run_rows(generated.data, generated.true_propensities, base, rows);
}

Dataset prepare_experiment_two(const Dataset& pooled, std::uint64_t seed, std::size_t subjects_used) {
  if (subjects_used < 4 || subjects_used % 2 != 0) {
    throw ConfigError("subjects used must be an even count of at least 4");
  }
  if (subjects_used > pooled.subjects()) {
    throw IngestionError("need " + std::to_string(subjects_used) + " subjects but the data has " +
                         std::to_string(pooled.subjects()));
  }
  if (pooled.covariate_count() != kEmploymentCovariates.size()) {
    throw IngestionError("expected " + std::to_string(kEmploymentCovariates.size()) + " covariates");
  }
  std::vector<std::size_t> order(pooled.subjects());
  std::iota(order.begin(), order.end(), 0);
  Rng rng = make_rng(seed, Stream::kShuffle);
  std::shuffle(order.begin(), order.end(), rng);
  order.resize(subjects_used);
  Dataset kept = pooled.select_rows(order);
  validate_treatments(kept.treatments);
  return kept;
}

std::vector<ScenarioResult> run_experiment_two(const Dataset& pooled, const ExperimentTwoOptions& options) {
  const Dataset data = prepare_experiment_two(pooled, options.seed, options.subjects_used);
  const std::size_t half = options.subjects_used / 2;
  const PartitionSpec spec{{half, half}, {4, 4}};

  ScenarioConfig base;
  base.partition = spec;
  base.intermediate_dims.uniform = options.intermediate_dim;
  base.estimand = Estimand::kAtt;
  base.bootstrap_replicates = options.bootstrap_replicates;
  base.master_seed = options.seed;
  base.benchmark = options.benchmark;
  base.threads = options.threads;

  const std::vector<Row> rows = {
      {"L-IA", Analysis::kIndividual, CollaborationScope::single({0, 0}), 0},
      {"R-IA", Analysis::kIndividual, CollaborationScope::single({0, 1}), 0},
      {"L-clb", Analysis::kDcqe, CollaborationScope::of_kind(ScopeKind::kLeft, spec), 0},
      {"R-clb", Analysis::kDcqe, CollaborationScope::of_kind(ScopeKind::kRight, spec), 0},
      {"T-clb", Analysis::kDcqe, CollaborationScope::of_kind(ScopeKind::kTop, spec), 0},
      {"W-clb", Analysis::kDcqe, CollaborationScope::of_kind(ScopeKind::kWhole, spec), 0},
      {"CA", Analysis::kCentralized, CollaborationScope::of_kind(ScopeKind::kWhole, spec), 0},
  };
  return run_rows(data, std::nullopt, base, rows);
}

}  // namespace dcqe
