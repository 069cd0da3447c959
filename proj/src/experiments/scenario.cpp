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
#include <exception>
#include <limits>
#include <random>
#include <string>
#include <thread>

#include "dcqe/error.hpp"
#include "dcqe/experiments.hpp"
#include "dcqe/random.hpp"

namespace dcqe {
namespace {

constexpr int kMaxRedraws = 100;
constexpr std::uint64_t kPointRun = std::numeric_limits<std::uint64_t>::max();

bool has_both_groups(std::span<const int> z, std::span<const std::size_t> rows) {
  bool t = false, c = false;
  for (std::size_t i : rows) (z[i] == 1 ? t : c) = true;
  return t && c;
}

std::string default_label(const ScenarioConfig& config) {
  if (!config.label.empty()) return config.label;
  switch (config.analysis) {
    case Analysis::kCentralized:
      return "CA";
    case Analysis::kIndividual:
      return "IA";
    case Analysis::kDcqe:
      break;
  }
  switch (config.scope.kind) {
    case ScopeKind::kLeft:
      return "L-clb";
    case ScopeKind::kRight:
      return "R-clb";
    case ScopeKind::kTop:
      return "T-clb";
    case ScopeKind::kBottom:
      return "B-clb";
    case ScopeKind::kWhole:
      return "W-clb";
    case ScopeKind::kCustom:
      return "custom-clb";
  }
  return "custom-clb";
}

std::string estimator_label(const ScenarioConfig& config) {
  const std::string m(method_name(config.estimator));
  return config.analysis == Analysis::kDcqe ? "DC-QE(" + m + ")" : m;
}

MetricSummary summarize(std::span<const double> values, double point) {
  return MetricSummary{mean(values), sample_sd(values), point};
}

}  // namespace

std::string_view analysis_name(Analysis a) {
  switch (a) {
    case Analysis::kDcqe:
      return "dcqe";
    case Analysis::kCentralized:
      return "centralized";
    case Analysis::kIndividual:
      return "individual";
  }
  return "unknown";
}

std::size_t auto_collaborative_dim(const ScenarioConfig& config, std::size_t anchor_rows) {
  const ScopeGrid grid = scope_grid(config.scope, config.partition);
  std::size_t width = 0;
  for (const PartyIndex& p : config.scope.parties) width += config.intermediate_dims.for_party(p);
  return std::min({scope_columns(grid, config.partition).size(), width, anchor_rows});
}

PipelineOutcome run_pipeline(const Dataset& data, const std::optional<Vector>& true_scores,
                             const ScenarioConfig& config, std::uint64_t anchor_seed) {
  const PartitionSpec& spec = config.partition;
  validate_partition(spec, data);
  const ScopeGrid grid = scope_grid(config.scope, spec);
  const auto rows = scope_rows(grid, spec);

  PipelineOutcome out;
  Matrix features;
  PropensitySource source = PropensitySource::kDcqe;
  if (config.analysis == Analysis::kDcqe) {
    std::vector<PartyView> views;
    for (auto& v : partition(data, spec)) {
      if (config.scope.parties.contains(v.party)) views.push_back(std::move(v));
    }
    const std::size_t r = config.anchor_rows == 0 ? data.subjects() : config.anchor_rows;
    const AnchorDataset anchor = generate_anchor(column_ranges(data.covariates), r, anchor_seed, spec.col_sizes);
    const std::size_t dim = config.collaborative_dim == 0 ? auto_collaborative_dim(config, r) : config.collaborative_dim;
    CollaborationResult collab = collaborate(views, anchor, config.intermediate_dims, dim);
    out.collaborative_dim = collab.integration.effective_dim();
    features = std::move(collab.representation.values);
  } else {
    if (config.analysis == Analysis::kIndividual && config.scope.parties.size() != 1) {
      throw ScopeError("individual analysis needs a single-party scope");
    }
    source = config.analysis == Analysis::kIndividual ? PropensitySource::kIndividual : PropensitySource::kCentralized;
    features = scope_dataset(data, spec, config.scope).covariates;
  }

  const Dataset scoped = data.select_rows(rows);
  const PropensityScores scores = estimate_propensity(features, scoped.treatments, source);

  if (config.estimator == Method::kPsm) {
    const MatchingResult matching = match_pairs(scores.values, scoped.treatments);
    out.estimate = estimate_psm(matching, scoped.outcomes, config.estimand).value;
    out.balance = psm_balance(scoped.covariates, matching, config.estimand);
  } else {
    out.estimate = estimate_ipw(scores.values, scoped.treatments, scoped.outcomes, config.estimand).value;
    out.balance = ipw_balance(scoped.covariates, scoped.treatments, scores.values, config.estimand);
  }

  const PropensityScores reference = estimate_propensity(data.covariates, data.treatments);
  Vector reference_scoped(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) reference_scoped[i] = reference.values[rows[i]];
  out.inconsistency_ca = inconsistency(scores.values, reference_scoped);

  if (true_scores) {
    if (true_scores->size() != data.subjects()) throw DimensionError("true propensities have the wrong length");
    Vector truth(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) truth[i] = (*true_scores)[rows[i]];
    out.inconsistency_true = inconsistency(scores.values, truth);
  }
  out.scores = scores.values;
  return out;
}

std::vector<std::size_t> bootstrap_indices(const Dataset& data, const PartitionSpec& spec, const ScopeGrid& grid,
                                           std::uint64_t master_seed, std::size_t b) {
  const auto scoped = scope_rows(grid, spec);
  std::vector<std::size_t> indices(data.subjects());
  std::vector<std::size_t> all(data.subjects());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;

  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    Rng rng = make_rng(master_seed, Stream::kResample, {b, static_cast<std::uint64_t>(attempt)});
    for (std::size_t k = 0; k < spec.row_blocks(); ++k) {
      const std::size_t offset = spec.row_offset(k);
      std::uniform_int_distribution<std::size_t> pick(0, spec.row_sizes[k] - 1);
      for (std::size_t i = 0; i < spec.row_sizes[k]; ++i) indices[offset + i] = offset + pick(rng);
    }
    Treatments z(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i) z[i] = data.treatments[indices[i]];
    if (has_both_groups(z, scoped) && has_both_groups(z, all)) return indices;
  }
  throw ResampleError("bootstrap replicate " + std::to_string(b) + " lost a treatment group in " +
                      std::to_string(kMaxRedraws) + " draws");
}

ScenarioResult run_scenario(const Dataset& data, const std::optional<Vector>& true_scores,
                            const ScenarioConfig& config) {
  if (config.bootstrap_replicates < 1) throw ConfigError("bootstrap needs at least one replicate");
  validate_partition(config.partition, data);
  const ScopeGrid grid = scope_grid(config.scope, config.partition);
  const std::uint64_t point_anchor_seed = derive_seed(config.master_seed, {static_cast<std::uint64_t>(Stream::kAnchor), kPointRun});

  const PipelineOutcome point = run_pipeline(data, true_scores, config, point_anchor_seed);

  const std::size_t replicates = config.bootstrap_replicates;
  std::vector<PipelineOutcome> outcomes(replicates);
  auto run_replicate = [&](std::size_t b) {
    if (!config.resample) {
      outcomes[b] = point;
      return;
    }
    const auto idx = bootstrap_indices(data, config.partition, grid, config.master_seed, b);
    std::optional<Vector> truth;
    if (true_scores) {
      truth.emplace(idx.size());
      for (std::size_t i = 0; i < idx.size(); ++i) (*truth)[i] = (*true_scores)[idx[i]];
    }
    const std::uint64_t anchor_seed = derive_seed(config.master_seed, {static_cast<std::uint64_t>(Stream::kAnchor), b});
    outcomes[b] = run_pipeline(data.select_rows(idx), truth, config, anchor_seed);
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(config.threads, static_cast<unsigned>(replicates)));
  if (threads == 1) {
    for (std::size_t b = 0; b < replicates; ++b) run_replicate(b);
  } else {
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t b = t; b < replicates; b += threads) run_replicate(b);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  ScenarioResult result;
  result.estimator = estimator_label(config);
  result.collaboration = default_label(config);
  result.method = config.estimator;
  result.estimand = config.estimand;
  result.analysis = config.analysis;
  result.subjects = scope_rows(grid, config.partition).size();
  result.collaborative_dim = point.collaborative_dim;
  result.bootstrap = BootstrapDistribution{Vector(replicates), config.estimand, config.estimator};

  Vector inc_true(replicates), inc_ca(replicates), masmd(replicates);
  for (std::size_t b = 0; b < replicates; ++b) {
    result.bootstrap.estimates[b] = outcomes[b].estimate;
    inc_ca[b] = outcomes[b].inconsistency_ca;
    masmd[b] = outcomes[b].balance.masmd;
    if (outcomes[b].inconsistency_true) inc_true[b] = *outcomes[b].inconsistency_true;
  }
  result.estimate = summarize(result.bootstrap.estimates, point.estimate);
  result.benchmark = config.benchmark;
  if (config.benchmark) result.gap = gap(result.bootstrap.estimates, *config.benchmark);
  if (point.inconsistency_true) result.inconsistency_true = summarize(inc_true, *point.inconsistency_true);
  result.inconsistency_ca = summarize(inc_ca, point.inconsistency_ca);
  result.masmd = summarize(masmd, point.balance.masmd);
  result.smd = point.balance.smd;
  return result;
}

}  // namespace dcqe
