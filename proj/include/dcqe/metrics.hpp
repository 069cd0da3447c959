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

#ifndef DCQE_METRICS_HPP_
#define DCQE_METRICS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dcqe/causal.hpp"
#include "dcqe/datamodel.hpp"
#include "dcqe/matrix.hpp"

namespace dcqe {

struct BootstrapDistribution {
  Vector estimates;
  Estimand estimand = Estimand::kAte;
  Method method = Method::kPsm;

  friend bool operator==(const BootstrapDistribution&, const BootstrapDistribution&) = default;
};

/// Root-mean-square deviation of the estimates from the benchmark.
double gap(std::span<const double> estimates, double benchmark);

/// Root-mean-square difference of two score vectors.
double inconsistency(std::span<const double> a, std::span<const double> b);

struct BalanceReport {
  Vector smd;  // signed standardized mean difference per covariate
  double masmd = 0.0;

  friend bool operator==(const BalanceReport&, const BalanceReport&) = default;
};

/// Standardized mean differences (treated minus control over the root of the
/// average group variance). With weights, group means and variances are the
/// weighted forms, the variance using the sum(w)/((sum w)^2 - sum w^2)
/// correction. A covariate with zero pooled variance gets d = 0 when the
/// group means agree and raises ImbalanceError otherwise.
BalanceReport smd(const Matrix& covariates, std::span<const int> treatments,
                  std::optional<std::span<const double>> weights = std::nullopt);

// Rows (with multiplicity) and group labels of a matched sample.
struct MatchedSample {
  std::vector<std::size_t> rows;
  Treatments treatments;
};

/// ATT: every treated subject plus its match. ATE: every subject plus its
/// match, so each pair contributes one row to each group.
MatchedSample matched_sample(const MatchingResult& matching, Estimand estimand);

BalanceReport psm_balance(const Matrix& covariates, const MatchingResult& matching, Estimand estimand);
BalanceReport ipw_balance(const Matrix& covariates, std::span<const int> treatments,
                          std::span<const double> scores, Estimand estimand);

double mean(std::span<const double> values);
// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double sample_sd(std::span<const double> values);

}  // namespace dcqe

#endif  // DCQE_METRICS_HPP_
