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

#ifndef DCQE_CAUSAL_HPP_
#define DCQE_CAUSAL_HPP_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "dcqe/matrix.hpp"
#include "dcqe/numerics.hpp"

namespace dcqe {

// Estimated scores are clipped into [kPropensityClip, 1 - kPropensityClip].
inline constexpr double kPropensityClip = 1e-6;

enum class PropensitySource { kTrue, kCentralized, kIndividual, kDcqe };
enum class Estimand { kAte, kAtt };
enum class Method { kPsm, kIpw };

std::string_view estimand_name(Estimand e);
std::string_view method_name(Method m);

struct PropensityScores {
  Vector values;
  PropensitySource source = PropensitySource::kCentralized;
};

/// Logistic regression of treatment on the features plus a constant term,
/// predicted back on the same rows and clipped.
PropensityScores estimate_propensity(const Matrix& features, std::span<const int> treatments,
                                     PropensitySource source = PropensitySource::kCentralized);

Vector clip_propensities(std::span<const double> scores);

// pairs[i] is the opposite-group subject matched to subject i.
struct MatchingResult {
  std::vector<std::size_t> pairs;
  std::vector<std::size_t> treated;
  std::vector<std::size_t> control;
};

enum class MatchStrategy { kExhaustive, kSorted };

/// One-to-one nearest-neighbour matching on the score, with replacement.
/// Ties in |score_i - score_j| go to the smallest index j. Both strategies
/// return identical results; kSorted runs in O(n log n) for distinct scores.
MatchingResult match_pairs(std::span<const double> scores, std::span<const int> treatments,
                           MatchStrategy strategy = MatchStrategy::kSorted);

struct EffectEstimate {
  Estimand estimand = Estimand::kAte;
  Method method = Method::kPsm;
  double value = 0.0;
};

EffectEstimate estimate_psm(const MatchingResult& matching, std::span<const double> outcomes, Estimand estimand);

/// Self-normalized inverse probability weighting: a difference of weighted
/// group means with weights from ipw_weights.
EffectEstimate estimate_ipw(std::span<const double> scores, std::span<const int> treatments,
                            std::span<const double> outcomes, Estimand estimand);

/// ATE: 1/e for treated, 1/(1-e) for controls. ATT: 1 for treated,
/// e/(1-e) for controls.
Vector ipw_weights(std::span<const double> scores, std::span<const int> treatments, Estimand estimand);

}  // namespace dcqe

#endif  // DCQE_CAUSAL_HPP_
