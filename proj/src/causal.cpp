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

#include "dcqe/causal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dcqe/error.hpp"

namespace dcqe {
namespace {

void check_lengths(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": length mismatch (" + std::to_string(a) + " vs " +
                         std::to_string(b) + ")");
  }
}

struct Candidate {
  double score;
  std::size_t index;
};

// Smallest-index candidate at minimal distance, scanning a score-sorted
// group outward from the insertion point of `s`. Distances are monotone on
// each side, so the scan stops as soon as a side gets strictly farther.
std::size_t nearest_sorted(const std::vector<Candidate>& sorted, double s) {
  const auto split = std::lower_bound(sorted.begin(), sorted.end(), s,
                                      [](const Candidate& c, double v) { return c.score < v; });
  const std::size_t mid = static_cast<std::size_t>(split - sorted.begin());

  double best = std::numeric_limits<double>::infinity();
  if (mid < sorted.size()) best = std::min(best, std::abs(s - sorted[mid].score));
  if (mid > 0) best = std::min(best, std::abs(s - sorted[mid - 1].score));

  std::size_t winner = std::numeric_limits<std::size_t>::max();
  for (std::size_t i = mid; i < sorted.size() && std::abs(s - sorted[i].score) == best; ++i) {
    winner = std::min(winner, sorted[i].index);
  }
  for (std::size_t i = mid; i > 0 && std::abs(s - sorted[i - 1].score) == best; --i) {
    winner = std::min(winner, sorted[i - 1].index);
  }
  return winner;
}

std::size_t nearest_exhaustive(std::span<const double> scores, const std::vector<std::size_t>& group, double s) {
  std::size_t winner = group.front();
  double best = std::abs(s - scores[winner]);
  for (std::size_t j : group) {
    const double d = std::abs(s - scores[j]);
    if (d < best) {
      best = d;
      winner = j;
    }
  }
  return winner;
}

}  // namespace

std::string_view estimand_name(Estimand e) { return e == Estimand::kAte ? "ATE" : "ATT"; }
std::string_view method_name(Method m) { return m == Method::kPsm ? "PSM" : "IPW"; }

Vector clip_propensities(std::span<const double> scores) {
  Vector out(scores.begin(), scores.end());
  for (double& e : out) e = std::clamp(e, kPropensityClip, 1.0 - kPropensityClip);
  return out;
}

PropensityScores estimate_propensity(const Matrix& features, std::span<const int> treatments,
                                     PropensitySource source) {
  const LogisticModel model = logistic_fit(features, treatments);
  return PropensityScores{clip_propensities(logistic_predict(model, features)), source};
}

MatchingResult match_pairs(std::span<const double> scores, std::span<const int> treatments,
                           MatchStrategy strategy) {
  check_lengths(scores.size(), treatments.size(), "match_pairs");
  MatchingResult out;
  out.pairs.resize(scores.size());
  for (std::size_t i = 0; i < treatments.size(); ++i) {
    if (treatments[i] != 0 && treatments[i] != 1) throw InvalidDataError("match_pairs: non-binary treatment");
    (treatments[i] == 1 ? out.treated : out.control).push_back(i);
  }
  if (out.treated.empty() || out.control.empty()) {
    throw DegenerateLabelsError("match_pairs: both groups must be non-empty");
  }

  if (strategy == MatchStrategy::kExhaustive) {
    for (std::size_t i = 0; i < scores.size(); ++i) {
      out.pairs[i] = nearest_exhaustive(scores, treatments[i] == 1 ? out.control : out.treated, scores[i]);
    }
    return out;
  }

  auto sorted_group = [&](const std::vector<std::size_t>& group) {
    std::vector<Candidate> c;
    c.reserve(group.size());
    for (std::size_t j : group) c.push_back({scores[j], j});
    std::sort(c.begin(), c.end(), [](const Candidate& a, const Candidate& b) {
      return a.score < b.score || (a.score == b.score && a.index < b.index);
    });
    return c;
  };
  const auto sorted_treated = sorted_group(out.treated);
  const auto sorted_control = sorted_group(out.control);
  for (std::size_t i = 0; i < scores.size(); ++i) {
    out.pairs[i] = nearest_sorted(treatments[i] == 1 ? sorted_control : sorted_treated, scores[i]);
  }
  return out;
}

EffectEstimate estimate_psm(const MatchingResult& matching, std::span<const double> outcomes, Estimand estimand) {
  check_lengths(matching.pairs.size(), outcomes.size(), "estimate_psm");
  double treated_sum = 0.0;
  for (std::size_t i : matching.treated) treated_sum += outcomes[i] - outcomes[matching.pairs[i]];
  if (estimand == Estimand::kAtt) {
    return {estimand, Method::kPsm, treated_sum / static_cast<double>(matching.treated.size())};
  }
  double control_sum = 0.0;
  for (std::size_t i : matching.control) control_sum += outcomes[matching.pairs[i]] - outcomes[i];
  return {estimand, Method::kPsm, (treated_sum + control_sum) / static_cast<double>(outcomes.size())};
}

Vector ipw_weights(std::span<const double> scores, std::span<const int> treatments, Estimand estimand) {
  check_lengths(scores.size(), treatments.size(), "ipw_weights");
  Vector w(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const double e = scores[i];
    if (!(e > 0.0 && e < 1.0)) throw InvalidDataError("ipw_weights: score outside (0, 1)");
    if (estimand == Estimand::kAte) {
      w[i] = treatments[i] == 1 ? 1.0 / e : 1.0 / (1.0 - e);
    } else {
      w[i] = treatments[i] == 1 ? 1.0 : e / (1.0 - e);
    }
  }
  return w;
}

EffectEstimate estimate_ipw(std::span<const double> scores, std::span<const int> treatments,
                            std::span<const double> outcomes, Estimand estimand) {
  check_lengths(scores.size(), outcomes.size(), "estimate_ipw");
  const Vector w = ipw_weights(scores, treatments, estimand);
  double wy_t = 0.0, w_t = 0.0, wy_c = 0.0, w_c = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (treatments[i] == 1) {
      wy_t += w[i] * outcomes[i];
      w_t += w[i];
    } else {
      wy_c += w[i] * outcomes[i];
      w_c += w[i];
    }
  }
  if (w_t == 0.0 || w_c == 0.0) throw DegenerateLabelsError("estimate_ipw: both groups must be non-empty");
  return {estimand, Method::kIpw, wy_t / w_t - wy_c / w_c};
}

}  // namespace dcqe
