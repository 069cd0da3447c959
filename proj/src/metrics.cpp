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

#include "dcqe/metrics.hpp"

#include <cmath>
#include <string>

#include "dcqe/error.hpp"

namespace dcqe {
namespace {

struct GroupMoments {
  double mean = 0.0;
  double variance = 0.0;
};

GroupMoments moments(const Matrix& x, std::size_t col, std::span<const std::size_t> rows,
                     std::optional<std::span<const double>> weights) {
  double sw = 0.0, sw2 = 0.0, swx = 0.0;
  for (std::size_t i : rows) {
    const double w = weights ? (*weights)[i] : 1.0;
    sw += w;
    sw2 += w * w;
    swx += w * x(i, col);
  }
  GroupMoments g;
  g.mean = swx / sw;
  double ss = 0.0;
  for (std::size_t i : rows) {
    const double w = weights ? (*weights)[i] : 1.0;
    const double d = x(i, col) - g.mean;
    ss += w * d * d;
  }
  const double denom = sw * sw - sw2;
  g.variance = denom > 0.0 ? sw / denom * ss : 0.0;
  return g;
}

}  // namespace

double gap(std::span<const double> estimates, double benchmark) {
  if (estimates.empty()) throw InvalidDataError("gap: no estimates");
  double ss = 0.0;
  for (double t : estimates) ss += (t - benchmark) * (t - benchmark);
  return std::sqrt(ss / static_cast<double>(estimates.size()));
}

double inconsistency(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw DimensionError("inconsistency: lengths " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
  }
  if (a.empty()) throw InvalidDataError("inconsistency: empty score vectors");
  double ss = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) ss += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(ss / static_cast<double>(a.size()));
}

BalanceReport smd(const Matrix& covariates, std::span<const int> treatments,
                  std::optional<std::span<const double>> weights) {
  if (covariates.rows() != treatments.size()) throw DimensionError("smd: covariate rows and treatments differ");
  if (weights && weights->size() != treatments.size()) throw DimensionError("smd: weight count mismatch");
  std::vector<std::size_t> treated, control;
  for (std::size_t i = 0; i < treatments.size(); ++i) {
    if (weights && !((*weights)[i] > 0.0)) throw InvalidDataError("smd: weights must be positive");
    (treatments[i] == 1 ? treated : control).push_back(i);
  }
  if (treated.empty() || control.empty()) throw DegenerateLabelsError("smd: both groups must be non-empty");

  BalanceReport report{Vector(covariates.cols()), 0.0};
  for (std::size_t j = 0; j < covariates.cols(); ++j) {
    const GroupMoments t = moments(covariates, j, treated, weights);
    const GroupMoments c = moments(covariates, j, control, weights);
    const double pooled = std::sqrt((t.variance + c.variance) / 2.0);
    double d = 0.0;
    if (pooled > 0.0) {
      d = (t.mean - c.mean) / pooled;
    } else if (t.mean != c.mean) {
      throw ImbalanceError("smd: covariate " + std::to_string(j) +
                           " is constant within groups but differs between them");
    }
    report.smd[j] = d;
    report.masmd = std::max(report.masmd, std::abs(d));
  }
  return report;
}

MatchedSample matched_sample(const MatchingResult& matching, Estimand estimand) {
  MatchedSample out;
  auto add_pair = [&](std::size_t i, int zi) {
    out.rows.push_back(i);
    out.treatments.push_back(zi);
    out.rows.push_back(matching.pairs[i]);
    out.treatments.push_back(1 - zi);
  };
  for (std::size_t i : matching.treated) add_pair(i, 1);
  if (estimand == Estimand::kAte) {
    for (std::size_t i : matching.control) add_pair(i, 0);
  }
  return out;
}

BalanceReport psm_balance(const Matrix& covariates, const MatchingResult& matching, Estimand estimand) {
  const MatchedSample sample = matched_sample(matching, estimand);
  return smd(covariates.select_rows(sample.rows), sample.treatments);
}

BalanceReport ipw_balance(const Matrix& covariates, std::span<const int> treatments,
                          std::span<const double> scores, Estimand estimand) {
  const Vector w = ipw_weights(scores, treatments, estimand);
  return smd(covariates, treatments, std::span<const double>(w));
}

double mean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

double sample_sd(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const double m = mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

}  // namespace dcqe
