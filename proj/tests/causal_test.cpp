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

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "dcqe/causal.hpp"
#include "dcqe/error.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "test_util.hpp"

namespace dcqe {
namespace {

using testing::brute_force_pairs;

struct Instance {
  std::vector<double> scores;
  std::vector<int> treatments;
  std::vector<double> outcomes;
};

// Scores on a coarse grid so that ties are frequent.
Instance random_instance(std::size_t n, std::uint64_t seed, int grid = 16) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> level(1, grid - 1);
  std::bernoulli_distribution coin(0.4);
  std::normal_distribution<double> normal(0.0, 1.0);
  Instance inst;
  for (std::size_t i = 0; i < n; ++i) {
    inst.scores.push_back(static_cast<double>(level(rng)) / grid);
    inst.treatments.push_back(coin(rng) ? 1 : 0);
    inst.outcomes.push_back(normal(rng));
  }
  inst.treatments[0] = 1;
  inst.treatments[n - 1] = 0;
  return inst;
}

TEST_CASE("matching enumeration example") {
  // Subject 0 treated (0.6); subjects 1, 2 controls (0.5, 0.9).
  const std::vector<double> s{0.6, 0.5, 0.9};
  const std::vector<int> z{1, 0, 0};
  for (auto strategy : {MatchStrategy::kExhaustive, MatchStrategy::kSorted}) {
    const MatchingResult m = match_pairs(s, z, strategy);
    CHECK(m.pairs == std::vector<std::size_t>{1, 0, 0});
    CHECK(m.treated == std::vector<std::size_t>{0});
    CHECK(m.control == std::vector<std::size_t>{1, 2});
  }
}

TEST_CASE("equal scores match the smallest opposite index") {
  const std::vector<double> s(6, 0.3);
  const std::vector<int> z{0, 1, 0, 1, 1, 0};
  for (auto strategy : {MatchStrategy::kExhaustive, MatchStrategy::kSorted}) {
    const MatchingResult m = match_pairs(s, z, strategy);
    CHECK(m.pairs == std::vector<std::size_t>{1, 0, 1, 0, 0, 1});
  }
}

TEST_CASE("both matching strategies equal the brute force oracle") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t n = 2 + seed % 120;
    const Instance inst = random_instance(n, seed, seed % 2 ? 8 : 1000);
    const auto expected = brute_force_pairs(inst.scores, inst.treatments);
    CHECK(match_pairs(inst.scores, inst.treatments, MatchStrategy::kExhaustive).pairs == expected);
    CHECK(match_pairs(inst.scores, inst.treatments, MatchStrategy::kSorted).pairs == expected);
  }
}

TEST_CASE("matching is invariant to increasing affine maps of the scores") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Instance inst = random_instance(60, seed + 1000, 32);
    std::vector<double> mapped;
    for (double s : inst.scores) mapped.push_back(4.0 * s - 0.5);
    CHECK(match_pairs(mapped, inst.treatments).pairs == match_pairs(inst.scores, inst.treatments).pairs);
  }
}

TEST_CASE("psm examples") {
  const std::vector<double> s{0.5, 0.5};
  const std::vector<int> z{1, 0};
  const std::vector<double> y{5, 3};
  const MatchingResult m = match_pairs(s, z);
  CHECK(estimate_psm(m, y, Estimand::kAtt).value == 2.0);
  CHECK(estimate_psm(m, y, Estimand::kAte).value == 2.0);

  const Instance inst = random_instance(30, 5);
  const std::vector<double> flat(30, 1.25);
  const MatchingResult mm = match_pairs(inst.scores, inst.treatments);
  CHECK(estimate_psm(mm, flat, Estimand::kAte).value == 0.0);
  CHECK(estimate_psm(mm, flat, Estimand::kAtt).value == 0.0);
}

TEST_CASE("psm estimates follow the matched-difference formulas") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = random_instance(50, 300 + seed, 100);
    const auto pairs = brute_force_pairs(inst.scores, inst.treatments);
    double ate = 0.0, att = 0.0;
    std::size_t nt = 0;
    for (std::size_t i = 0; i < 50; ++i) {
      const double diff = inst.outcomes[i] - inst.outcomes[pairs[i]];
      ate += inst.treatments[i] == 1 ? diff : -diff;
      if (inst.treatments[i] == 1) {
        att += diff;
        ++nt;
      }
    }
    const MatchingResult m = match_pairs(inst.scores, inst.treatments);
    CHECK(estimate_psm(m, inst.outcomes, Estimand::kAte).value == doctest::Approx(ate / 50.0).epsilon(1e-13));
    CHECK(estimate_psm(m, inst.outcomes, Estimand::kAtt).value == doctest::Approx(att / nt).epsilon(1e-13));
  }
}

TEST_CASE("psm with exact twins returns the common difference") {
  std::vector<double> s, y;
  std::vector<int> z;
  for (int i = 0; i < 10; ++i) {
    const double score = 0.05 + 0.09 * i;
    const double base = std::sin(i);
    s.insert(s.end(), {score, score});
    z.insert(z.end(), {1, 0});
    y.insert(y.end(), {base + 0.75, base});
  }
  const MatchingResult m = match_pairs(s, z);
  CHECK(estimate_psm(m, y, Estimand::kAte).value == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(estimate_psm(m, y, Estimand::kAtt).value == doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("ipw examples") {
  CHECK(estimate_ipw(std::vector<double>{0.5, 0.5}, std::vector<int>{1, 0}, std::vector<double>{3, 1}, Estimand::kAte)
            .value == 2.0);

  const std::vector<int> z{1, 1, 0, 0};
  const std::vector<double> y{2, 4, 1, 3};
  const std::vector<double> e{0.8, 0.4, 0.5, 0.2};
  // Weighted group means with ATE weights 1/e and 1/(1-e).
  const double t_ate = (2 / 0.8 + 4 / 0.4) / (1 / 0.8 + 1 / 0.4);
  const double c_ate = (1 / 0.5 + 3 / 0.8) / (1 / 0.5 + 1 / 0.8);
  CHECK(estimate_ipw(e, z, y, Estimand::kAte).value == doctest::Approx(t_ate - c_ate).epsilon(1e-14));
  // ATT weights 1 and e/(1-e).
  const double c_att = (1 * 1.0 + 3 * 0.25) / (1.0 + 0.25);
  CHECK(estimate_ipw(e, z, y, Estimand::kAtt).value == doctest::Approx(3.0 - c_att).epsilon(1e-14));
}

TEST_CASE("ipw with constant scores is a difference of means") {
  const Instance inst = random_instance(40, 77);
  double st = 0, sc = 0;
  int nt = 0, nc = 0;
  for (std::size_t i = 0; i < 40; ++i) {
    (inst.treatments[i] ? st : sc) += inst.outcomes[i];
    (inst.treatments[i] ? nt : nc) += 1;
  }
  const std::vector<double> e(40, 0.37);
  for (Estimand est : {Estimand::kAte, Estimand::kAtt}) {
    CHECK(estimate_ipw(e, inst.treatments, inst.outcomes, est).value ==
          doctest::Approx(st / nt - sc / nc).epsilon(1e-13));
  }
  CHECK_THROWS_AS(estimate_ipw(std::vector<double>{1.0, 0.5}, std::vector<int>{1, 0}, std::vector<double>{1, 1},
                               Estimand::kAte),
                  InvalidDataError);
}

TEST_CASE("propensity estimation") {
  const Matrix zero(10, 2, 0.0);
  const std::vector<int> z{1, 1, 1, 0, 0, 0, 0, 0, 0, 0};
  const PropensityScores flat = estimate_propensity(zero, z);
  for (double p : flat.values) CHECK(p == doctest::Approx(0.3).epsilon(1e-8));

  Matrix sep(6, 1);
  for (std::size_t i = 0; i < 6; ++i) sep(i, 0) = static_cast<double>(i) * 100.0;
  const PropensityScores clipped = estimate_propensity(sep, std::vector<int>{0, 0, 0, 1, 1, 1});
  for (double p : clipped.values) {
    CHECK(p >= kPropensityClip);
    CHECK(p <= 1.0 - kPropensityClip);
  }
  CHECK(clip_propensities(std::vector<double>{0.0, 0.5, 1.0}) ==
        Vector{kPropensityClip, 0.5, 1.0 - kPropensityClip});
}

TEST_CASE("propensity scores equal the fitted logistic model on 200 subjects") {
  const Matrix x = testing::random_matrix(200, 3, 21);
  std::vector<int> z(200);
  for (std::size_t i = 0; i < 200; ++i) z[i] = x(i, 0) - x(i, 2) + std::cos(static_cast<double>(i)) > 0 ? 1 : 0;
  const PropensityScores scores = estimate_propensity(x, z);
  const LogisticModel model = logistic_fit(x, z);
  for (std::size_t i = 0; i < 200; ++i) {
    double eta = model.intercept;
    for (std::size_t j = 0; j < 3; ++j) eta += model.coefficients[j] * x(i, j);
    CHECK(scores.values[i] == doctest::Approx(1.0 / (1.0 + std::exp(-eta))).epsilon(1e-12));
  }
}

}  // namespace
}  // namespace dcqe
