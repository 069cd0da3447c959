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
#include <random>
#include <vector>

#include "dcqe/causal.hpp"
#include "dcqe/error.hpp"
#include "dcqe/metrics.hpp"
#include "doctest.h"
#include "test_util.hpp"

namespace dcqe {
namespace {

struct Groups {
  Matrix x;
  std::vector<int> z;
  std::vector<double> w;
};

Groups random_groups(std::size_t n, std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.2, 3.0);
  Groups g{testing::random_matrix(n, m, seed + 1), std::vector<int>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    g.z[i] = i % 3 == 0 ? 1 : 0;
    g.w[i] = u(rng);
    if (g.z[i]) g.x(i, 0) += 0.5;
  }
  return g;
}

// Weighted SMD written out term by term.
double smd_oracle(const Matrix& x, const std::vector<int>& z, const std::vector<double>& w, std::size_t j) {
  double m[2] = {0, 0}, v[2] = {0, 0};
  for (int g = 0; g < 2; ++g) {
    double sw = 0, sw2 = 0, swx = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (z[i] != g) continue;
      sw += w[i];
      sw2 += w[i] * w[i];
      swx += w[i] * x(i, j);
    }
    m[g] = swx / sw;
    double ss = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (z[i] == g) ss += w[i] * (x(i, j) - m[g]) * (x(i, j) - m[g]);
    }
    v[g] = sw / (sw * sw - sw2) * ss;
  }
  return (m[1] - m[0]) / std::sqrt((v[1] + v[0]) / 2.0);
}

TEST_CASE("gap examples") {
  CHECK(gap(std::vector<double>{1, 1, 1}, 1.0) == 0.0);
  CHECK(gap(std::vector<double>{2}, 1.0) == 1.0);
  CHECK(gap(std::vector<double>{0, 2}, 1.0) == 1.0);
  CHECK_THROWS_AS(gap(std::vector<double>{}, 1.0), InvalidDataError);
}

TEST_CASE("gap dominates the absolute bias") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal(1.3, 0.4);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> e(5 + t);
    for (auto& v : e) v = normal(rng);
    CHECK(gap(e, 1.0) >= std::abs(mean(e) - 1.0) - 1e-15);
  }
}

TEST_CASE("inconsistency examples and metric properties") {
  const std::vector<double> a{0.2, 0.8}, b{0.4, 0.6};
  CHECK(inconsistency(a, a) == 0.0);
  CHECK(inconsistency(a, b) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK_THROWS_AS(inconsistency(a, std::vector<double>{0.1}), DimensionError);

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> x(12), y(12), w(12);
    for (std::size_t i = 0; i < 12; ++i) {
      x[i] = u(rng);
      y[i] = u(rng);
      w[i] = u(rng);
    }
    CHECK(inconsistency(x, y) == inconsistency(y, x));
    CHECK(inconsistency(x, y) > 0.0);
    CHECK(inconsistency(x, w) <= inconsistency(x, y) + inconsistency(y, w) + 1e-15);
  }
}

TEST_CASE("smd of identical groups is zero") {
  const Matrix x{{1, 5}, {2, 6}, {1, 5}, {2, 6}};
  const BalanceReport r = smd(x, std::vector<int>{1, 1, 0, 0});
  CHECK(r.smd == Vector{0, 0});
  CHECK(r.masmd == 0.0);
}

TEST_CASE("weighted smd matches the term-by-term oracle") {
  const Groups g = random_groups(100, 4, 9);
  const BalanceReport r = smd(g.x, g.z, std::span<const double>(g.w));
  double masmd = 0;
  for (std::size_t j = 0; j < 4; ++j) {
    const double d = smd_oracle(g.x, g.z, g.w, j);
    CHECK(r.smd[j] == doctest::Approx(d).epsilon(1e-12));
    masmd = std::max(masmd, std::abs(d));
  }
  CHECK(r.masmd == doctest::Approx(masmd).epsilon(1e-12));
}

TEST_CASE("unit weights reproduce the unweighted smd") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Groups g = random_groups(30 + seed, 3, 100 + seed);
    const std::vector<double> ones(g.z.size(), 1.0);
    const BalanceReport plain = smd(g.x, g.z);
    const BalanceReport weighted = smd(g.x, g.z, std::span<const double>(ones));
    for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(plain.smd[j] - weighted.smd[j]) < 1e-10);
    // Unweighted form with the n - 1 sample variance.
    for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(plain.smd[j] - smd_oracle(g.x, g.z, ones, j)) < 1e-10);
  }
}

TEST_CASE("smd is invariant to affine rescaling of a covariate") {
  const Groups g = random_groups(60, 2, 11);
  Matrix scaled = g.x;
  for (std::size_t i = 0; i < scaled.rows(); ++i) scaled(i, 1) = 3.5 * scaled(i, 1) - 7.0;
  const BalanceReport a = smd(g.x, g.z, std::span<const double>(g.w));
  const BalanceReport b = smd(scaled, g.z, std::span<const double>(g.w));
  CHECK(std::abs(a.smd[1] - b.smd[1]) < 1e-10);
  Matrix flipped = g.x;
  for (std::size_t i = 0; i < flipped.rows(); ++i) flipped(i, 0) = -2.0 * flipped(i, 0) + 1.0;
  CHECK(std::abs(smd(flipped, g.z).smd[0] + smd(g.x, g.z).smd[0]) < 1e-10);
}

TEST_CASE("smd degenerate cases") {
  const Matrix constant{{1}, {1}, {2}, {2}};
  CHECK_THROWS_AS(smd(constant, std::vector<int>{1, 1, 0, 0}), ImbalanceError);
  const Matrix same{{3}, {3}, {3}};
  CHECK(smd(same, std::vector<int>{1, 0, 0}).masmd == 0.0);
  CHECK_THROWS_AS(smd(same, std::vector<int>{1, 1, 1}), DegenerateLabelsError);
  CHECK_THROWS_AS(smd(same, std::vector<int>{1, 0, 0}, std::span<const double>(std::vector<double>{1, 0, 1})),
                  InvalidDataError);
}

TEST_CASE("matched samples for balance") {
  // Subjects 0, 1 treated; 2, 3 controls.
  const std::vector<double> s{0.3, 0.7, 0.35, 0.9};
  const std::vector<int> z{1, 1, 0, 0};
  const MatchingResult m = match_pairs(s, z);
  const MatchedSample att = matched_sample(m, Estimand::kAtt);
  CHECK(att.rows == std::vector<std::size_t>{0, 2, 1, 3});
  CHECK(att.treatments == Treatments{1, 0, 1, 0});
  const MatchedSample ate = matched_sample(m, Estimand::kAte);
  CHECK(ate.rows == std::vector<std::size_t>{0, 2, 1, 3, 2, 0, 3, 1});
  CHECK(ate.treatments == Treatments{1, 0, 1, 0, 0, 1, 0, 1});

  const Matrix x{{1.0}, {2.0}, {1.5}, {4.0}};
  const BalanceReport b = psm_balance(x, m, Estimand::kAtt);
  const Matrix matched{{1.0}, {1.5}, {2.0}, {4.0}};
  CHECK(b.smd == smd(matched, att.treatments).smd);
}

TEST_CASE("ipw balance uses the estimand weights") {
  const Groups g = random_groups(50, 2, 12);
  std::vector<double> e(50);
  for (std::size_t i = 0; i < 50; ++i) e[i] = 0.2 + 0.6 * g.w[i] / 3.0;
  for (Estimand est : {Estimand::kAte, Estimand::kAtt}) {
    const Vector w = ipw_weights(e, g.z, est);
    const std::vector<double> wv(w.begin(), w.end());
    const BalanceReport r = ipw_balance(g.x, g.z, e, est);
    for (std::size_t j = 0; j < 2; ++j) CHECK(r.smd[j] == doctest::Approx(smd_oracle(g.x, g.z, wv, j)).epsilon(1e-12));
  }
}

TEST_CASE("summary statistics") {
  CHECK(mean(std::vector<double>{1, 2, 3, 6}) == 3.0);
  CHECK(sample_sd(std::vector<double>{1, 3}) == doctest::Approx(std::sqrt(2.0)));
  CHECK(sample_sd(std::vector<double>{5}) == 0.0);
}

}  // namespace
}  // namespace dcqe
