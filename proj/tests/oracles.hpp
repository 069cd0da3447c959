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

#ifndef DCQE_TESTS_ORACLES_HPP_
#define DCQE_TESTS_ORACLES_HPP_

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "dcqe/matrix.hpp"

// Slow, direct reference implementations used to check the library.
namespace dcqe::testing {

// Gradient ascent on sum_i [y_i eta_i - log(1 + e^eta_i)] - ridge/2 |b|^2
// (intercept unpenalized), run until the gradient is tiny. The step is the
// inverse of a Lipschitz bound of the gradient.
inline std::pair<double, Vector> gradient_ascent_logistic(const Matrix& x, const std::vector<int>& y, double ridge) {
  const std::size_t n = x.rows(), p = x.cols();
  double fro = 0.0;
  for (double v : x.values()) fro += v * v;
  const double step = 1.0 / (0.25 * (static_cast<double>(n) + fro) + ridge);
  double b0 = 0.0;
  Vector b(p, 0.0);
  for (int iter = 0; iter < 2000000; ++iter) {
    double g0 = 0.0;
    Vector g(p, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double eta = b0;
      for (std::size_t j = 0; j < p; ++j) eta += x(i, j) * b[j];
      const double r = y[i] - 1.0 / (1.0 + std::exp(-eta));
      g0 += r;
      for (std::size_t j = 0; j < p; ++j) g[j] += r * x(i, j);
    }
    double norm = g0 * g0;
    for (std::size_t j = 0; j < p; ++j) {
      g[j] -= ridge * b[j];
      norm += g[j] * g[j];
    }
    if (std::sqrt(norm) < 1e-11) break;
    b0 += step * g0;
    for (std::size_t j = 0; j < p; ++j) b[j] += step * g[j];
  }
  return {b0, b};
}

// For every subject, the first opposite-group subject (in index order) at
// the smallest score distance.
inline std::vector<std::size_t> brute_force_pairs(const std::vector<double>& s, const std::vector<int>& z) {
  std::vector<std::size_t> pairs(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (z[j] == z[i]) continue;
      const double d = std::abs(s[i] - s[j]);
      if (d < best) {
        best = d;
        pairs[i] = j;
      }
    }
  }
  return pairs;
}

// Largest violation of the four Penrose conditions, relative to |A| |P|.
inline double penrose_violation(const Matrix& a, const Matrix& p) {
  const Matrix ap = multiply(a, p);
  const Matrix pa = multiply(p, a);
  const double scale = std::max(1.0, frobenius_norm(a) * frobenius_norm(p));
  double worst = max_abs_diff(multiply(ap, a), a);
  worst = std::max(worst, max_abs_diff(multiply(pa, p), p));
  worst = std::max(worst, max_abs_diff(ap, ap.transpose()));
  worst = std::max(worst, max_abs_diff(pa, pa.transpose()));
  return worst / scale;
}

}  // namespace dcqe::testing

#endif  // DCQE_TESTS_ORACLES_HPP_
