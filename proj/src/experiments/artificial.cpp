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
#include <string>

#include "dcqe/error.hpp"
#include "dcqe/experiments.hpp"
#include "dcqe/random.hpp"

namespace dcqe {
namespace {

// Lower Cholesky factor of the equicorrelation matrix (1 - rho) I + rho 11^T.
Matrix equicorrelation_cholesky(std::size_t m, double rho) {
  Matrix s(m, m, rho);
  for (std::size_t j = 0; j < m; ++j) s(j, j) = 1.0;
  Matrix l(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    double d = s(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0)) throw ConfigError("covariance matrix is not positive definite");
    l(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < m; ++i) {
      double v = s(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= l(i, k) * l(j, k);
      l(i, j) = v / l(j, j);
    }
  }
  return l;
}

}  // namespace

ArtificialData generate_artificial(const ArtificialDataConfig& config) {
  const std::size_t n = config.n;
  const std::size_t m = config.m;
  if (n < 2 || m < 1) throw ConfigError("artificial data needs n >= 2 and m >= 1");
  const double lower = m > 1 ? -1.0 / static_cast<double>(m - 1) : -1.0;
  if (!(config.rho > lower && config.rho < 1.0)) {
    throw ConfigError("correlation " + std::to_string(config.rho) + " must lie in (" + std::to_string(lower) +
                      ", 1)");
  }
  if (!(config.noise_sd > 0.0)) throw ConfigError("noise standard deviation must be positive");

  const Matrix chol = equicorrelation_cholesky(m, config.rho);
  Rng rng = make_rng(config.seed, Stream::kData);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Matrix x(n, m);
  Treatments z(n);
  Vector y(n);
  Vector propensity(n);
  Vector g(m);
  for (std::size_t i = 0; i < n; ++i) {
    for (double& v : g) v = normal(rng);
    double total = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      double v = 0.0;
      for (std::size_t k = 0; k <= j; ++k) v += chol(j, k) * g[k];
      x(i, j) = v;
      total += v;
    }
    propensity[i] = 1.0 / (1.0 + std::exp(-total / static_cast<double>(m)));
    z[i] = unit(rng) < propensity[i] ? 1 : 0;
    y[i] = total + z[i] + config.noise_sd * normal(rng);
  }
  return ArtificialData{make_dataset(std::move(x), std::move(z), std::move(y)), std::move(propensity)};
}

}  // namespace dcqe
