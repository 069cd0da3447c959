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
#include <cmath>
#include <string>

#include "dcqe/error.hpp"
#include "dcqe/numerics.hpp"
#include "dcqe/simd/kernels.hpp"

namespace dcqe {
namespace {

constexpr double kMinWeight = 1e-12;
constexpr int kMaxHalvings = 50;

// log(1 + exp(x)) without overflow.
double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

// Linear predictor intercept + X * coefficients, with X stored transposed
// (one contiguous row per feature).
Vector linear_predictor(const Matrix& xt, double intercept, std::span<const double> coefficients) {
  Vector eta(xt.cols(), intercept);
  for (std::size_t j = 0; j < xt.rows(); ++j) simd::axpy(coefficients[j], xt.row(j).data(), eta.data(), eta.size());
  return eta;
}

double objective(const Matrix& xt, std::span<const int> labels, double intercept,
                 std::span<const double> coefficients, double ridge) {
  const Vector eta = linear_predictor(xt, intercept, coefficients);
  double ll = 0.0;
  for (std::size_t i = 0; i < eta.size(); ++i) ll += labels[i] * eta[i] - softplus(eta[i]);
  double penalty = 0.0;
  for (double b : coefficients) penalty += b * b;
  return ll - 0.5 * ridge * penalty;
}

void validate(const Matrix& features, std::span<const int> labels) {
  if (features.rows() != labels.size()) {
    throw DimensionError("logistic_fit: " + std::to_string(features.rows()) + " rows but " +
                         std::to_string(labels.size()) + " labels");
  }
  if (features.rows() == 0) throw InvalidDataError("logistic_fit: no observations");
  if (!features.all_finite()) throw InvalidDataError("logistic_fit: non-finite feature");
  bool has0 = false;
  bool has1 = false;
  for (int y : labels) {
    if (y != 0 && y != 1) throw InvalidDataError("logistic_fit: labels must be 0 or 1");
    (y == 1 ? has1 : has0) = true;
  }
  if (!has0 || !has1) throw DegenerateLabelsError("logistic_fit: labels contain a single class");
}

}  // namespace

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double penalized_log_likelihood(const Matrix& features, std::span<const int> labels, double intercept,
                                std::span<const double> coefficients, double ridge) {
  if (coefficients.size() != features.cols()) throw DimensionError("coefficient count mismatch");
  return objective(features.transpose(), labels, intercept, coefficients, ridge);
}

Vector cholesky_solve(const Matrix& a, std::span<const double> b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw DimensionError("cholesky_solve: shape mismatch");
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0)) throw InvalidDataError("cholesky_solve: matrix is not positive definite");
    l(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  Vector x(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) x[i] -= l(i, k) * x[k];
    x[i] /= l(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t k = i + 1; k < n; ++k) x[i] -= l(k, i) * x[k];
    x[i] /= l(i, i);
  }
  return x;
}

LogisticModel logistic_fit(const Matrix& features, std::span<const int> labels,
                           const LogisticOptions& options) {
  validate(features, labels);
  const std::size_t n = features.rows();
  const std::size_t p = features.cols();
  const Matrix xt = features.transpose();

  LogisticModel model;
  model.coefficients.assign(p, 0.0);
  double current = objective(xt, labels, model.intercept, model.coefficients, options.ridge);
  model.objective_trace.push_back(current);

  Vector residual(n);
  Vector weight(n);
  Vector gradient(p + 1);
  Matrix hessian(p + 1, p + 1);
  Vector trial(p);

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    model.iterations = iter + 1;
    const Vector eta = linear_predictor(xt, model.intercept, model.coefficients);
    for (std::size_t i = 0; i < n; ++i) {
      const double prob = sigmoid(eta[i]);
      residual[i] = labels[i] - prob;
      weight[i] = std::max(prob * (1.0 - prob), kMinWeight);
    }

    // Parameter 0 is the intercept, 1..p the coefficients.
    gradient[0] = 0.0;
    hessian(0, 0) = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      gradient[0] += residual[i];
      hessian(0, 0) += weight[i];
    }
    for (std::size_t j = 0; j < p; ++j) {
      const double* xj = xt.row(j).data();
      gradient[j + 1] = simd::dot(xj, residual.data(), n) - options.ridge * model.coefficients[j];
      const double cross = simd::dot(weight.data(), xj, n);
      hessian(0, j + 1) = cross;
      hessian(j + 1, 0) = cross;
      for (std::size_t k = 0; k <= j; ++k) {
        const double h = simd::weighted_dot(weight.data(), xj, xt.row(k).data(), n);
        hessian(j + 1, k + 1) = h;
        hessian(k + 1, j + 1) = h;
      }
      hessian(j + 1, j + 1) += options.ridge;
    }

    const Vector step = cholesky_solve(hessian, gradient);
    double scale = 1.0;
    for (int halving = 0; halving <= kMaxHalvings; ++halving, scale *= 0.5) {
      double change = std::abs(scale * step[0]);
      for (std::size_t j = 0; j < p; ++j) change = std::max(change, std::abs(scale * step[j + 1]));
      for (std::size_t j = 0; j < p; ++j) trial[j] = model.coefficients[j] + scale * step[j + 1];
      const double next = objective(xt, labels, model.intercept + scale * step[0], trial, options.ridge);
      if (next >= current) {
        model.intercept += scale * step[0];
        model.coefficients = trial;
        current = next;
        model.objective_trace.push_back(current);
        if (change < options.tolerance) {
          model.converged = true;
          return model;
        }
        break;
      }
      if (change < options.tolerance) {
        // No ascent left at a negligible step: the iterate is optimal to rounding.
        model.converged = true;
        return model;
      }
      if (halving == kMaxHalvings) return model;
    }
  }
  return model;
}

Vector logistic_predict(const LogisticModel& model, const Matrix& features) {
  if (features.cols() != model.coefficients.size()) {
    throw DimensionError("logistic_predict: model has " + std::to_string(model.coefficients.size()) +
                         " coefficients, features have " + std::to_string(features.cols()) + " columns");
  }
  Vector out = multiply(features, model.coefficients);
  for (double& v : out) v = sigmoid(model.intercept + v);
  return out;
}

}  // namespace dcqe
