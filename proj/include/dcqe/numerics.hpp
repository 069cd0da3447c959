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

#ifndef DCQE_NUMERICS_HPP_
#define DCQE_NUMERICS_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "dcqe/matrix.hpp"

namespace dcqe {

// Standard deviations below this are treated as a constant column and
// replaced by 1.0.
inline constexpr double kDegenerateStddev = 1e-12;
// Singular values at or below this fraction of the largest one are zero.
inline constexpr double kRelativeRankTolerance = 1e-12;

struct StandardizationParams {
  Vector means;
  Vector stddevs;

  std::size_t width() const { return means.size(); }
};

StandardizationParams standardize_fit(const Matrix& data);
Matrix standardize_apply(const StandardizationParams& params, const Matrix& data);

struct PcaModel {
  StandardizationParams params;
  Matrix components;  // input width x target_dim, orthonormal columns
  Vector explained_variance;

  std::size_t input_dim() const { return components.rows(); }
  std::size_t output_dim() const { return components.cols(); }
};

/// Principal components of the standardized data, computed from the SVD of
/// the standardized matrix. Each component is signed so that its entry of
/// largest magnitude is non-negative (first such entry on ties).
PcaModel pca_fit(const Matrix& data, std::size_t target_dim);
Matrix pca_transform(const PcaModel& model, const Matrix& data);

/// Thin SVD with every singular value retained, zeros included.
/// u is rows x k, v is cols x k with k = min(rows, cols); sigma is sorted in
/// non-increasing order. The factor on the short side (v for tall input, u
/// for wide input) is square and orthogonal; on the long side, vectors
/// belonging to zero singular values are left as zero columns.
struct FullSvd {
  Matrix u;
  Vector sigma;
  Matrix v;
};
FullSvd svd_thin(const Matrix& data);

struct TruncatedSvd {
  Matrix u;
  Vector sigma;
  Matrix v;

  std::size_t rank() const { return sigma.size(); }
};

/// Best rank-`rank` approximation. The returned rank drops singular values at
/// or below kRelativeRankTolerance * sigma_max. Sign convention: the largest
/// magnitude entry of each left singular vector is non-negative.
TruncatedSvd svd_truncated(const Matrix& data, std::size_t rank);

Matrix pseudoinverse(const Matrix& data);

Matrix reconstruct(const TruncatedSvd& svd);

struct LogisticOptions {
  double ridge = 1e-6;
  double tolerance = 1e-8;
  int max_iterations = 100;
};

struct LogisticModel {
  double intercept = 0.0;
  Vector coefficients;
  bool converged = false;
  int iterations = 0;
  // Penalized log-likelihood before the first step and after every accepted one.
  std::vector<double> objective_trace;
};

/// Ridge-penalized logistic regression (intercept unpenalized) fitted by
/// Newton/IRLS with step halving, so the penalized log-likelihood never
/// decreases along the trace. If max_iterations is hit the last iterate is
/// returned with converged = false.
LogisticModel logistic_fit(const Matrix& features, std::span<const int> labels,
                           const LogisticOptions& options = {});
Vector logistic_predict(const LogisticModel& model, const Matrix& features);

double penalized_log_likelihood(const Matrix& features, std::span<const int> labels,
                                double intercept, std::span<const double> coefficients,
                                double ridge);

double sigmoid(double x);

// Solves the symmetric positive definite system a * x = b in place of b.
// Throws InvalidDataError if a is not numerically positive definite.
Vector cholesky_solve(const Matrix& a, std::span<const double> b);

}  // namespace dcqe

#endif  // DCQE_NUMERICS_HPP_
