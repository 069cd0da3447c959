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

#include "dcqe/error.hpp"
#include "dcqe/numerics.hpp"

namespace dcqe {

PcaModel pca_fit(const Matrix& data, std::size_t target_dim) {
  if (data.rows() < 2) throw InvalidDataError("pca_fit: need at least two rows");
  if (target_dim < 1 || target_dim > data.cols()) {
    throw DimensionError("pca_fit: target dimension " + std::to_string(target_dim) +
                         " outside [1, " + std::to_string(data.cols()) + "]");
  }
  StandardizationParams params = standardize_fit(data);
  Matrix standardized = standardize_apply(params, data);

  // Zero rows leave the right singular vectors unchanged and guarantee a
  // full square V when there are fewer subjects than covariates.
  if (standardized.rows() < standardized.cols()) {
    Matrix padded(standardized.cols(), standardized.cols());
    for (std::size_t i = 0; i < standardized.rows(); ++i) {
      std::copy(standardized.row(i).begin(), standardized.row(i).end(), padded.row(i).begin());
    }
    standardized = std::move(padded);
  }
  const FullSvd svd = svd_thin(standardized);

  const std::size_t m = data.cols();
  const double dof = static_cast<double>(data.rows() - 1);
  PcaModel model{std::move(params), Matrix(m, target_dim), Vector(target_dim)};
  for (std::size_t k = 0; k < target_dim; ++k) {
    std::size_t pivot = 0;
    for (std::size_t i = 1; i < m; ++i) {
      if (std::abs(svd.v(i, k)) > std::abs(svd.v(pivot, k))) pivot = i;
    }
    const double sign = svd.v(pivot, k) < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < m; ++i) model.components(i, k) = sign * svd.v(i, k);
    model.explained_variance[k] = svd.sigma[k] * svd.sigma[k] / dof;
  }
  return model;
}

Matrix pca_transform(const PcaModel& model, const Matrix& data) {
  if (data.cols() != model.input_dim()) {
    throw DimensionError("pca_transform: model expects " + std::to_string(model.input_dim()) +
                         " columns, got " + std::to_string(data.cols()));
  }
  return multiply(standardize_apply(model.params, data), model.components);
}

}  // namespace dcqe
