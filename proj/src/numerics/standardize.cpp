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

#include "dcqe/error.hpp"
#include "dcqe/numerics.hpp"

namespace dcqe {

StandardizationParams standardize_fit(const Matrix& data) {
  if (data.rows() == 0 || data.cols() == 0) throw InvalidDataError("standardize_fit: empty matrix");
  if (!data.all_finite()) throw InvalidDataError("standardize_fit: non-finite entry");

  const std::size_t n = data.rows();
  StandardizationParams params{Vector(data.cols(), 0.0), Vector(data.cols(), 1.0)};
  for (std::size_t j = 0; j < data.cols(); ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += data(i, j);
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = data(i, j) - mean;
      ss += d * d;
    }
    const double sd = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
    params.means[j] = mean;
    params.stddevs[j] = sd < kDegenerateStddev ? 1.0 : sd;
  }
  return params;
}

Matrix standardize_apply(const StandardizationParams& params, const Matrix& data) {
  if (data.cols() != params.width()) {
    throw DimensionError("standardize: expected " + std::to_string(params.width()) +
                         " columns, got " + std::to_string(data.cols()));
  }
  Matrix out = data;
  for (std::size_t i = 0; i < out.rows(); ++i) {
    auto row = out.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = (row[j] - params.means[j]) / params.stddevs[j];
  }
  return out;
}

}  // namespace dcqe
