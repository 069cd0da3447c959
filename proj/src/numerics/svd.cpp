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

// One-sided (Hestenes) Jacobi SVD. Columns of the input are orthogonalized by
// plane rotations until every pair is numerically orthogonal; the column norms
// are then the singular values. Works on the transpose so that every column
// is a contiguous row for the SIMD dot/rotate kernels.

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dcqe/error.hpp"
#include "dcqe/numerics.hpp"
#include "dcqe/simd/kernels.hpp"

namespace dcqe {
namespace {

constexpr double kOrthogonalityTolerance = 1e-15;
constexpr int kMaxSweeps = 80;

// Orthogonalizes the rows of `work` (each row is one column of the original
// matrix), applying the same rotations to the rows of `basis`.
void jacobi_sweeps(Matrix& work, Matrix& basis) {
  const std::size_t ncols = work.rows();
  const std::size_t len = work.cols();
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < ncols; ++p) {
      for (std::size_t q = p + 1; q < ncols; ++q) {
        double* wp = work.row(p).data();
        double* wq = work.row(q).data();
        const double alpha = simd::dot(wp, wp, len);
        const double beta = simd::dot(wq, wq, len);
        const double gamma = simd::dot(wp, wq, len);
        if (alpha == 0.0 || beta == 0.0) continue;
        if (std::abs(gamma) <= kOrthogonalityTolerance * std::sqrt(alpha * beta)) continue;

        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        simd::rotate(wp, wq, len, c, s);
        simd::rotate(basis.row(p).data(), basis.row(q).data(), basis.cols(), c, s);
        rotated = true;
      }
    }
    if (!rotated) return;
  }
}

FullSvd svd_tall(const Matrix& data) {
  const std::size_t m = data.rows();
  const std::size_t n = data.cols();
  Matrix work = data.transpose();       // n x m, row j = column j
  Matrix vt = Matrix::identity(n);      // row j = right singular vector j
  jacobi_sweeps(work, vt);

  Vector norms(n);
  for (std::size_t j = 0; j < n; ++j) norms[j] = std::sqrt(simd::dot(work.row(j).data(), work.row(j).data(), m));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return norms[a] > norms[b]; });

  const double smax = n == 0 ? 0.0 : norms[order.front()];
  FullSvd out{Matrix(m, n), Vector(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    out.sigma[k] = norms[j];
    for (std::size_t i = 0; i < n; ++i) out.v(i, k) = vt(j, i);
    if (norms[j] > 0.0 && norms[j] > kRelativeRankTolerance * smax) {
      for (std::size_t i = 0; i < m; ++i) out.u(i, k) = work(j, i) / norms[j];
    }
  }
  return out;
}

void check_finite(const Matrix& data, const char* what) {
  if (data.rows() == 0 || data.cols() == 0) throw InvalidDataError(std::string(what) + ": empty matrix");
  if (!data.all_finite()) throw InvalidDataError(std::string(what) + ": non-finite entry");
}

}  // namespace

FullSvd svd_thin(const Matrix& data) {
  check_finite(data, "svd");
  if (data.rows() >= data.cols()) return svd_tall(data);
  FullSvd t = svd_tall(data.transpose());
  return FullSvd{std::move(t.v), std::move(t.sigma), std::move(t.u)};
}

TruncatedSvd svd_truncated(const Matrix& data, std::size_t rank) {
  check_finite(data, "svd_truncated");
  const std::size_t kmax = std::min(data.rows(), data.cols());
  if (rank < 1 || rank > kmax) {
    throw DimensionError("svd_truncated: rank " + std::to_string(rank) + " outside [1, " +
                         std::to_string(kmax) + "]");
  }
  const FullSvd full = svd_thin(data);
  const double smax = full.sigma.front();
  std::size_t kept = 0;
  while (kept < rank && full.sigma[kept] > 0.0 && full.sigma[kept] > kRelativeRankTolerance * smax) ++kept;

  TruncatedSvd out{Matrix(data.rows(), kept), Vector(full.sigma.begin(), full.sigma.begin() + kept),
                   Matrix(data.cols(), kept)};
  for (std::size_t k = 0; k < kept; ++k) {
    std::size_t pivot = 0;
    for (std::size_t i = 1; i < data.rows(); ++i) {
      if (std::abs(full.u(i, k)) > std::abs(full.u(pivot, k))) pivot = i;
    }
    const double sign = full.u(pivot, k) < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < data.rows(); ++i) out.u(i, k) = sign * full.u(i, k);
    for (std::size_t i = 0; i < data.cols(); ++i) out.v(i, k) = sign * full.v(i, k);
  }
  return out;
}

Matrix reconstruct(const TruncatedSvd& svd) {
  Matrix scaled = svd.u;
  for (std::size_t i = 0; i < scaled.rows(); ++i) {
    for (std::size_t k = 0; k < svd.rank(); ++k) scaled(i, k) *= svd.sigma[k];
  }
  return multiply(scaled, svd.v.transpose());
}

Matrix pseudoinverse(const Matrix& data) {
  check_finite(data, "pseudoinverse");
  const FullSvd full = svd_thin(data);
  const double smax = full.sigma.front();
  // A+ = V diag(1/sigma) U^T over the numerically nonzero singular values.
  Matrix v_scaled(data.cols(), full.sigma.size());
  for (std::size_t k = 0; k < full.sigma.size(); ++k) {
    const double s = full.sigma[k];
    if (!(s > 0.0 && s > kRelativeRankTolerance * smax)) continue;
    for (std::size_t i = 0; i < data.cols(); ++i) v_scaled(i, k) = full.v(i, k) / s;
  }
  return multiply(v_scaled, full.u.transpose());
}

}  // namespace dcqe
