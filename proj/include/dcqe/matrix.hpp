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

#ifndef DCQE_MATRIX_HPP_
#define DCQE_MATRIX_HPP_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace dcqe {

using Vector = std::vector<double>;

// Dense row-major matrix of doubles. An empty (0 x 0) matrix is allowed as a
// placeholder value; operations that need data validate shapes themselves.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> values);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return values_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return values_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {values_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {values_.data() + i * cols_, cols_}; }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  Vector column(std::size_t j) const;

  Matrix transpose() const;

  // Rows [row_begin, row_begin + nrows) and columns [col_begin, col_begin + ncols).
  Matrix block(std::size_t row_begin, std::size_t col_begin, std::size_t nrows,
               std::size_t ncols) const;

  Matrix select_rows(std::span<const std::size_t> indices) const;

  bool all_finite() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

Matrix multiply(const Matrix& a, const Matrix& b);
// a^T * b without materializing the transpose of a.
Matrix multiply_at_b(const Matrix& a, const Matrix& b);
Matrix subtract(const Matrix& a, const Matrix& b);
Vector multiply(const Matrix& a, std::span<const double> x);

Matrix hconcat(std::span<const Matrix> blocks);
Matrix vconcat(std::span<const Matrix> blocks);

double frobenius_norm(const Matrix& a);
// Largest absolute entry of a - b; shapes must match.
double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace dcqe

#endif  // DCQE_MATRIX_HPP_
