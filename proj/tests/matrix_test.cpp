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
#include <stdexcept>
#include <vector>

#include "dcqe/error.hpp"
#include "dcqe/matrix.hpp"
#include "doctest.h"
#include "test_util.hpp"

namespace dcqe {
namespace {

TEST_CASE("matrix construction and element access") {
  Matrix a{{1, 2, 3}, {4, 5, 6}};
  CHECK(a.rows() == 2);
  CHECK(a.cols() == 3);
  CHECK(a(1, 2) == 6);
  CHECK(a.column(1) == Vector{2, 5});
  CHECK(a.row(0)[2] == 3);
  CHECK_THROWS_AS(Matrix(2, 2, std::vector<double>{1, 2, 3}), DimensionError);
  CHECK_THROWS_AS((Matrix{{1, 2}, {3}}), DimensionError);
  CHECK(Matrix::identity(2) == Matrix{{1, 0}, {0, 1}});
  const Vector d{2, 3};
  CHECK(Matrix::diagonal(d) == Matrix{{2, 0}, {0, 3}});
}

TEST_CASE("transpose, block and row selection") {
  const Matrix a{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
  CHECK(a.transpose() == Matrix{{1, 4, 7}, {2, 5, 8}, {3, 6, 9}});
  CHECK(a.block(1, 1, 2, 2) == Matrix{{5, 6}, {8, 9}});
  CHECK_THROWS_AS(a.block(2, 0, 2, 1), DimensionError);
  const std::vector<std::size_t> idx{2, 0, 2};
  CHECK(a.select_rows(idx) == Matrix{{7, 8, 9}, {1, 2, 3}, {7, 8, 9}});
}

TEST_CASE("products agree with a naive triple loop") {
  const Matrix a = testing::random_matrix(7, 5, 1);
  const Matrix b = testing::random_matrix(5, 9, 2);
  const Matrix c = multiply(a, b);
  Matrix naive(7, 9);
  for (std::size_t i = 0; i < 7; ++i) {
    for (std::size_t j = 0; j < 9; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < 5; ++k) s += a(i, k) * b(k, j);
      naive(i, j) = s;
    }
  }
  CHECK(max_abs_diff(c, naive) < 1e-12);
  CHECK(max_abs_diff(multiply_at_b(a.transpose(), b), naive) < 1e-12);

  const Vector x{1, -1, 2, 0.5, 3};
  const Vector y = multiply(a, x);
  for (std::size_t i = 0; i < 7; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < 5; ++k) s += a(i, k) * x[k];
    CHECK(y[i] == doctest::Approx(s).epsilon(1e-14));
  }
  CHECK_THROWS_AS(multiply(a, a), DimensionError);
}

TEST_CASE("concatenation and norms") {
  const std::vector<Matrix> h{Matrix{{1}, {2}}, Matrix{{3, 4}, {5, 6}}};
  CHECK(hconcat(h) == Matrix{{1, 3, 4}, {2, 5, 6}});
  const std::vector<Matrix> v{Matrix{{1, 2}}, Matrix{{3, 4}, {5, 6}}};
  CHECK(vconcat(v) == Matrix{{1, 2}, {3, 4}, {5, 6}});
  const std::vector<Matrix> bad{Matrix{{1, 2}}, Matrix{{3}}};
  CHECK_THROWS_AS(vconcat(bad), DimensionError);
  CHECK(frobenius_norm(Matrix{{3, 4}}) == 5.0);
  CHECK(subtract(Matrix{{3, 4}}, Matrix{{1, 1}}) == Matrix{{2, 3}});
  Matrix nan{{1, 2}};
  CHECK(nan.all_finite());
  nan(0, 1) = std::nan("");
  CHECK_FALSE(nan.all_finite());
}

}  // namespace
}  // namespace dcqe
