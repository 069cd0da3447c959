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

#ifndef DCQE_SIMD_KERNELS_HPP_
#define DCQE_SIMD_KERNELS_HPP_

#include <cstddef>
#include <string_view>

// Runtime-dispatched double-precision vector kernels. Every kernel has a
// scalar reference implementation; AVX2+FMA (x86-64) and NEON (aarch64)
// variants are selected at first use from CPU features, or forced through
// set_isa() / the DCQE_SIMD environment variable ("scalar", "avx2", "neon").
//
// Variants agree up to floating-point reassociation, not bit-for-bit. Runs are
// bit-reproducible for a fixed ISA.
namespace dcqe::simd {

enum class Isa { kScalar, kAvx2, kNeon };

std::string_view isa_name(Isa isa);
bool isa_supported(Isa isa);
Isa best_isa();

Isa active_isa();
// Throws dcqe::Error if the ISA is not supported on this machine/build.
void set_isa(Isa isa);

struct KernelTable {
  double (*dot)(const double* a, const double* b, std::size_t n);
  // sum_i w[i] * a[i] * b[i]
  double (*weighted_dot)(const double* w, const double* a, const double* b, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  void (*scale)(double alpha, double* x, std::size_t n);
  // (x, y) <- (c*x - s*y, s*x + c*y)
  void (*rotate)(double* x, double* y, std::size_t n, double c, double s);
};

// Kernel table for a specific ISA; throws if unsupported. Used by the
// equivalence tests to compare variants side by side.
const KernelTable& kernels_for(Isa isa);
const KernelTable& kernels();

inline double dot(const double* a, const double* b, std::size_t n) { return kernels().dot(a, b, n); }
inline double weighted_dot(const double* w, const double* a, const double* b, std::size_t n) {
  return kernels().weighted_dot(w, a, b, n);
}
inline void axpy(double alpha, const double* x, double* y, std::size_t n) {
  kernels().axpy(alpha, x, y, n);
}
inline void scale(double alpha, double* x, std::size_t n) { kernels().scale(alpha, x, n); }
inline void rotate(double* x, double* y, std::size_t n, double c, double s) {
  kernels().rotate(x, y, n, c, s);
}

}  // namespace dcqe::simd

#endif  // DCQE_SIMD_KERNELS_HPP_
