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

#include <atomic>
#include <cstdlib>
#include <string>

#include "dcqe/error.hpp"
#include "variants.hpp"

namespace dcqe::simd {
namespace {

bool cpu_has_avx2() {
#if defined(DCQE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa initial_isa() {
  if (const char* forced = std::getenv("DCQE_SIMD")) {
    const std::string name(forced);
    for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kNeon}) {
      if (name == isa_name(isa) && isa_supported(isa)) return isa;
    }
  }
  return best_isa();
}

std::atomic<const KernelTable*>& active_table() {
  static std::atomic<const KernelTable*> table{&kernels_for(initial_isa())};
  return table;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
    case Isa::kNeon:
      return "neon";
  }
  return "unknown";
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
      return cpu_has_avx2();
    case Isa::kNeon:
#if defined(DCQE_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa best_isa() {
  if (isa_supported(Isa::kAvx2)) return Isa::kAvx2;
  if (isa_supported(Isa::kNeon)) return Isa::kNeon;
  return Isa::kScalar;
}

const KernelTable& kernels_for(Isa isa) {
  if (!isa_supported(isa)) {
    throw Error("SIMD variant '" + std::string(isa_name(isa)) + "' is not available");
  }
  switch (isa) {
#if defined(DCQE_HAVE_AVX2)
    case Isa::kAvx2:
      return detail::kAvx2Table;
#endif
#if defined(DCQE_HAVE_NEON)
    case Isa::kNeon:
      return detail::kNeonTable;
#endif
    default:
      return detail::kScalarTable;
  }
}

const KernelTable& kernels() { return *active_table().load(std::memory_order_acquire); }

Isa active_isa() {
  const KernelTable* table = active_table().load(std::memory_order_acquire);
#if defined(DCQE_HAVE_AVX2)
  if (table == &detail::kAvx2Table) return Isa::kAvx2;
#endif
#if defined(DCQE_HAVE_NEON)
  if (table == &detail::kNeonTable) return Isa::kNeon;
#endif
  (void)table;
  return Isa::kScalar;
}

void set_isa(Isa isa) { active_table().store(&kernels_for(isa), std::memory_order_release); }

}  // namespace dcqe::simd
