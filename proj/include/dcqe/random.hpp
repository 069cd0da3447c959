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

#ifndef DCQE_RANDOM_HPP_
#define DCQE_RANDOM_HPP_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace dcqe {

using Rng = std::mt19937_64;

// Streams derived from a master seed. Each consumer of randomness gets its own
// stream tag so that adding a new consumer never shifts existing draws.
enum class Stream : std::uint64_t {
  kResample = 1,
  kAnchor = 2,
  kShuffle = 3,
  kData = 4,
};

/// Mixes the master seed with a list of integers (splitmix64 finalizer) into a
/// seed for an independent generator. Pure function of its inputs.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path);

inline Rng make_rng(std::uint64_t master, Stream stream, std::initializer_list<std::uint64_t> path = {}) {
  std::uint64_t s = derive_seed(master, {static_cast<std::uint64_t>(stream)});
  return Rng(derive_seed(s, path));
}

}  // namespace dcqe

#endif  // DCQE_RANDOM_HPP_
