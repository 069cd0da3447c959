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

#ifndef DCQE_DATAMODEL_HPP_
#define DCQE_DATAMODEL_HPP_

#include <compare>
#include <cstddef>
#include <set>
#include <string_view>
#include <vector>

#include "dcqe/matrix.hpp"

namespace dcqe {

using Treatments = std::vector<int>;

// Covariates X (n x m), binary treatments Z and real outcomes Y of the same
// n subjects. Constructed through make_dataset, which enforces the invariants.
struct Dataset {
  Matrix covariates;
  Treatments treatments;
  Vector outcomes;

  std::size_t subjects() const { return covariates.rows(); }
  std::size_t covariate_count() const { return covariates.cols(); }
  Dataset select_rows(std::span<const std::size_t> indices) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

// Validates shapes, finiteness, binary treatments and the presence of both
// treatment groups.
Dataset make_dataset(Matrix covariates, Treatments treatments, Vector outcomes);
void validate_treatments(std::span<const int> treatments);

// Sizes of the c row blocks (institutions) and d column blocks (covariate
// owners); block (k, l) holds rows of block k and columns of block l.
struct PartitionSpec {
  std::vector<std::size_t> row_sizes;
  std::vector<std::size_t> col_sizes;

  std::size_t row_blocks() const { return row_sizes.size(); }
  std::size_t col_blocks() const { return col_sizes.size(); }
  std::size_t subjects() const;
  std::size_t covariates() const;
  std::size_t row_offset(std::size_t k) const;
  std::size_t col_offset(std::size_t l) const;

  friend bool operator==(const PartitionSpec&, const PartitionSpec&) = default;
};

PartitionSpec equal_partition(std::size_t n, std::size_t m, std::size_t c, std::size_t d);
void validate_partition(const PartitionSpec& spec, const Dataset& data);

struct PartyIndex {
  std::size_t k = 0;
  std::size_t l = 0;
  friend auto operator<=>(const PartyIndex&, const PartyIndex&) = default;
};

struct PartyView {
  PartyIndex party;
  Matrix covariates;
  Treatments treatments;
  Vector outcomes;
};

/// Splits the dataset into its c*d party views, ordered by k then l.
std::vector<PartyView> partition(const Dataset& data, const PartitionSpec& spec);
/// Inverse of partition: stitches the views back into one dataset.
Dataset reassemble(std::span<const PartyView> views, const PartitionSpec& spec);

enum class ScopeKind { kLeft, kRight, kTop, kBottom, kWhole, kCustom };

std::string_view scope_kind_name(ScopeKind kind);

struct CollaborationScope {
  ScopeKind kind = ScopeKind::kWhole;
  std::set<PartyIndex> parties;

  static CollaborationScope of_kind(ScopeKind kind, const PartitionSpec& spec);
  static CollaborationScope custom(std::set<PartyIndex> parties);
  static CollaborationScope single(PartyIndex party) { return custom({party}); }

  friend bool operator==(const CollaborationScope&, const CollaborationScope&) = default;
};

// Row blocks and column blocks covered by a validated scope, ascending.
struct ScopeGrid {
  std::vector<std::size_t> row_blocks;
  std::vector<std::size_t> col_blocks;
};

/// Checks the scope against the partition: parties in range and forming a
/// full rectangular sub-grid. Throws ScopeError otherwise.
ScopeGrid scope_grid(const CollaborationScope& scope, const PartitionSpec& spec);

std::vector<std::size_t> scope_rows(const ScopeGrid& grid, const PartitionSpec& spec);
std::vector<std::size_t> scope_columns(const ScopeGrid& grid, const PartitionSpec& spec);

/// The subjects and covariates a scope could see if it pooled raw data.
Dataset scope_dataset(const Dataset& data, const PartitionSpec& spec, const CollaborationScope& scope);

}  // namespace dcqe

#endif  // DCQE_DATAMODEL_HPP_
