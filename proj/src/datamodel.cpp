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

#include "dcqe/datamodel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dcqe/error.hpp"

namespace dcqe {

void validate_treatments(std::span<const int> treatments) {
  bool treated = false;
  bool control = false;
  for (std::size_t i = 0; i < treatments.size(); ++i) {
    const int z = treatments[i];
    if (z != 0 && z != 1) {
      throw InvalidDataError("treatment at row " + std::to_string(i) + " is " + std::to_string(z) +
                             ", expected 0 or 1");
    }
    (z == 1 ? treated : control) = true;
  }
  if (!treated || !control) {
    throw DegenerateLabelsError("dataset needs at least one treated and one control subject");
  }
}

Dataset make_dataset(Matrix covariates, Treatments treatments, Vector outcomes) {
  if (covariates.rows() == 0 || covariates.cols() == 0) throw InvalidDataError("dataset has no covariates");
  if (treatments.size() != covariates.rows() || outcomes.size() != covariates.rows()) {
    throw InvalidDataError("dataset: covariates, treatments and outcomes have different lengths");
  }
  if (!covariates.all_finite()) throw InvalidDataError("dataset: non-finite covariate");
  if (!std::all_of(outcomes.begin(), outcomes.end(), [](double y) { return std::isfinite(y); })) {
    throw InvalidDataError("dataset: non-finite outcome");
  }
  validate_treatments(treatments);
  return Dataset{std::move(covariates), std::move(treatments), std::move(outcomes)};
}

Dataset Dataset::select_rows(std::span<const std::size_t> indices) const {
  Dataset out{covariates.select_rows(indices), Treatments(indices.size()), Vector(indices.size())};
  for (std::size_t i = 0; i < indices.size(); ++i) {
    out.treatments[i] = treatments[indices[i]];
    out.outcomes[i] = outcomes[indices[i]];
  }
  return out;
}

std::size_t PartitionSpec::subjects() const {
  return std::accumulate(row_sizes.begin(), row_sizes.end(), std::size_t{0});
}

std::size_t PartitionSpec::covariates() const {
  return std::accumulate(col_sizes.begin(), col_sizes.end(), std::size_t{0});
}

std::size_t PartitionSpec::row_offset(std::size_t k) const {
  return std::accumulate(row_sizes.begin(), row_sizes.begin() + static_cast<std::ptrdiff_t>(k), std::size_t{0});
}

std::size_t PartitionSpec::col_offset(std::size_t l) const {
  return std::accumulate(col_sizes.begin(), col_sizes.begin() + static_cast<std::ptrdiff_t>(l), std::size_t{0});
}

PartitionSpec equal_partition(std::size_t n, std::size_t m, std::size_t c, std::size_t d) {
  if (c == 0 || d == 0 || n < c || m < d) throw PartitionError("cannot split into empty blocks");
  PartitionSpec spec;
  for (std::size_t k = 0; k < c; ++k) spec.row_sizes.push_back(n / c + (k < n % c ? 1 : 0));
  for (std::size_t l = 0; l < d; ++l) spec.col_sizes.push_back(m / d + (l < m % d ? 1 : 0));
  return spec;
}

void validate_partition(const PartitionSpec& spec, const Dataset& data) {
  if (spec.row_sizes.empty() || spec.col_sizes.empty()) throw PartitionError("partition has no blocks");
  if (std::find(spec.row_sizes.begin(), spec.row_sizes.end(), 0u) != spec.row_sizes.end() ||
      std::find(spec.col_sizes.begin(), spec.col_sizes.end(), 0u) != spec.col_sizes.end()) {
    throw PartitionError("partition contains an empty block");
  }
  if (spec.subjects() != data.subjects()) {
    throw PartitionError("row blocks sum to " + std::to_string(spec.subjects()) + " but dataset has " +
                         std::to_string(data.subjects()) + " subjects");
  }
  if (spec.covariates() != data.covariate_count()) {
    throw PartitionError("column blocks sum to " + std::to_string(spec.covariates()) + " but dataset has " +
                         std::to_string(data.covariate_count()) + " covariates");
  }
}

std::vector<PartyView> partition(const Dataset& data, const PartitionSpec& spec) {
  validate_partition(spec, data);
  std::vector<PartyView> views;
  views.reserve(spec.row_blocks() * spec.col_blocks());
  for (std::size_t k = 0; k < spec.row_blocks(); ++k) {
    const std::size_t r0 = spec.row_offset(k);
    const std::size_t nk = spec.row_sizes[k];
    const auto first = data.treatments.begin() + static_cast<std::ptrdiff_t>(r0);
    const auto yfirst = data.outcomes.begin() + static_cast<std::ptrdiff_t>(r0);
    for (std::size_t l = 0; l < spec.col_blocks(); ++l) {
      views.push_back(PartyView{{k, l},
                                data.covariates.block(r0, spec.col_offset(l), nk, spec.col_sizes[l]),
                                Treatments(first, first + static_cast<std::ptrdiff_t>(nk)),
                                Vector(yfirst, yfirst + static_cast<std::ptrdiff_t>(nk))});
    }
  }
  return views;
}

Dataset reassemble(std::span<const PartyView> views, const PartitionSpec& spec) {
  if (views.size() != spec.row_blocks() * spec.col_blocks()) throw PartitionError("wrong number of views");
  std::vector<Matrix> row_blocks;
  Treatments z;
  Vector y;
  for (std::size_t k = 0; k < spec.row_blocks(); ++k) {
    const auto row = views.subspan(k * spec.col_blocks(), spec.col_blocks());
    std::vector<Matrix> cols;
    for (const auto& v : row) {
      if (v.party.k != k) throw PartitionError("views are not in block order");
      cols.push_back(v.covariates);
    }
    row_blocks.push_back(hconcat(cols));
    z.insert(z.end(), row.front().treatments.begin(), row.front().treatments.end());
    y.insert(y.end(), row.front().outcomes.begin(), row.front().outcomes.end());
  }
  return Dataset{vconcat(row_blocks), std::move(z), std::move(y)};
}

std::string_view scope_kind_name(ScopeKind kind) {
  switch (kind) {
    case ScopeKind::kLeft:
      return "left";
    case ScopeKind::kRight:
      return "right";
    case ScopeKind::kTop:
      return "top";
    case ScopeKind::kBottom:
      return "bottom";
    case ScopeKind::kWhole:
      return "whole";
    case ScopeKind::kCustom:
      return "custom";
  }
  return "unknown";
}

CollaborationScope CollaborationScope::of_kind(ScopeKind kind, const PartitionSpec& spec) {
  const std::size_t c = spec.row_blocks();
  const std::size_t d = spec.col_blocks();
  if (c == 0 || d == 0) throw ScopeError("partition has no blocks");
  if (kind == ScopeKind::kCustom) throw ScopeError("custom scopes need an explicit party set");
  CollaborationScope scope{kind, {}};
  for (std::size_t k = 0; k < c; ++k) {
    for (std::size_t l = 0; l < d; ++l) {
      const bool include = kind == ScopeKind::kWhole || (kind == ScopeKind::kLeft && l == 0) ||
                           (kind == ScopeKind::kRight && l == d - 1) || (kind == ScopeKind::kTop && k == 0) ||
                           (kind == ScopeKind::kBottom && k == c - 1);
      if (include) scope.parties.insert({k, l});
    }
  }
  return scope;
}

CollaborationScope CollaborationScope::custom(std::set<PartyIndex> parties) {
  return CollaborationScope{ScopeKind::kCustom, std::move(parties)};
}

ScopeGrid scope_grid(const CollaborationScope& scope, const PartitionSpec& spec) {
  if (scope.parties.empty()) throw ScopeError("scope includes no parties");
  std::set<std::size_t> rows;
  std::set<std::size_t> cols;
  for (const auto& p : scope.parties) {
    if (p.k >= spec.row_blocks() || p.l >= spec.col_blocks()) {
      throw ScopeError("party (" + std::to_string(p.k + 1) + "," + std::to_string(p.l + 1) +
                       ") is outside the partition");
    }
    rows.insert(p.k);
    cols.insert(p.l);
  }
  if (rows.size() * cols.size() != scope.parties.size()) {
    throw ScopeError("scope is not a rectangular sub-grid of the partition");
  }
  return ScopeGrid{{rows.begin(), rows.end()}, {cols.begin(), cols.end()}};
}

std::vector<std::size_t> scope_rows(const ScopeGrid& grid, const PartitionSpec& spec) {
  std::vector<std::size_t> out;
  for (std::size_t k : grid.row_blocks) {
    const std::size_t r0 = spec.row_offset(k);
    for (std::size_t i = 0; i < spec.row_sizes[k]; ++i) out.push_back(r0 + i);
  }
  return out;
}

std::vector<std::size_t> scope_columns(const ScopeGrid& grid, const PartitionSpec& spec) {
  std::vector<std::size_t> out;
  for (std::size_t l : grid.col_blocks) {
    const std::size_t c0 = spec.col_offset(l);
    for (std::size_t j = 0; j < spec.col_sizes[l]; ++j) out.push_back(c0 + j);
  }
  return out;
}

Dataset scope_dataset(const Dataset& data, const PartitionSpec& spec, const CollaborationScope& scope) {
  validate_partition(spec, data);
  const ScopeGrid grid = scope_grid(scope, spec);
  const auto rows = scope_rows(grid, spec);
  const auto cols = scope_columns(grid, spec);
  Dataset out = data.select_rows(rows);
  Matrix narrowed(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) narrowed(i, j) = out.covariates(i, cols[j]);
  }
  out.covariates = std::move(narrowed);
  return out;
}

}  // namespace dcqe
