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

#ifndef DCQE_COLLABORATION_HPP_
#define DCQE_COLLABORATION_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "dcqe/datamodel.hpp"
#include "dcqe/matrix.hpp"
#include "dcqe/numerics.hpp"

// Construction of collaborative representations from dimensionality-reduced
// party data. The user side (make_intermediate, share) sees raw covariates;
// the analyst side (fit_integration, assemble_collaborative) only ever
// receives IntermediateRepresentation / UserShare values.
namespace dcqe {

struct ColumnRange {
  double min = 0.0;
  double max = 0.0;
};

std::vector<ColumnRange> column_ranges(const Matrix& data);

// Shared dummy data: r rows over all m covariates, split into the same
// column blocks as the parties.
struct AnchorDataset {
  Matrix values;
  std::vector<std::size_t> col_sizes;

  std::size_t rows() const { return values.rows(); }
  Matrix column_block(std::size_t l) const;
};

/// r rows, each entry drawn uniformly from its column's [min, max].
/// col_sizes defaults to a single block covering every column.
AnchorDataset generate_anchor(std::span<const ColumnRange> ranges, std::size_t rows, std::uint64_t seed,
                              std::vector<std::size_t> col_sizes = {});

struct IntermediateRepresentation {
  PartyIndex party;
  Matrix data_rep;    // n_k x reduced_dim
  Matrix anchor_rep;  // r x reduced_dim

  std::size_t reduced_dim() const { return data_rep.cols(); }
};

/// Fits PCA on the party's own (standardized) covariates and applies the same
/// map to the party data and to its anchor column block. The reduction must
/// be strict: 1 <= target_dim < m_l.
IntermediateRepresentation make_intermediate(const PartyView& view, const Matrix& anchor_block,
                                             std::size_t target_dim);

// Everything a user hands to the analyst.
struct UserShare {
  IntermediateRepresentation rep;
  Treatments treatments;
  Vector outcomes;
};

UserShare share(const PartyView& view, IntermediateRepresentation rep);

struct IntegrationFunction {
  std::size_t row_block = 0;
  Matrix g;  // (sum_l reduced_dim_{k,l}) x collaborative_dim
};

struct Integration {
  std::vector<IntegrationFunction> functions;  // ascending row block
  Matrix target;                               // U1, r x effective dim
  std::size_t requested_dim = 0;

  std::size_t effective_dim() const { return target.cols(); }
};

/// Analyst-side alignment. Concatenates each row block's anchor images in
/// ascending column-block order, then all row blocks side by side, takes the
/// rank-m SVD basis U1 of that matrix and returns G_k = pinv(anchor_k) * U1.
/// The effective dimension drops below the request when the anchor matrix has
/// lower numerical rank.
Integration fit_integration(std::span<const IntermediateRepresentation> reps, std::size_t collaborative_dim);

/// Frobenius norm of anchor_k * G_k - U1 for each row block, ascending k.
std::vector<double> alignment_residuals(std::span<const IntermediateRepresentation> reps,
                                        const Integration& integration);

// Analyst-side n x m_check matrix, rows in row-block order.
struct CollaborativeRepresentation {
  Matrix values;
  std::vector<std::size_t> row_blocks;
  Treatments treatments;
  Vector outcomes;
};

CollaborativeRepresentation assemble_collaborative(std::span<const UserShare> shares,
                                                   const Integration& integration);

// Reduced dimension per party: a uniform value with optional overrides.
struct IntermediateDims {
  std::size_t uniform = 1;
  std::map<PartyIndex, std::size_t> overrides;

  std::size_t for_party(PartyIndex p) const;
};

struct CollaborationResult {
  std::vector<IntermediateRepresentation> intermediates;
  Integration integration;
  CollaborativeRepresentation representation;
};

/// Runs both sides of the protocol in process for the given party views
/// (which must form a rectangular grid) against a shared anchor.
CollaborationResult collaborate(std::span<const PartyView> views, const AnchorDataset& anchor,
                                const IntermediateDims& dims, std::size_t collaborative_dim);

}  // namespace dcqe

#endif  // DCQE_COLLABORATION_HPP_
