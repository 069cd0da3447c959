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

#include "dcqe/collaboration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <string>

#include "dcqe/error.hpp"
#include "dcqe/random.hpp"

namespace dcqe {
namespace {

std::string party_name(PartyIndex p) {
  return "(" + std::to_string(p.k + 1) + "," + std::to_string(p.l + 1) + ")";
}

// Reps grouped by row block, each group sorted by column block.
std::map<std::size_t, std::vector<const IntermediateRepresentation*>> group_by_row(
    std::span<const IntermediateRepresentation> reps) {
  std::map<std::size_t, std::vector<const IntermediateRepresentation*>> groups;
  std::set<PartyIndex> seen;
  for (const auto& rep : reps) {
    if (!seen.insert(rep.party).second) {
      throw IncompleteCollaborationError("duplicate representation for party " + party_name(rep.party));
    }
    groups[rep.party.k].push_back(&rep);
  }
  if (groups.empty()) throw IncompleteCollaborationError("no intermediate representations supplied");

  std::vector<std::size_t> reference;
  for (auto& [k, group] : groups) {
    std::sort(group.begin(), group.end(),
              [](const auto* a, const auto* b) { return a->party.l < b->party.l; });
    std::vector<std::size_t> cols;
    for (const auto* rep : group) cols.push_back(rep->party.l);
    if (reference.empty()) {
      reference = cols;
    } else if (cols != reference) {
      throw IncompleteCollaborationError("row block " + std::to_string(k + 1) +
                                         " does not supply the same column blocks as the others");
    }
  }
  return groups;
}

Matrix concat_anchor(const std::vector<const IntermediateRepresentation*>& group) {
  std::vector<Matrix> parts;
  for (const auto* rep : group) parts.push_back(rep->anchor_rep);
  return hconcat(parts);
}

}  // namespace

std::vector<ColumnRange> column_ranges(const Matrix& data) {
  std::vector<ColumnRange> out(data.cols(), {std::numeric_limits<double>::infinity(),
                                             -std::numeric_limits<double>::infinity()});
  for (std::size_t i = 0; i < data.rows(); ++i) {
    for (std::size_t j = 0; j < data.cols(); ++j) {
      out[j].min = std::min(out[j].min, data(i, j));
      out[j].max = std::max(out[j].max, data(i, j));
    }
  }
  return out;
}

Matrix AnchorDataset::column_block(std::size_t l) const {
  if (l >= col_sizes.size()) throw AnchorError("anchor has no column block " + std::to_string(l + 1));
  std::size_t offset = 0;
  for (std::size_t i = 0; i < l; ++i) offset += col_sizes[i];
  return values.block(0, offset, values.rows(), col_sizes[l]);
}

AnchorDataset generate_anchor(std::span<const ColumnRange> ranges, std::size_t rows, std::uint64_t seed,
                              std::vector<std::size_t> col_sizes) {
  if (ranges.empty()) throw AnchorError("anchor needs at least one column range");
  if (rows == 0) throw AnchorError("anchor needs at least one row");
  for (const auto& r : ranges) {
    if (!(r.min <= r.max) || !std::isfinite(r.min) || !std::isfinite(r.max)) {
      throw AnchorError("anchor column range must satisfy finite min <= max");
    }
  }
  if (col_sizes.empty()) col_sizes.push_back(ranges.size());
  std::size_t total = 0;
  for (std::size_t s : col_sizes) total += s;
  if (total != ranges.size()) throw AnchorError("anchor column blocks do not cover every column");

  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Matrix values(rows, ranges.size());
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < ranges.size(); ++j) {
      const double u = unit(rng);
      values(i, j) = ranges[j].min + u * (ranges[j].max - ranges[j].min);
    }
  }
  return AnchorDataset{std::move(values), std::move(col_sizes)};
}

IntermediateRepresentation make_intermediate(const PartyView& view, const Matrix& anchor_block,
                                             std::size_t target_dim) {
  const std::size_t ml = view.covariates.cols();
  if (anchor_block.cols() != ml) {
    throw DimensionError("party " + party_name(view.party) + ": anchor block has " +
                         std::to_string(anchor_block.cols()) + " columns, party has " + std::to_string(ml));
  }
  if (target_dim < 1 || target_dim >= ml) {
    throw DimensionError("party " + party_name(view.party) + ": reduction must be strict, got target " +
                         std::to_string(target_dim) + " for " + std::to_string(ml) + " covariates");
  }
  const PcaModel model = pca_fit(view.covariates, target_dim);
  return IntermediateRepresentation{view.party, pca_transform(model, view.covariates),
                                    pca_transform(model, anchor_block)};
}

UserShare share(const PartyView& view, IntermediateRepresentation rep) {
  if (rep.party != view.party) throw AssemblyError("representation does not belong to this party");
  return UserShare{std::move(rep), view.treatments, view.outcomes};
}

Integration fit_integration(std::span<const IntermediateRepresentation> reps, std::size_t collaborative_dim) {
  const auto groups = group_by_row(reps);
  const std::size_t r = reps.front().anchor_rep.rows();
  for (const auto& rep : reps) {
    if (rep.anchor_rep.rows() != r) throw DimensionError("anchor representations have different row counts");
  }

  std::vector<Matrix> per_row;
  for (const auto& [k, group] : groups) per_row.push_back(concat_anchor(group));
  const Matrix combined = hconcat(per_row);

  if (collaborative_dim < 1 || collaborative_dim > std::min(r, combined.cols())) {
    throw DimensionError("collaborative dimension " + std::to_string(collaborative_dim) + " outside [1, " +
                         std::to_string(std::min(r, combined.cols())) + "]");
  }
  TruncatedSvd svd = svd_truncated(combined, collaborative_dim);
  if (svd.rank() == 0) throw DimensionError("anchor representations are identically zero");

  Integration out{{}, std::move(svd.u), collaborative_dim};
  std::size_t i = 0;
  for (const auto& [k, group] : groups) {
    out.functions.push_back(IntegrationFunction{k, multiply(pseudoinverse(per_row[i]), out.target)});
    ++i;
  }
  return out;
}

std::vector<double> alignment_residuals(std::span<const IntermediateRepresentation> reps,
                                        const Integration& integration) {
  const auto groups = group_by_row(reps);
  std::vector<double> out;
  std::size_t i = 0;
  for (const auto& [k, group] : groups) {
    const auto& fn = integration.functions.at(i++);
    if (fn.row_block != k) throw AssemblyError("integration functions do not match row blocks");
    out.push_back(frobenius_norm(subtract(multiply(concat_anchor(group), fn.g), integration.target)));
  }
  return out;
}

CollaborativeRepresentation assemble_collaborative(std::span<const UserShare> shares,
                                                   const Integration& integration) {
  std::map<std::size_t, std::vector<const UserShare*>> groups;
  for (const auto& s : shares) groups[s.rep.party.k].push_back(&s);
  if (groups.size() != integration.functions.size()) {
    throw AssemblyError("got " + std::to_string(groups.size()) + " row blocks but " +
                        std::to_string(integration.functions.size()) + " integration functions");
  }

  CollaborativeRepresentation out;
  std::vector<Matrix> blocks;
  std::size_t i = 0;
  for (auto& [k, group] : groups) {
    std::sort(group.begin(), group.end(), [](const auto* a, const auto* b) { return a->rep.party.l < b->rep.party.l; });
    const auto& fn = integration.functions[i++];
    if (fn.row_block != k) throw AssemblyError("integration function order does not match row blocks");

    std::vector<Matrix> parts;
    for (const auto* s : group) {
      if (s->treatments != group.front()->treatments || s->outcomes != group.front()->outcomes) {
        throw AssemblyError("parties in row block " + std::to_string(k + 1) +
                            " disagree on treatments or outcomes");
      }
      parts.push_back(s->rep.data_rep);
    }
    const Matrix reduced = hconcat(parts);
    if (reduced.cols() != fn.g.rows()) {
      throw AssemblyError("row block " + std::to_string(k + 1) + ": representation width " +
                          std::to_string(reduced.cols()) + " does not match integration input " +
                          std::to_string(fn.g.rows()));
    }
    if (reduced.rows() != group.front()->treatments.size()) {
      throw AssemblyError("row block " + std::to_string(k + 1) + ": treatment count does not match rows");
    }
    blocks.push_back(multiply(reduced, fn.g));
    out.row_blocks.push_back(reduced.rows());
    out.treatments.insert(out.treatments.end(), group.front()->treatments.begin(), group.front()->treatments.end());
    out.outcomes.insert(out.outcomes.end(), group.front()->outcomes.begin(), group.front()->outcomes.end());
  }
  out.values = vconcat(blocks);
  return out;
}

std::size_t IntermediateDims::for_party(PartyIndex p) const {
  const auto it = overrides.find(p);
  return it == overrides.end() ? uniform : it->second;
}

CollaborationResult collaborate(std::span<const PartyView> views, const AnchorDataset& anchor,
                                const IntermediateDims& dims, std::size_t collaborative_dim) {
  CollaborationResult out;
  std::vector<UserShare> shares;
  for (const auto& view : views) {
    IntermediateRepresentation rep =
        make_intermediate(view, anchor.column_block(view.party.l), dims.for_party(view.party));
    out.intermediates.push_back(rep);
    shares.push_back(share(view, std::move(rep)));
  }
  out.integration = fit_integration(out.intermediates, collaborative_dim);
  out.representation = assemble_collaborative(shares, out.integration);
  return out;
}

}  // namespace dcqe
