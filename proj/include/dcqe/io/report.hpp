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

#ifndef DCQE_IO_REPORT_HPP_
#define DCQE_IO_REPORT_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dcqe/experiments.hpp"
#include "dcqe/io/config.hpp"

namespace dcqe::io {

// What a report embeds so that a run can be replayed.
struct ReportContext {
  std::string config_text;
  std::uint64_t seed = 0;
  std::string isa;
};

/// One line per scenario at full precision. Absent values are empty cells.
std::string results_csv(const std::vector<ScenarioResult>& results, std::uint64_t seed);

/// Nested per scenario, including the bootstrap estimates, the effective
/// config and the seed.
std::string results_json(const std::vector<ScenarioResult>& results, const ReportContext& context);

/// Inverse of results_json for the scenario list.
std::vector<ScenarioResult> results_from_json(std::string_view text);

/// Fixed-width table with "mean (se)" cells to four decimals.
std::string results_table(const std::vector<ScenarioResult>& results);

/// Long format: scenario, replicate, estimate.
std::string bootstrap_csv(const std::vector<ScenarioResult>& results);

/// Writes results.{csv,json,txt} (as selected) and the optional
/// bootstrap.csv sidecar into settings.dir. Returns the files written.
std::vector<std::filesystem::path> emit_report(const std::vector<ScenarioResult>& results,
                                               const ReportContext& context, const OutputSettings& settings);

}  // namespace dcqe::io

#endif  // DCQE_IO_REPORT_HPP_
