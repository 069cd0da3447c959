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

#include "dcqe/io/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

#include "dcqe/error.hpp"

namespace dcqe::io {
namespace {

namespace fs = std::filesystem;

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    const auto comma = value.find(',', start);
    const auto end = comma == std::string_view::npos ? value.size() : comma;
    std::string item = trim(value.substr(start, end - start));
    if (!item.empty()) out.push_back(std::move(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError(key + ": expected a non-negative integer, got '" + value + "'");
  }
  return v;
}

std::size_t parse_count(const std::string& key, const std::string& value) {
  return static_cast<std::size_t>(parse_u64(key, value));
}

double parse_real(const std::string& key, const std::string& value) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size() || !std::isfinite(v)) {
    throw ConfigError(key + ": expected a finite real number, got '" + value + "'");
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError(key + ": expected true or false, got '" + value + "'");
}

std::vector<std::size_t> parse_counts(const std::string& key, const std::string& value) {
  std::vector<std::size_t> out;
  for (const auto& item : split_list(value)) out.push_back(parse_count(key, item));
  if (out.empty()) throw ConfigError(key + ": expected a comma-separated list of counts");
  return out;
}

Method parse_method(const std::string& key, const std::string& value) {
  if (value == "PSM" || value == "psm") return Method::kPsm;
  if (value == "IPW" || value == "ipw") return Method::kIpw;
  throw ConfigError(key + ": unknown estimator '" + value + "' (expected PSM or IPW)");
}

Estimand parse_estimand(const std::string& key, const std::string& value) {
  if (value == "ATE" || value == "ate") return Estimand::kAte;
  if (value == "ATT" || value == "att") return Estimand::kAtt;
  throw ConfigError(key + ": unknown estimand '" + value + "' (expected ATE or ATT)");
}

Command parse_command(const std::string& key, const std::string& value) {
  for (Command c : {Command::kSimulate, Command::kRun, Command::kEvaluate}) {
    if (value == command_name(c)) return c;
  }
  throw ConfigError(key + ": unknown command '" + value + "'");
}

OutputFormat parse_format(const std::string& key, const std::string& value) {
  if (value == "csv") return OutputFormat::kCsv;
  if (value == "json") return OutputFormat::kJson;
  if (value == "txt" || value == "pretty-table" || value == "text") return OutputFormat::kText;
  throw ConfigError(key + ": unknown output format '" + value + "' (expected csv, json or txt)");
}

std::string_view format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::kCsv:
      return "csv";
    case OutputFormat::kJson:
      return "json";
    case OutputFormat::kText:
      return "txt";
  }
  return "csv";
}

std::string real_text(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : "") + items[i];
  return out;
}

template <typename T>
std::string join_counts(const std::vector<T>& items) {
  std::vector<std::string> s;
  for (const auto& v : items) s.push_back(std::to_string(v));
  return join(s);
}

const std::set<std::string>& known_scopes() {
  static const std::set<std::string> scopes = {"IA", "L-IA", "R-IA", "CA", "L", "R", "T", "B", "W"};
  return scopes;
}

// Parses "run.party.K.L" / "run.outcomes.K" index suffixes (1-based).
std::vector<std::size_t> index_suffix(const std::string& key, std::string_view suffix, std::size_t expected) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start <= suffix.size()) {
    const auto dot = suffix.find('.', start);
    const auto end = dot == std::string_view::npos ? suffix.size() : dot;
    const std::string part(suffix.substr(start, end - start));
    const std::size_t v = parse_count(key, part);
    if (v == 0) throw ConfigError(key + ": party indices start at 1");
    out.push_back(v - 1);
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  if (out.size() != expected) throw ConfigError("unknown key '" + key + "'");
  return out;
}

void apply_defaults(RunConfig& c) {
  switch (c.command) {
    case Command::kSimulate:
      c.scopes = {"IA", "L", "T", "W", "CA"};
      c.intermediate_dim = 2;
      c.benchmark = 1.0;
      break;
    case Command::kEvaluate:
      c.scopes = {"L-IA", "R-IA", "L", "R", "T", "W", "CA"};
      c.intermediate_dim = 3;
      c.benchmark = kEmploymentBenchmark;
      break;
    case Command::kRun:
      c.scopes = {"W"};
      c.intermediate_dim = 0;
      break;
  }
}

void fill_partition(RunConfig& c, bool rows_given, bool cols_given) {
  if (c.command == Command::kSimulate) {
    const PartitionSpec eq = equal_partition(c.simulate.n, c.simulate.m, 2, 2);
    if (!rows_given) c.partition.row_sizes = eq.row_sizes;
    if (!cols_given) c.partition.col_sizes = eq.col_sizes;
  } else if (c.command == Command::kEvaluate) {
    if (!rows_given) c.partition.row_sizes = {c.evaluate.subjects_used / 2, c.evaluate.subjects_used - c.evaluate.subjects_used / 2};
    if (!cols_given) {
      const std::size_t m = c.evaluate.covariates.size();
      c.partition.col_sizes = {m / 2, m - m / 2};
    }
  }
}

fs::path resolve(const fs::path& base, const std::string& value) {
  fs::path p(value);
  if (p.is_relative()) p = base / p;
  return p.lexically_normal();
}

}  // namespace

std::string_view command_name(Command c) {
  switch (c) {
    case Command::kSimulate:
      return "simulate";
    case Command::kRun:
      return "run";
    case Command::kEvaluate:
      return "evaluate";
  }
  return "unknown";
}

RunConfig parse_config_text(std::string_view text, Command command, const fs::path& base_dir) {
  RunConfig c;
  c.command = command;
  apply_defaults(c);
  bool rows_given = false;
  bool cols_given = false;

  using Setter = std::function<void(const std::string&, const std::string&)>;
  const std::map<std::string, Setter> setters = {
      {"command",
       [&](const auto& k, const auto& v) {
         if (parse_command(k, v) != command) {
           throw ConfigError(k + ": file is for '" + v + "' but the command is '" +
                             std::string(command_name(command)) + "'");
         }
       }},
      {"seed", [&](const auto& k, const auto& v) { c.seed = parse_u64(k, v); }},
      {"threads", [&](const auto& k, const auto& v) { c.threads = static_cast<unsigned>(parse_count(k, v)); }},
      {"bootstrap.replicates", [&](const auto& k, const auto& v) { c.bootstrap_replicates = parse_count(k, v); }},
      {"bootstrap.resample", [&](const auto& k, const auto& v) { c.resample = parse_bool(k, v); }},
      {"estimation.estimators",
       [&](const auto& k, const auto& v) {
         c.estimators.clear();
         for (const auto& item : split_list(v)) c.estimators.push_back(parse_method(k, item));
       }},
      {"estimation.estimand", [&](const auto& k, const auto& v) { c.estimand = parse_estimand(k, v); }},
      {"scenario.scopes", [&](const auto&, const auto& v) { c.scopes = split_list(v); }},
      {"partition.rows",
       [&](const auto& k, const auto& v) {
         c.partition.row_sizes = parse_counts(k, v);
         rows_given = true;
       }},
      {"partition.cols",
       [&](const auto& k, const auto& v) {
         c.partition.col_sizes = parse_counts(k, v);
         cols_given = true;
       }},
      {"reduction.intermediate_dim", [&](const auto& k, const auto& v) { c.intermediate_dim = parse_count(k, v); }},
      {"reduction.collaborative_dim", [&](const auto& k, const auto& v) { c.collaborative_dim = parse_count(k, v); }},
      {"anchor.rows", [&](const auto& k, const auto& v) { c.anchor_rows = parse_count(k, v); }},
      {"benchmark",
       [&](const auto& k, const auto& v) {
         if (v == "none") {
           c.benchmark.reset();
         } else {
           c.benchmark = parse_real(k, v);
         }
       }},
      {"simulate.n", [&](const auto& k, const auto& v) { c.simulate.n = parse_count(k, v); }},
      {"simulate.m", [&](const auto& k, const auto& v) { c.simulate.m = parse_count(k, v); }},
      {"simulate.rho", [&](const auto& k, const auto& v) { c.simulate.rho = parse_real(k, v); }},
      {"simulate.noise_sd", [&](const auto& k, const auto& v) { c.simulate.noise_sd = parse_real(k, v); }},
      {"evaluate.data", [&](const auto&, const auto& v) { c.evaluate.data = resolve(base_dir, v); }},
      {"evaluate.treatment_column", [&](const auto&, const auto& v) { c.evaluate.treatment_column = v; }},
      {"evaluate.outcome_column", [&](const auto&, const auto& v) { c.evaluate.outcome_column = v; }},
      {"evaluate.covariates", [&](const auto&, const auto& v) { c.evaluate.covariates = split_list(v); }},
      {"evaluate.outcome_scale", [&](const auto& k, const auto& v) { c.evaluate.outcome_scale = parse_real(k, v); }},
      {"evaluate.subjects_used", [&](const auto& k, const auto& v) { c.evaluate.subjects_used = parse_count(k, v); }},
      {"run.id_column", [&](const auto&, const auto& v) { c.run.id_column = v; }},
      {"run.treatment_column", [&](const auto&, const auto& v) { c.run.treatment_column = v; }},
      {"run.outcome_column", [&](const auto&, const auto& v) { c.run.outcome_column = v; }},
      {"output.dir", [&](const auto&, const auto& v) { c.output.dir = resolve(base_dir, v); }},
      {"output.formats",
       [&](const auto& k, const auto& v) {
         c.output.formats.clear();
         for (const auto& item : split_list(v)) c.output.formats.push_back(parse_format(k, item));
       }},
      {"output.bootstrap_sidecar", [&](const auto& k, const auto& v) { c.output.bootstrap_sidecar = parse_bool(k, v); }},
  };

  std::map<std::size_t, fs::path> outcome_files;
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string content = trim(line);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(content).substr(0, eq));
    const std::string value = trim(std::string_view(content).substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (!seen.insert(key).second) throw ConfigError(key + ": key given more than once");

    if (const auto it = setters.find(key); it != setters.end()) {
      it->second(key, value);
    } else if (key.starts_with("run.party.")) {
      const auto idx = index_suffix(key, std::string_view(key).substr(10), 2);
      c.run.party_files[PartyIndex{idx[0], idx[1]}] = resolve(base_dir, value);
    } else if (key.starts_with("run.outcomes.")) {
      const auto idx = index_suffix(key, std::string_view(key).substr(13), 1);
      outcome_files[idx[0]] = resolve(base_dir, value);
    } else {
      throw ConfigError("unknown key '" + key + "'");
    }
  }
  for (std::size_t k = 0; k < outcome_files.size(); ++k) {
    if (!outcome_files.contains(k)) throw ConfigError("run.outcomes." + std::to_string(k + 1) + ": missing");
    c.run.outcome_files.push_back(outcome_files.at(k));
  }
  if (c.output.dir.is_relative()) c.output.dir = resolve(base_dir, c.output.dir.string());
  fill_partition(c, rows_given, cols_given);
  validate_config(c);
  return c;
}

RunConfig parse_config(const fs::path& path, Command command) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const fs::path base = path.has_parent_path() ? path.parent_path() : fs::current_path();
  return parse_config_text(buf.str(), command, fs::absolute(base));
}

void validate_config(const RunConfig& c) {
  if (c.bootstrap_replicates < 1) throw ConfigError("bootstrap.replicates: must be at least 1");
  if (c.threads < 1) throw ConfigError("threads: must be at least 1");
  if (c.estimators.empty()) throw ConfigError("estimation.estimators: at least one estimator is required");
  if (c.scopes.empty()) throw ConfigError("scenario.scopes: at least one scope is required");
  if (c.output.formats.empty()) throw ConfigError("output.formats: at least one format is required");
  for (const auto& s : c.scopes) {
    if (!known_scopes().contains(s)) {
      throw ConfigError("scenario.scopes: unknown scope '" + s + "' (expected IA, L-IA, R-IA, CA, L, R, T, B or W)");
    }
  }

  if (c.command == Command::kSimulate) {
    if (c.simulate.n < 2) throw ConfigError("simulate.n: need at least 2 subjects");
    if (c.simulate.m < 1) throw ConfigError("simulate.m: need at least 1 covariate");
    const double lower = c.simulate.m > 1 ? -1.0 / static_cast<double>(c.simulate.m - 1) : -1.0;
    if (!(c.simulate.rho > lower && c.simulate.rho < 1.0)) {
      throw ConfigError("simulate.rho: covariance is not positive definite for this correlation");
    }
    if (!(c.simulate.noise_sd > 0.0)) throw ConfigError("simulate.noise_sd: must be positive");
  }
  if (c.command == Command::kEvaluate) {
    if (c.evaluate.covariates.empty()) throw ConfigError("evaluate.covariates: list is empty");
    if (!(c.evaluate.outcome_scale > 0.0)) throw ConfigError("evaluate.outcome_scale: must be positive");
    if (!c.evaluate.data.empty() && !fs::exists(c.evaluate.data)) {
      throw ConfigError("evaluate.data: file '" + c.evaluate.data.string() + "' does not exist");
    }
  }
  if (c.command == Command::kRun) {
    for (const auto& [p, path] : c.run.party_files) {
      if (!fs::exists(path)) {
        throw ConfigError("run.party." + std::to_string(p.k + 1) + "." + std::to_string(p.l + 1) + ": file '" +
                          path.string() + "' does not exist");
      }
    }
    for (std::size_t k = 0; k < c.run.outcome_files.size(); ++k) {
      if (!fs::exists(c.run.outcome_files[k])) {
        throw ConfigError("run.outcomes." + std::to_string(k + 1) + ": file '" + c.run.outcome_files[k].string() +
                          "' does not exist");
      }
    }
    if (c.run.party_files.empty()) throw ConfigError("run.party.K.L: no party files given");
    std::size_t rows = 0, cols = 0;
    for (const auto& [p, path] : c.run.party_files) {
      rows = std::max(rows, p.k + 1);
      cols = std::max(cols, p.l + 1);
    }
    if (c.run.party_files.size() != rows * cols) {
      throw ConfigError("run.party.K.L: party files must cover a full " + std::to_string(rows) + " x " +
                        std::to_string(cols) + " grid");
    }
    if (c.run.outcome_files.size() != rows) {
      throw ConfigError("run.outcomes.K: expected one file per row block (" + std::to_string(rows) + ")");
    }
    // The partition sizes come from the files; nothing more to check here.
    if (c.partition.row_sizes.empty()) return;
  }

  const PartitionSpec& spec = c.partition;
  if (spec.row_sizes.empty() || spec.col_sizes.empty()) throw ConfigError("partition.rows/cols: missing");
  for (std::size_t s : spec.row_sizes) {
    if (s == 0) throw ConfigError("partition.rows: blocks must be non-empty");
  }
  for (std::size_t s : spec.col_sizes) {
    if (s == 0) throw ConfigError("partition.cols: blocks must be non-empty");
  }
  if (c.command == Command::kSimulate) {
    if (spec.subjects() != c.simulate.n) throw ConfigError("partition.rows: sizes must sum to simulate.n");
    if (spec.covariates() != c.simulate.m) throw ConfigError("partition.cols: sizes must sum to simulate.m");
  }
  if (c.command == Command::kEvaluate) {
    if (spec.subjects() != c.evaluate.subjects_used) {
      throw ConfigError("partition.rows: sizes must sum to evaluate.subjects_used");
    }
    if (spec.covariates() != c.evaluate.covariates.size()) {
      throw ConfigError("partition.cols: sizes must sum to the number of evaluate.covariates");
    }
  }

  const std::size_t n = spec.subjects();
  const std::size_t r = c.anchor_rows == 0 ? n : c.anchor_rows;
  for (const auto& token : c.scopes) {
    if (token == "R-IA" && spec.col_blocks() < 2) throw ConfigError("scenario.scopes: R-IA needs two column blocks");
    if (token == "IA" || token == "L-IA" || token == "R-IA" || token == "CA") continue;
    const ScopeKind kind = token == "L"   ? ScopeKind::kLeft
                           : token == "R" ? ScopeKind::kRight
                           : token == "T" ? ScopeKind::kTop
                           : token == "B" ? ScopeKind::kBottom
                                          : ScopeKind::kWhole;
    const CollaborationScope scope = CollaborationScope::of_kind(kind, spec);
    const ScopeGrid grid = scope_grid(scope, spec);
    std::size_t anchor_width = 0;
    for (std::size_t k : grid.row_blocks) {
      if (spec.row_sizes[k] < 2) throw ConfigError("partition.rows: DC-QE needs at least 2 subjects per party");
      for (std::size_t l : grid.col_blocks) {
        const std::size_t ml = spec.col_sizes[l];
        const std::size_t dim = c.intermediate_dim == 0 ? ml - 1 : c.intermediate_dim;
        if (dim < 1 || dim >= ml) {
          throw ConfigError("reduction.intermediate_dim: reduction must be strict (party covariates " +
                            std::to_string(ml) + ", requested " + std::to_string(dim) + ")");
        }
        anchor_width += dim;
      }
    }
    if (c.collaborative_dim > std::min(r, anchor_width)) {
      const std::size_t dim = c.collaborative_dim;
      throw ConfigError("reduction.collaborative_dim: " + std::to_string(dim) + " exceeds the " +
                        std::to_string(std::min(r, anchor_width)) + " anchor dimensions available to scope " + token);
    }
  }
}

std::string to_text(const RunConfig& c) {
  std::ostringstream out;
  out << "command = " << command_name(c.command) << "\n";
  out << "seed = " << c.seed << "\n";
  out << "threads = " << c.threads << "\n";
  out << "bootstrap.replicates = " << c.bootstrap_replicates << "\n";
  out << "bootstrap.resample = " << (c.resample ? "true" : "false") << "\n";
  std::vector<std::string> methods;
  for (Method m : c.estimators) methods.emplace_back(method_name(m));
  out << "estimation.estimators = " << join(methods) << "\n";
  out << "estimation.estimand = " << estimand_name(c.estimand) << "\n";
  out << "scenario.scopes = " << join(c.scopes) << "\n";
  if (!c.partition.row_sizes.empty()) out << "partition.rows = " << join_counts(c.partition.row_sizes) << "\n";
  if (!c.partition.col_sizes.empty()) out << "partition.cols = " << join_counts(c.partition.col_sizes) << "\n";
  out << "reduction.intermediate_dim = " << c.intermediate_dim << "\n";
  out << "reduction.collaborative_dim = " << c.collaborative_dim << "\n";
  out << "anchor.rows = " << c.anchor_rows << "\n";
  out << "benchmark = " << (c.benchmark ? real_text(*c.benchmark) : "none") << "\n";
  switch (c.command) {
    case Command::kSimulate:
      out << "simulate.n = " << c.simulate.n << "\n";
      out << "simulate.m = " << c.simulate.m << "\n";
      out << "simulate.rho = " << real_text(c.simulate.rho) << "\n";
      out << "simulate.noise_sd = " << real_text(c.simulate.noise_sd) << "\n";
      break;
    case Command::kEvaluate:
      if (!c.evaluate.data.empty()) out << "evaluate.data = " << c.evaluate.data.string() << "\n";
      out << "evaluate.treatment_column = " << c.evaluate.treatment_column << "\n";
      out << "evaluate.outcome_column = " << c.evaluate.outcome_column << "\n";
      out << "evaluate.covariates = " << join(c.evaluate.covariates) << "\n";
      out << "evaluate.outcome_scale = " << real_text(c.evaluate.outcome_scale) << "\n";
      out << "evaluate.subjects_used = " << c.evaluate.subjects_used << "\n";
      break;
    case Command::kRun:
      if (!c.run.id_column.empty()) out << "run.id_column = " << c.run.id_column << "\n";
      out << "run.treatment_column = " << c.run.treatment_column << "\n";
      out << "run.outcome_column = " << c.run.outcome_column << "\n";
      for (const auto& [p, path] : c.run.party_files) {
        out << "run.party." << p.k + 1 << "." << p.l + 1 << " = " << path.string() << "\n";
      }
      for (std::size_t k = 0; k < c.run.outcome_files.size(); ++k) {
        out << "run.outcomes." << k + 1 << " = " << c.run.outcome_files[k].string() << "\n";
      }
      break;
  }
  out << "output.dir = " << c.output.dir.string() << "\n";
  std::vector<std::string> formats;
  for (OutputFormat f : c.output.formats) formats.emplace_back(format_name(f));
  out << "output.formats = " << join(formats) << "\n";
  out << "output.bootstrap_sidecar = " << (c.output.bootstrap_sidecar ? "true" : "false") << "\n";
  return out.str();
}

std::vector<ScenarioConfig> scenario_configs(const RunConfig& c) {
  if (c.partition.row_sizes.empty() || c.partition.col_sizes.empty()) {
    throw ConfigError("partition is not known yet");
  }
  const PartitionSpec& spec = c.partition;
  IntermediateDims dims;
  dims.uniform = c.intermediate_dim;
  if (c.intermediate_dim == 0) {
    for (std::size_t k = 0; k < spec.row_blocks(); ++k) {
      for (std::size_t l = 0; l < spec.col_blocks(); ++l) dims.overrides[{k, l}] = spec.col_sizes[l] - 1;
    }
  }

  std::vector<ScenarioConfig> out;
  for (Method method : c.estimators) {
    for (const auto& token : c.scopes) {
      ScenarioConfig s;
      s.partition = spec;
      s.intermediate_dims = dims;
      s.collaborative_dim = c.collaborative_dim;
      s.anchor_rows = c.anchor_rows;
      s.estimator = method;
      s.estimand = c.estimand;
      s.bootstrap_replicates = c.bootstrap_replicates;
      s.resample = c.resample;
      s.master_seed = c.seed;
      s.benchmark = c.benchmark;
      s.threads = c.threads;
      if (token == "IA" || token == "L-IA") {
        s.analysis = Analysis::kIndividual;
        s.scope = CollaborationScope::single({0, 0});
        s.label = token;
      } else if (token == "R-IA") {
        s.analysis = Analysis::kIndividual;
        s.scope = CollaborationScope::single({0, spec.col_blocks() - 1});
        s.label = token;
      } else if (token == "CA") {
        s.analysis = Analysis::kCentralized;
        s.scope = CollaborationScope::of_kind(ScopeKind::kWhole, spec);
        s.label = "CA";
      } else {
        const ScopeKind kind = token == "L"   ? ScopeKind::kLeft
                               : token == "R" ? ScopeKind::kRight
                               : token == "T" ? ScopeKind::kTop
                               : token == "B" ? ScopeKind::kBottom
                                              : ScopeKind::kWhole;
        s.analysis = Analysis::kDcqe;
        s.scope = CollaborationScope::of_kind(kind, spec);
        s.label = token + "-clb";
      }
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace dcqe::io
