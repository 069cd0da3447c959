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

#include "dcqe/io/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>

#include "dcqe/error.hpp"

namespace dcqe::io {
namespace {

namespace fs = std::filesystem;

std::string strip(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  s = s.substr(first, last - first + 1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return std::string(s);
}

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    if (comma == std::string::npos) {
      cells.push_back(strip(std::string_view(line).substr(start)));
      break;
    }
    cells.push_back(strip(std::string_view(line).substr(start, comma - start)));
    start = comma + 1;
  }
  return cells;
}

std::string where(const fs::path& path, std::size_t row, const std::string& column) {
  // Data row r sits on line r + 2 (header is line 1).
  return path.string() + ": line " + std::to_string(row + 2) + " (row " + std::to_string(row + 1) + "), column '" +
         column + "'";
}

std::size_t column_index(const CsvTable& table, const fs::path& path, const std::string& name) {
  for (std::size_t j = 0; j < table.header.size(); ++j) {
    if (table.header[j] == name) return j;
  }
  throw IngestionError(path.string() + ": missing column '" + name + "'");
}

double parse_cell(const std::string& cell, const fs::path& path, std::size_t row, const std::string& column) {
  if (cell.empty()) throw IngestionError(where(path, row, column) + ": empty cell");
  const char* first = cell.data();
  if (*first == '+') ++first;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(first, cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw IngestionError(where(path, row, column) + ": '" + cell + "' is not a number");
  }
  if (!std::isfinite(v)) throw IngestionError(where(path, row, column) + ": non-finite value '" + cell + "'");
  return v;
}

}  // namespace

CsvTable read_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestionError("cannot read '" + path.string() + "'");
  CsvTable table;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (strip(line).empty()) continue;
    auto cells = split_cells(line);
    if (!have_header) {
      table.header = std::move(cells);
      have_header = true;
      continue;
    }
    if (cells.size() != table.header.size()) {
      throw IngestionError(path.string() + ": line " + std::to_string(lineno) + " has " + std::to_string(cells.size()) +
                           " cells, header has " + std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(cells));
  }
  if (!have_header) throw IngestionError(path.string() + ": missing header row");
  return table;
}

Table read_table(const fs::path& path, const TableSchema& schema) {
  const CsvTable csv = read_csv(path);
  const std::size_t n = csv.rows.size();

  std::optional<std::size_t> id_col, treat_col, outcome_col;
  if (!schema.id_column.empty()) id_col = column_index(csv, path, schema.id_column);
  if (!schema.treatment_column.empty()) treat_col = column_index(csv, path, schema.treatment_column);
  if (!schema.outcome_column.empty()) outcome_col = column_index(csv, path, schema.outcome_column);

  Table table;
  std::vector<std::size_t> cov_cols;
  if (schema.covariates.empty()) {
    for (std::size_t j = 0; j < csv.header.size(); ++j) {
      if (j == id_col || j == treat_col || j == outcome_col) continue;
      cov_cols.push_back(j);
      table.covariate_names.push_back(csv.header[j]);
    }
  } else {
    for (const auto& name : schema.covariates) cov_cols.push_back(column_index(csv, path, name));
    table.covariate_names = schema.covariates;
  }

  table.covariates = Matrix(n, cov_cols.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = csv.rows[i];
    for (std::size_t j = 0; j < cov_cols.size(); ++j) {
      table.covariates(i, j) = parse_cell(row[cov_cols[j]], path, i, csv.header[cov_cols[j]]);
    }
    if (id_col) {
      if (row[*id_col].empty()) throw IngestionError(where(path, i, schema.id_column) + ": empty id");
      table.ids.push_back(row[*id_col]);
    }
    if (treat_col) {
      const std::string& cell = row[*treat_col];
      if (cell != "0" && cell != "1") {
        throw IngestionError(where(path, i, schema.treatment_column) + ": treatment must be 0 or 1, got '" + cell +
                             "'");
      }
      table.treatments.push_back(cell == "1" ? 1 : 0);
    }
    if (outcome_col) {
      table.outcomes.push_back(parse_cell(row[*outcome_col], path, i, schema.outcome_column) * schema.outcome_scale);
    }
  }
  return table;
}

Dataset ingest_csv(const fs::path& path, const TableSchema& schema) {
  if (schema.treatment_column.empty() || schema.outcome_column.empty()) {
    throw IngestionError("ingest_csv needs both a treatment and an outcome column");
  }
  Table t = read_table(path, schema);
  if (t.covariates.rows() < 2) throw IngestionError(path.string() + ": need at least 2 rows");
  try {
    return make_dataset(std::move(t.covariates), std::move(t.treatments), std::move(t.outcomes));
  } catch (const Error& e) {
    throw IngestionError(path.string() + ": " + e.what());
  }
}

PartyInput ingest_party_files(const RunSettings& settings) {
  std::size_t c = 0, d = 0;
  for (const auto& [p, path] : settings.party_files) {
    c = std::max(c, p.k + 1);
    d = std::max(d, p.l + 1);
  }
  if (c == 0 || settings.party_files.size() != c * d || settings.outcome_files.size() != c) {
    throw IngestionError("party files must cover a full grid with one outcome file per row block");
  }

  PartyInput input;
  input.partition.col_sizes.assign(d, 0);
  std::vector<Matrix> row_blocks;
  Treatments treatments;
  Vector outcomes;
  for (std::size_t k = 0; k < c; ++k) {
    TableSchema outcome_schema;
    outcome_schema.id_column = settings.id_column;
    outcome_schema.covariates = {};
    outcome_schema.treatment_column = settings.treatment_column;
    outcome_schema.outcome_column = settings.outcome_column;
    const fs::path& outcome_path = settings.outcome_files[k];
    Table labels = read_table(outcome_path, outcome_schema);
    const std::size_t rows = labels.treatments.size();
    if (rows < 2) throw IngestionError(outcome_path.string() + ": need at least 2 rows");

    std::vector<Matrix> blocks;
    for (std::size_t l = 0; l < d; ++l) {
      const fs::path& path = settings.party_files.at({k, l});
      TableSchema schema;
      schema.id_column = settings.id_column;
      Table t = read_table(path, schema);
      if (t.covariates.rows() != rows) {
        throw IngestionError(path.string() + ": has " + std::to_string(t.covariates.rows()) + " rows but " +
                             outcome_path.string() + " has " + std::to_string(rows));
      }
      if (t.covariates.cols() == 0) throw IngestionError(path.string() + ": no covariate columns");
      if (!settings.id_column.empty()) {
        for (std::size_t i = 0; i < rows; ++i) {
          if (t.ids[i] != labels.ids[i]) {
            throw IngestionError(where(path, i, settings.id_column) + ": id '" + t.ids[i] + "' does not match '" +
                                 labels.ids[i] + "' in " + outcome_path.string());
          }
        }
      }
      if (k == 0) {
        input.partition.col_sizes[l] = t.covariates.cols();
        input.covariate_names.insert(input.covariate_names.end(), t.covariate_names.begin(), t.covariate_names.end());
      } else if (t.covariates.cols() != input.partition.col_sizes[l]) {
        throw IngestionError(path.string() + ": has " + std::to_string(t.covariates.cols()) +
                             " covariates, row block 1 has " + std::to_string(input.partition.col_sizes[l]));
      }
      blocks.push_back(std::move(t.covariates));
    }
    row_blocks.push_back(hconcat(blocks));
    input.partition.row_sizes.push_back(rows);
    treatments.insert(treatments.end(), labels.treatments.begin(), labels.treatments.end());
    outcomes.insert(outcomes.end(), labels.outcomes.begin(), labels.outcomes.end());
  }
  try {
    input.data = make_dataset(vconcat(row_blocks), std::move(treatments), std::move(outcomes));
  } catch (const Error& e) {
    throw IngestionError(std::string("party files: ") + e.what());
  }
  return input;
}

std::string format_real(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

void write_dataset_csv(const fs::path& path, const Dataset& data, const std::vector<std::string>& covariate_names,
                       const std::string& treatment_column, const std::string& outcome_column) {
  if (covariate_names.size() != data.covariates.cols()) {
    throw DimensionError("covariate name count does not match the dataset");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  for (const auto& name : covariate_names) out << name << ',';
  out << treatment_column << ',' << outcome_column << '\n';
  for (std::size_t i = 0; i < data.covariates.rows(); ++i) {
    for (std::size_t j = 0; j < data.covariates.cols(); ++j) out << format_real(data.covariates(i, j)) << ',';
    out << data.treatments[i] << ',' << format_real(data.outcomes[i]) << '\n';
  }
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace dcqe::io
