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

#ifndef DCQE_IO_CSV_HPP_
#define DCQE_IO_CSV_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "dcqe/datamodel.hpp"
#include "dcqe/io/config.hpp"
#include "dcqe/matrix.hpp"

// Comma-separated files with a header row. Numeric cells are plain decimals;
// header names and id cells may be double-quoted.
namespace dcqe::io {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Reads a rectangular table. Blank lines are skipped; a row with the wrong
/// number of cells raises IngestionError.
CsvTable read_csv(const std::filesystem::path& path);

struct TableSchema {
  std::string id_column;  // optional
  // Covariate columns in the order wanted. Empty: every column that is not
  // the id, treatment or outcome column, in file order.
  std::vector<std::string> covariates;
  std::string treatment_column;  // optional
  std::string outcome_column;    // optional
  double outcome_scale = 1.0;
};

struct Table {
  std::vector<std::string> ids;
  std::vector<std::string> covariate_names;
  Matrix covariates;
  Treatments treatments;
  Vector outcomes;
};

/// Extracts the schema's columns. Treatments must be exactly "0" or "1";
/// every numeric cell must parse completely and be finite. Errors carry the
/// file, line and column name.
Table read_table(const std::filesystem::path& path, const TableSchema& schema);

/// A single file holding covariates, treatment and outcome.
Dataset ingest_csv(const std::filesystem::path& path, const TableSchema& schema);

struct PartyInput {
  Dataset data;
  PartitionSpec partition;
  std::vector<std::string> covariate_names;
};

/// Loads the covariate file of every party plus the treatment/outcome file
/// of every row block. With an id column, ids must agree row by row across
/// all files of a row block.
PartyInput ingest_party_files(const RunSettings& settings);

/// Writes covariates, treatment and outcome with shortest round-trip
/// formatting, so read_table recovers the values exactly.
void write_dataset_csv(const std::filesystem::path& path, const Dataset& data,
                       const std::vector<std::string>& covariate_names, const std::string& treatment_column,
                       const std::string& outcome_column);

// Shortest decimal text that parses back to the same double.
std::string format_real(double value);

}  // namespace dcqe::io

#endif  // DCQE_IO_CSV_HPP_
