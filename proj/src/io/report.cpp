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

#include "dcqe/io/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "dcqe/error.hpp"
#include "dcqe/io/csv.hpp"
#include "json.hpp"

namespace dcqe::io {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string opt_real(const std::optional<double>& v) { return v ? format_real(*v) : std::string(); }

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

std::string mean_se(const MetricSummary& s) { return fixed4(s.mean) + " (" + fixed4(s.se) + ")"; }

json summary_json(const MetricSummary& s) { return {{"mean", s.mean}, {"se", s.se}, {"point", s.point}}; }

MetricSummary summary_from(const json& j) {
  return {j.at("mean").get<double>(), j.at("se").get<double>(), j.at("point").get<double>()};
}

Method method_from(const std::string& s) {
  if (s == "PSM") return Method::kPsm;
  if (s == "IPW") return Method::kIpw;
  throw IoError("unknown method '" + s + "' in report");
}

Estimand estimand_from(const std::string& s) {
  if (s == "ATE") return Estimand::kAte;
  if (s == "ATT") return Estimand::kAtt;
  throw IoError("unknown estimand '" + s + "' in report");
}

Analysis analysis_from(const std::string& s) {
  for (Analysis a : {Analysis::kDcqe, Analysis::kCentralized, Analysis::kIndividual}) {
    if (s == analysis_name(a)) return a;
  }
  throw IoError("unknown analysis '" + s + "' in report");
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace

std::string results_csv(const std::vector<ScenarioResult>& results, std::uint64_t seed) {
  std::ostringstream out;
  out << "estimator,collaboration,method,estimand,analysis,subjects,collaborative_dim,replicates,"
         "estimate_mean,estimate_se,estimate_point,benchmark,gap,"
         "inconsistency_true_mean,inconsistency_true_se,inconsistency_true_point,"
         "inconsistency_ca_mean,inconsistency_ca_se,inconsistency_ca_point,"
         "masmd_mean,masmd_se,masmd_point,seed\n";
  for (const auto& r : results) {
    out << r.estimator << ',' << r.collaboration << ',' << method_name(r.method) << ',' << estimand_name(r.estimand)
        << ',' << analysis_name(r.analysis) << ',' << r.subjects << ',' << r.collaborative_dim << ','
        << r.bootstrap.estimates.size() << ',' << format_real(r.estimate.mean) << ',' << format_real(r.estimate.se)
        << ',' << format_real(r.estimate.point) << ',' << opt_real(r.benchmark) << ',' << opt_real(r.gap) << ',';
    if (r.inconsistency_true) {
      out << format_real(r.inconsistency_true->mean) << ',' << format_real(r.inconsistency_true->se) << ','
          << format_real(r.inconsistency_true->point) << ',';
    } else {
      out << ",,,";
    }
    out << format_real(r.inconsistency_ca.mean) << ',' << format_real(r.inconsistency_ca.se) << ','
        << format_real(r.inconsistency_ca.point) << ',' << format_real(r.masmd.mean) << ','
        << format_real(r.masmd.se) << ',' << format_real(r.masmd.point) << ',' << seed << '\n';
  }
  return out.str();
}

std::string results_json(const std::vector<ScenarioResult>& results, const ReportContext& context) {
  json scenarios = json::array();
  for (const auto& r : results) {
    json j = {{"estimator", r.estimator},
              {"collaboration", r.collaboration},
              {"method", method_name(r.method)},
              {"estimand", estimand_name(r.estimand)},
              {"analysis", analysis_name(r.analysis)},
              {"subjects", r.subjects},
              {"collaborative_dim", r.collaborative_dim},
              {"estimate", summary_json(r.estimate)},
              {"benchmark", r.benchmark ? json(*r.benchmark) : json(nullptr)},
              {"gap", r.gap ? json(*r.gap) : json(nullptr)},
              {"inconsistency_true", r.inconsistency_true ? summary_json(*r.inconsistency_true) : json(nullptr)},
              {"inconsistency_ca", summary_json(r.inconsistency_ca)},
              {"masmd", summary_json(r.masmd)},
              {"smd", r.smd},
              {"bootstrap",
               {{"method", method_name(r.bootstrap.method)},
                {"estimand", estimand_name(r.bootstrap.estimand)},
                {"estimates", r.bootstrap.estimates}}}};
    scenarios.push_back(std::move(j));
  }
  json root = {{"seed", context.seed}, {"isa", context.isa}, {"config", context.config_text}, {"scenarios", scenarios}};
  return root.dump(2) + "\n";
}

std::vector<ScenarioResult> results_from_json(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed report: ") + e.what());
  }
  std::vector<ScenarioResult> out;
  try {
    for (const auto& j : root.at("scenarios")) {
      ScenarioResult r;
      r.estimator = j.at("estimator").get<std::string>();
      r.collaboration = j.at("collaboration").get<std::string>();
      r.method = method_from(j.at("method").get<std::string>());
      r.estimand = estimand_from(j.at("estimand").get<std::string>());
      r.analysis = analysis_from(j.at("analysis").get<std::string>());
      r.subjects = j.at("subjects").get<std::size_t>();
      r.collaborative_dim = j.at("collaborative_dim").get<std::size_t>();
      r.estimate = summary_from(j.at("estimate"));
      if (!j.at("benchmark").is_null()) r.benchmark = j.at("benchmark").get<double>();
      if (!j.at("gap").is_null()) r.gap = j.at("gap").get<double>();
      if (!j.at("inconsistency_true").is_null()) r.inconsistency_true = summary_from(j.at("inconsistency_true"));
      r.inconsistency_ca = summary_from(j.at("inconsistency_ca"));
      r.masmd = summary_from(j.at("masmd"));
      r.smd = j.at("smd").get<Vector>();
      const auto& b = j.at("bootstrap");
      r.bootstrap.method = method_from(b.at("method").get<std::string>());
      r.bootstrap.estimand = estimand_from(b.at("estimand").get<std::string>());
      r.bootstrap.estimates = b.at("estimates").get<Vector>();
      out.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed report: ") + e.what());
  }
  return out;
}

std::string results_table(const std::vector<ScenarioResult>& results) {
  const std::string effect = results.empty() ? "ATE" : std::string(estimand_name(results.front().estimand));
  std::vector<std::vector<std::string>> rows = {
      {"Estimator", "Collaboration", effect, "Gap", "InconsistencyTrue", "InconsistencyCA", "MASMD"}};
  for (const auto& r : results) {
    const bool centralized = r.analysis == Analysis::kCentralized;
    rows.push_back({r.estimator, r.collaboration, mean_se(r.estimate), r.gap ? fixed4(*r.gap) : "-",
                    r.inconsistency_true ? mean_se(*r.inconsistency_true) : "-",
                    centralized ? "-" : mean_se(r.inconsistency_ca), mean_se(r.masmd)});
  }
  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) width[j] = std::max(width[j], row[j].size());
  }
  std::ostringstream out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::string line;
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      line += j + 1 < rows[i].size() ? pad(rows[i][j], width[j] + 2) : rows[i][j];
    }
    out << line << '\n';
    if (i == 0) {
      std::size_t total = 0;
      for (std::size_t w : width) total += w + 2;
      out << std::string(total - 2, '-') << '\n';
    }
  }
  return out.str();
}

std::string bootstrap_csv(const std::vector<ScenarioResult>& results) {
  std::ostringstream out;
  out << "estimator,collaboration,replicate,estimate\n";
  for (const auto& r : results) {
    for (std::size_t b = 0; b < r.bootstrap.estimates.size(); ++b) {
      out << r.estimator << ',' << r.collaboration << ',' << b << ',' << format_real(r.bootstrap.estimates[b]) << '\n';
    }
  }
  return out.str();
}

std::vector<fs::path> emit_report(const std::vector<ScenarioResult>& results, const ReportContext& context,
                                  const OutputSettings& settings) {
  if (results.empty()) throw IoError("no results to report");
  std::error_code ec;
  fs::create_directories(settings.dir, ec);
  if (ec) throw IoError("cannot create '" + settings.dir.string() + "': " + ec.message());

  std::vector<fs::path> written;
  for (OutputFormat f : settings.formats) {
    fs::path path;
    switch (f) {
      case OutputFormat::kCsv:
        path = settings.dir / "results.csv";
        write_file(path, results_csv(results, context.seed));
        break;
      case OutputFormat::kJson:
        path = settings.dir / "results.json";
        write_file(path, results_json(results, context));
        break;
      case OutputFormat::kText:
        path = settings.dir / "results.txt";
        write_file(path, results_table(results));
        break;
    }
    written.push_back(path);
  }
  if (settings.bootstrap_sidecar) {
    const fs::path path = settings.dir / "bootstrap.csv";
    write_file(path, bootstrap_csv(results));
    written.push_back(path);
  }
  return written;
}

}  // namespace dcqe::io
