// Copyright 2026 The exsafe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "exsafe/report.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "exsafe/error.h"
#include "json.hpp"

namespace exsafe {
namespace {

using nlohmann::ordered_json;

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

ordered_json KeyValuesToJson(const KeyValues& kv) {
  ordered_json out = ordered_json::object();
  for (const auto& [k, v] : kv) out[k] = v;
  return out;
}

KeyValues KeyValuesFromJson(const ordered_json& j) {
  KeyValues out;
  for (const auto& [k, v] : j.items()) out.emplace_back(k, v.get<std::string>());
  return out;
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) throw IoError("cannot write " + path.string());
}

}  // namespace

std::string FormatReal(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

std::string ManifestToJson(const ResultManifest& m) {
  ordered_json j;
  j["artifact_version"] = m.artifact_version;
  j["scenario"] = m.scenario;
  j["label"] = m.label;
  j["seed"] = m.seed;
  j["workers"] = m.workers;
  j["started_at"] = m.started_at;
  j["wall_clock_seconds"] = m.wall_clock_seconds;
  j["params"] = KeyValuesToJson(m.params);
  j["constants"] = KeyValuesToJson(m.constants);
  j["expectations_met"] = m.expectations_met;
  j["rows"] = ordered_json::array();
  for (const ResultRow& r : m.rows) {
    j["rows"].push_back({{"game", r.game},
                         {"definition", r.definition},
                         {"params", r.params},
                         {"trials", r.trials},
                         {"lhs_successes", r.lhs_successes},
                         {"lhs", r.lhs},
                         {"lhs_lower", r.lhs_lower},
                         {"lhs_upper", r.lhs_upper},
                         {"rhs_successes", r.rhs_successes},
                         {"rhs", r.rhs},
                         {"rhs_lower", r.rhs_lower},
                         {"rhs_upper", r.rhs_upper},
                         {"verdict", r.verdict},
                         {"expectation", r.expectation},
                         {"met", r.met},
                         {"detail", r.detail}});
  }
  j["series"] = ordered_json::array();
  for (const Series& s : m.series) {
    ordered_json points = ordered_json::array();
    for (const auto& [x, y] : s.points) points.push_back({x, y});
    j["series"].push_back({{"name", s.name},
                           {"x_label", s.x_label},
                           {"y_label", s.y_label},
                           {"points", points}});
  }
  return j.dump(2) + "\n";
}

ResultManifest ManifestFromJson(const std::string& text) {
  try {
    const ordered_json j = ordered_json::parse(text);
    ResultManifest m;
    m.artifact_version = j.at("artifact_version").get<std::string>();
    m.scenario = j.at("scenario").get<std::string>();
    m.label = j.at("label").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.workers = j.at("workers").get<std::uint64_t>();
    m.started_at = j.at("started_at").get<std::string>();
    m.wall_clock_seconds = j.at("wall_clock_seconds").get<double>();
    m.params = KeyValuesFromJson(j.at("params"));
    m.constants = KeyValuesFromJson(j.at("constants"));
    m.expectations_met = j.at("expectations_met").get<bool>();
    for (const auto& r : j.at("rows")) {
      ResultRow row;
      row.game = r.at("game").get<std::string>();
      row.definition = r.at("definition").get<std::string>();
      row.params = r.at("params").get<std::string>();
      row.trials = r.at("trials").get<std::uint64_t>();
      row.lhs_successes = r.at("lhs_successes").get<std::uint64_t>();
      row.lhs = r.at("lhs").get<double>();
      row.lhs_lower = r.at("lhs_lower").get<double>();
      row.lhs_upper = r.at("lhs_upper").get<double>();
      row.rhs_successes = r.at("rhs_successes").get<std::uint64_t>();
      row.rhs = r.at("rhs").get<double>();
      row.rhs_lower = r.at("rhs_lower").get<double>();
      row.rhs_upper = r.at("rhs_upper").get<double>();
      row.verdict = r.at("verdict").get<std::string>();
      row.expectation = r.at("expectation").get<std::string>();
      row.met = r.at("met").get<bool>();
      row.detail = r.at("detail").get<std::string>();
      m.rows.push_back(std::move(row));
    }
    for (const auto& s : j.at("series")) {
      Series series;
      series.name = s.at("name").get<std::string>();
      series.x_label = s.at("x_label").get<std::string>();
      series.y_label = s.at("y_label").get<std::string>();
      for (const auto& p : s.at("points")) {
        series.points.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
      }
      m.series.push_back(std::move(series));
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed manifest: ") + e.what());
  }
}

ResultManifest ReadManifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return ManifestFromJson(text.str());
}

std::string ResultsCsv(const ResultManifest& m) {
  std::ostringstream out;
  out << kResultsHeader << "\n";
  for (const ResultRow& r : m.rows) {
    out << CsvField(m.scenario) << ',' << CsvField(r.game) << ','
        << CsvField(r.definition) << ',' << CsvField(r.params) << ','
        << r.trials << ',' << r.lhs_successes << ',' << FormatReal(r.lhs)
        << ',' << FormatReal(r.lhs_lower) << ',' << FormatReal(r.lhs_upper)
        << ',' << r.rhs_successes << ',' << FormatReal(r.rhs) << ','
        << FormatReal(r.rhs_lower) << ',' << FormatReal(r.rhs_upper) << ','
        << CsvField(r.verdict) << ',' << CsvField(r.expectation) << ','
        << (r.met ? "true" : "false") << ',' << CsvField(r.detail) << "\n";
  }
  return out.str();
}

std::string SeriesCsv(const Series& s) {
  std::ostringstream out;
  out << CsvField(s.x_label) << ',' << CsvField(s.y_label) << "\n";
  for (const auto& [x, y] : s.points) {
    out << FormatReal(x) << ',' << FormatReal(y) << "\n";
  }
  return out.str();
}

void EmitOutputs(const ResultManifest& m, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  WriteFile(dir / "manifest.json", ManifestToJson(m));
  WriteFile(dir / "results.csv", ResultsCsv(m));
  for (const Series& s : m.series) {
    WriteFile(dir / ("series-" + s.name + ".csv"), SeriesCsv(s));
  }
}

}  // namespace exsafe
