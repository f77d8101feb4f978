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

// Result manifests and the files written from them.
//
// Output layout for one run:
//   <out_dir>/<scenario>/<label>/manifest.json
//   <out_dir>/<scenario>/<label>/results.csv
//   <out_dir>/<scenario>/<label>/series-<name>.csv   (sweeps only)
//
// Every file is a pure function of the manifest, so re-emitting a loaded
// manifest reproduces the files byte for byte. results.csv and the series
// files carry no timing information.

#ifndef EXSAFE_REPORT_H_
#define EXSAFE_REPORT_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace exsafe {

inline constexpr char kArtifactVersion[] = "0.1.0";

inline constexpr char kResultsHeader[] =
    "scenario,game,definition,params,trials,lhs_successes,lhs,lhs_lower,"
    "lhs_upper,rhs_successes,rhs,rhs_lower,rhs_upper,verdict,expectation,met,"
    "detail";

// One row of results.csv. Game rows fill the lhs/rhs columns with the two
// estimated probabilities. Check rows (definition "check") put the measured
// statistic in lhs and the threshold it is compared with in rhs.
struct ResultRow {
  std::string game;
  std::string definition;
  std::string params;
  std::uint64_t trials = 0;
  std::uint64_t lhs_successes = 0;
  double lhs = 0.0;
  double lhs_lower = 0.0;
  double lhs_upper = 0.0;
  std::uint64_t rhs_successes = 0;
  double rhs = 0.0;
  double rhs_lower = 0.0;
  double rhs_upper = 0.0;
  std::string verdict;
  std::string expectation;  // empty when the row is informational
  bool met = true;
  std::string detail;  // semicolon-separated key=value diagnostics
};

// A plot-ready two-column series.
struct Series {
  std::string name;
  std::string x_label;
  std::string y_label;
  std::vector<std::pair<double, double>> points;
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

struct ResultManifest {
  std::string artifact_version = kArtifactVersion;
  std::string scenario;
  std::string label;
  std::uint64_t seed = 0;
  std::uint64_t workers = 1;
  KeyValues params;     // every resolved scenario parameter
  KeyValues constants;  // resolved constants such as c_delta, xi, gamma_hat
  std::vector<ResultRow> rows;
  std::vector<Series> series;
  bool expectations_met = true;
  double wall_clock_seconds = 0.0;
  std::string started_at;  // UTC, ISO 8601
};

// Nine significant digits, as used in every CSV file.
std::string FormatReal(double x);

std::string ManifestToJson(const ResultManifest& manifest);
// Throws IoError on malformed input.
ResultManifest ManifestFromJson(const std::string& text);
ResultManifest ReadManifest(const std::filesystem::path& path);

std::string ResultsCsv(const ResultManifest& manifest);
std::string SeriesCsv(const Series& series);

// Writes all files into `dir`, creating it. Throws IoError on failure.
void EmitOutputs(const ResultManifest& manifest,
                 const std::filesystem::path& dir);

}  // namespace exsafe

#endif  // EXSAFE_REPORT_H_
