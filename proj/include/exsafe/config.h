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

// Experiment configuration.
//
// Config files are INI text:
//
//   # comment
//   [run]
//   scenario = subtract-attack
//   seed = 1
//   workers = 2
//   out_dir = out
//   label = baseline
//
//   [params]
//   trials = 500
//   d = 128
//
// Keys under [run] are the run settings below. Keys under [params] override
// the scenario's parameter defaults (see `exsafe --list`). Command-line
// flags win over the file.

#ifndef EXSAFE_CONFIG_H_
#define EXSAFE_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "exsafe/relations.h"
#include "exsafe/report.h"

namespace exsafe {

struct ParamDef {
  std::string key;
  std::string default_value;
  std::string help;
};

// A scenario's parameter table: defaults plus overrides, with typed reads.
// Overriding an undeclared key is a ConfigError.
class ParamSet {
 public:
  explicit ParamSet(std::vector<ParamDef> defs);

  void Override(const std::string& key, const std::string& value);
  bool Has(const std::string& key) const;

  const std::string& Raw(const std::string& key) const;
  std::uint64_t Count(const std::string& key) const;
  double Real(const std::string& key) const;
  Ratio Fraction(const std::string& key) const;
  // Comma-separated list; surrounding spaces are trimmed.
  std::vector<std::string> List(const std::string& key) const;
  std::vector<double> RealList(const std::string& key) const;

  // Every parameter with its resolved value, in declaration order.
  KeyValues Resolved() const;
  const std::vector<ParamDef>& defs() const { return defs_; }

 private:
  std::vector<ParamDef> defs_;
  std::vector<std::string> values_;
};

// Everything needed to run one scenario.
struct RunOptions {
  std::string scenario;
  std::uint64_t seed = 1;
  std::uint64_t workers = 1;
  std::filesystem::path out_dir = "out";
  std::string label;  // empty: a UTC timestamp
  KeyValues overrides;  // scenario parameters, applied in order
};

// Reads an INI config into `options`. Unknown [run] keys and unknown
// sections are ConfigErrors; [params] keys are checked when the scenario
// resolves them.
void LoadConfigFile(const std::filesystem::path& path, RunOptions& options);

// Splits "key=value". Throws ConfigError when '=' is missing.
std::pair<std::string, std::string> ParseAssignment(const std::string& text);

std::uint64_t ParseCount(const std::string& key, const std::string& text);
double ParseReal(const std::string& key, const std::string& text);

}  // namespace exsafe

#endif  // EXSAFE_CONFIG_H_
