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

// The scenario registry. Each scenario is a fixed set of games and checks
// with documented parameter defaults and an expected outcome per row.

#ifndef EXSAFE_SCENARIOS_H_
#define EXSAFE_SCENARIOS_H_

#include <filesystem>
#include <string>
#include <vector>

#include "exsafe/config.h"
#include "exsafe/report.h"

namespace exsafe {

struct ScenarioInfo {
  std::string name;
  std::string summary;
  std::vector<ParamDef> params;
};

// All registered scenarios, in registry order.
std::vector<ScenarioInfo> ListScenarios();

// Throws ConfigError for an unknown name.
ScenarioInfo FindScenario(const std::string& name);

// Resolves parameters, runs every game of the scenario and fills the
// manifest. Game i of a run uses master seed DeriveSeed(seed, i, auxiliary),
// so rows are reproducible one by one. Throws ConfigError for unknown
// scenarios or parameters.
ResultManifest RunScenario(const RunOptions& options);

// <out_dir>/<scenario>/<label>.
std::filesystem::path OutputDir(const RunOptions& options,
                                const ResultManifest& manifest);

// Options that replay a manifest: same scenario, seed, label and every
// resolved parameter.
RunOptions OptionsFromManifest(const ResultManifest& manifest);

}  // namespace exsafe

#endif  // EXSAFE_SCENARIOS_H_
