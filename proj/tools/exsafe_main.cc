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

// exsafe: runs a registered scenario and writes its manifest and tables.
//
// Exit status: 0 when every expectation of the scenario is met, 2 when one
// is not, 1 on any operational error.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "exsafe/config.h"
#include "exsafe/error.h"
#include "exsafe/report.h"
#include "exsafe/scenarios.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitExpectationFailed = 2;

void PrintScenarios() {
  for (const exsafe::ScenarioInfo& s : exsafe::ListScenarios()) {
    std::cout << s.name << "\n  " << s.summary << "\n";
    for (const exsafe::ParamDef& p : s.params) {
      std::cout << "    " << p.key << " = " << p.default_value << "  ("
                << p.help << ")\n";
    }
  }
}

void PrintSummary(const exsafe::ResultManifest& m,
                  const std::filesystem::path& dir) {
  for (const exsafe::ResultRow& r : m.rows) {
    std::cout << m.scenario << " " << r.game << ": " << r.verdict
              << " lhs=" << exsafe::FormatReal(r.lhs)
              << " rhs=" << exsafe::FormatReal(r.rhs);
    if (!r.expectation.empty()) {
      std::cout << " [" << (r.met ? "met" : "NOT MET") << ": " << r.expectation
                << "]";
    }
    std::cout << "\n";
  }
  std::cout << "wrote " << dir.string() << "\n";
}

int Run(int argc, char** argv) {
  CLI::App app{"Monte Carlo extraction-safety games"};
  std::string config_path;
  std::string replay_path;
  std::string reemit_path;
  std::string scenario;
  std::uint64_t seed = 1;
  std::uint64_t trials = 0;
  std::uint64_t workers = 1;
  std::string out_dir;
  std::string label;
  std::vector<std::string> sets;
  bool list = false;

  app.add_flag("--list", list, "List scenarios and their parameters");
  app.add_option("--config", config_path, "INI config file")
      ->check(CLI::ExistingFile);
  app.add_option("--replay", replay_path,
                 "Re-run the scenario recorded in a manifest.json")
      ->check(CLI::ExistingFile);
  app.add_option("--reemit", reemit_path,
                 "Rewrite the tables of a manifest.json without running")
      ->check(CLI::ExistingFile);
  auto* scenario_opt = app.add_option("--scenario", scenario, "Scenario name");
  auto* seed_opt = app.add_option("--seed", seed, "Master seed");
  auto* trials_opt =
      app.add_option("--trials", trials, "Override the scenario's trials");
  auto* workers_opt =
      app.add_option("--workers", workers, "Worker threads")->check(
          CLI::PositiveNumber);
  auto* out_opt = app.add_option("--out-dir", out_dir, "Output root");
  auto* label_opt =
      app.add_option("--label", label, "Run label (default: UTC timestamp)");
  app.add_option("--set", sets, "Parameter override key=value (repeatable)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  if (list) {
    PrintScenarios();
    return kExitOk;
  }
  if (!reemit_path.empty()) {
    const exsafe::ResultManifest m = exsafe::ReadManifest(reemit_path);
    const std::filesystem::path dir =
        out_dir.empty() ? std::filesystem::path(reemit_path).parent_path()
                        : std::filesystem::path(out_dir);
    exsafe::EmitOutputs(m, dir);
    std::cout << "wrote " << dir.string() << "\n";
    return m.expectations_met ? kExitOk : kExitExpectationFailed;
  }

  exsafe::RunOptions options;
  if (!replay_path.empty()) {
    options = exsafe::OptionsFromManifest(exsafe::ReadManifest(replay_path));
  }
  if (!config_path.empty()) exsafe::LoadConfigFile(config_path, options);
  if (scenario_opt->count() > 0) options.scenario = scenario;
  if (seed_opt->count() > 0) options.seed = seed;
  if (workers_opt->count() > 0) options.workers = workers;
  if (out_opt->count() > 0) options.out_dir = out_dir;
  if (label_opt->count() > 0) options.label = label;
  if (trials_opt->count() > 0) {
    options.overrides.emplace_back("trials", std::to_string(trials));
  }
  for (const std::string& s : sets) {
    options.overrides.push_back(exsafe::ParseAssignment(s));
  }
  if (options.scenario.empty()) {
    throw exsafe::ConfigError("no scenario given (use --scenario or --list)");
  }

  const exsafe::ResultManifest m = exsafe::RunScenario(options);
  const std::filesystem::path dir = exsafe::OutputDir(options, m);
  exsafe::EmitOutputs(m, dir);
  PrintSummary(m, dir);
  return m.expectations_met ? kExitOk : kExitExpectationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return Run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "exsafe: " << e.what() << "\n";
    return kExitError;
  }
}
