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

// Monte Carlo security games, Wilson intervals and the verdict rule.
//
// Each trial couples both sides of the inequality on one sample path: the
// same Nature, S, K, release and reconstruction z feed the LHS event on S
// and the RHS event on a second dataset T (fresh, or drawn given K). A
// "satisfied" verdict means no implemented attack violates the bound at the
// chosen confidence; it is never a proof over all attackers.

#ifndef EXSAFE_ESTIMATOR_H_
#define EXSAFE_ESTIMATOR_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "exsafe/attackers.h"
#include "exsafe/mechanisms.h"
#include "exsafe/prior.h"
#include "exsafe/relations.h"
#include "exsafe/sideinfo.h"

namespace exsafe {

// Two-sided 95% normal quantile.
inline constexpr double kWilsonZ = 1.959963984540054;

struct Interval {
  double lower = 0.0;
  double upper = 1.0;
};

// 95% Wilson score interval, clamped to [0, 1]. Exactly 0 below when
// successes == 0 and exactly 1 above when successes == trials.
Interval WilsonInterval(std::uint64_t successes, std::uint64_t trials);

enum class Definition {
  kVanilla,         // Pr[R(S,z)] <= e^eps Pr[R(T,z)] + delta, T fresh
  kBiCriteria,      // as vanilla with R-hat on the right
  kSideInfo,        // T drawn from Nature given K
  kSurprisalGated,  // z in S and it passes the surprisal gate
  kTargetedGated,   // some row x with R(x,z) passes the surprisal gate
  kMia,             // membership-inference memorization game
};

std::string ToString(Definition definition);
// Throws ConfigError on an unknown name.
Definition ParseDefinition(std::string_view name);

enum class Verdict { kSatisfied, kViolated, kInconclusive };

std::string ToString(Verdict verdict);

// Satisfied iff lhs.upper <= e^eps rhs.lower + delta; violated iff
// lhs.lower > e^eps rhs.upper + delta; inconclusive otherwise.
Verdict Decide(const Interval& lhs, const Interval& rhs, double epsilon,
               double delta);

struct GameSpec {
  std::string name;
  PriorSpec prior;
  MechanismSpec mechanism;
  AttackerSpec attacker;
  SideInfoSpec sideinfo;
  RelationSpec relation;
  std::optional<RelationSpec> relation_hat;  // kBiCriteria only.
  Definition definition = Definition::kVanilla;
  double epsilon = 0.0;
  double delta = 0.0;
  double xi = 1.0;
  std::uint64_t trials = 1;
  std::uint64_t master_seed = 0;
};

// Throws ConfigError for invalid or incompatible component choices.
void Validate(const GameSpec& spec);

struct GameEstimate {
  std::uint64_t trials = 0;
  std::uint64_t lhs_successes = 0;
  std::uint64_t rhs_successes = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  Interval lhs_ci;
  Interval rhs_ci;
  Verdict verdict = Verdict::kInconclusive;
  // Trials whose S had at least d/5 lukewarm columns.
  std::uint64_t lukewarm_trials = 0;
  // Gated games: trials where the relation held but no matching row passed
  // the surprisal gate.
  std::uint64_t gate_failures = 0;
};

GameEstimate RunGame(const GameSpec& spec, std::size_t workers = 1);

struct MiaEstimate {
  std::uint64_t trials = 0;
  std::uint64_t member_in = 0;  // In answers on a row of S
  std::uint64_t fresh_in = 0;   // In answers on a fresh draw from Nature
  double tpr = 0.0;
  double fpr = 0.0;
  Interval tpr_ci;
  Interval fpr_ci;
  std::size_t n = 0;
  // Largest m with tpr_ci.lower >= m/n, and with the point estimate.
  std::size_t m_lower = 0;
  std::size_t m_point = 0;
  bool fpr_within_xi = false;  // fpr_ci.upper <= xi
};

MiaEstimate RunGameMia(const GameSpec& spec, std::size_t workers = 1);

// Runs fn(trial, counters) for every trial on a pool of workers. Each worker
// owns a zeroed vector of `width` counters; the result is their sum, so it
// does not depend on the schedule. The first exception thrown by fn is
// rethrown after all workers stop.
std::vector<std::uint64_t> RunTrials(
    std::uint64_t trials, std::size_t workers, std::size_t width,
    const std::function<void(std::uint64_t, std::vector<std::uint64_t>&)>& fn);

}  // namespace exsafe

#endif  // EXSAFE_ESTIMATOR_H_
