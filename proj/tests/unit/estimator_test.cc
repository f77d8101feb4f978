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


#include "exsafe/estimator.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "exsafe/error.h"
#include "exsafe/oracle.h"

namespace exsafe {
namespace {

using AKind = AttackerSpec::Kind;
using MKind = MechanismSpec::Kind;

double HalfWidth(const Interval& ci) { return (ci.upper - ci.lower) / 2; }

TEST(WilsonTest, KnownValuesAndEdges) {
  const Interval half = WilsonInterval(5, 10);
  EXPECT_NEAR(half.lower, 0.236593, 1e-6);
  EXPECT_NEAR(half.upper, 0.763407, 1e-6);
  EXPECT_EQ(WilsonInterval(0, 100).lower, 0.0);
  EXPECT_GT(WilsonInterval(0, 100).upper, 0.0);
  EXPECT_EQ(WilsonInterval(100, 100).upper, 1.0);
  EXPECT_LT(WilsonInterval(100, 100).lower, 1.0);
}

TEST(WilsonTest, CoverageIsNominal) {
  std::mt19937_64 gen(1);
  const int trials = 1000;
  const int repetitions = 10000;
  for (double p : {0.01, 0.5}) {
    std::binomial_distribution<int> draw(trials, p);
    int covered = 0;
    for (int r = 0; r < repetitions; ++r) {
      const Interval ci = WilsonInterval(draw(gen), trials);
      covered += ci.lower <= p && p <= ci.upper;
    }
    const double rate = covered / static_cast<double>(repetitions);
    EXPECT_GE(rate, 0.93) << p;
    EXPECT_LE(rate, 0.97) << p;
  }
}

TEST(DecideTest, ConservativeRule) {
  EXPECT_EQ(Decide({0.0, 0.01}, {0.0, 0.01}, 0.0, 0.01), Verdict::kSatisfied);
  EXPECT_EQ(Decide({0.9, 1.0}, {0.0, 0.01}, 0.0, 0.1), Verdict::kViolated);
  EXPECT_EQ(Decide({0.1, 0.3}, {0.1, 0.2}, 0.0, 0.0), Verdict::kInconclusive);
  EXPECT_EQ(Decide({0.2, 0.5}, {0.2, 0.3}, std::log(2.0), 0.0),
            Verdict::kInconclusive);
  EXPECT_EQ(Decide({0.2, 0.39}, {0.2, 0.3}, std::log(2.0), 0.0),
            Verdict::kSatisfied);
}

TEST(DefinitionTest, NamesRoundTrip) {
  for (Definition d : {Definition::kVanilla, Definition::kBiCriteria,
                       Definition::kSideInfo, Definition::kSurprisalGated,
                       Definition::kTargetedGated, Definition::kMia}) {
    EXPECT_EQ(ParseDefinition(ToString(d)), d);
  }
  EXPECT_THROW(ParseDefinition("nope"), ConfigError);
  EXPECT_EQ(ToString(Verdict::kViolated), "violated");
}

GameSpec BotGame() {
  GameSpec g;
  g.name = "bot";
  g.prior = TardosParams{20, 6, 5};
  g.mechanism = {MKind::kBot, 0.0};
  g.attacker = AttackerSpec::Of(AKind::kConstantMajority);
  g.relation = RelationSpec::Hamming(Ratio(1, 3));
  g.definition = Definition::kVanilla;
  g.delta = 0.05;
  g.trials = 4000;
  g.master_seed = 99;
  return g;
}

TEST(ValidateTest, RejectsIncompatibleGames) {
  GameSpec g = BotGame();
  EXPECT_NO_THROW(Validate(g));
  GameSpec bad = g;
  bad.trials = 0;
  EXPECT_THROW(Validate(bad), ConfigError);
  bad = g;
  bad.xi = 0.0;
  EXPECT_THROW(Validate(bad), ConfigError);
  bad = g;
  bad.definition = Definition::kBiCriteria;
  EXPECT_THROW(Validate(bad), ConfigError);
  bad = g;
  bad.sideinfo = SideInfoSpec::RevealedRows(2);
  EXPECT_THROW(Validate(bad), ConfigError);
  bad = g;
  bad.definition = Definition::kSurprisalGated;
  EXPECT_THROW(Validate(bad), ConfigError);
  bad = g;
  bad.attacker = AttackerSpec::Of(AKind::kAlwaysIn);
  EXPECT_THROW(Validate(bad), ConfigError);
  bad = g;
  bad.prior = SpikedParams{100, 6, 5};
  bad.definition = Definition::kSideInfo;
  bad.sideinfo = SideInfoSpec::ShuffledPair();
  bad.attacker = AttackerSpec::Of(AKind::kConstantMajority);
  EXPECT_THROW(Validate(bad), ConfigError);
}

TEST(RunGameTest, DeterministicAcrossWorkerCounts) {
  GameSpec g = BotGame();
  g.mechanism = {MKind::kNoisyAverage, 0.5};
  g.attacker = AttackerSpec::Of(AKind::kRound);
  g.trials = 3000;
  const GameEstimate a = RunGame(g, 1);
  const GameEstimate b = RunGame(g, 3);
  EXPECT_EQ(a.lhs_successes, b.lhs_successes);
  EXPECT_EQ(a.rhs_successes, b.rhs_successes);
  EXPECT_EQ(a.lukewarm_trials, b.lukewarm_trials);
  g.master_seed += 1;
  const GameEstimate c = RunGame(g, 2);
  EXPECT_TRUE(c.lhs_successes != a.lhs_successes ||
              c.rhs_successes != a.rhs_successes);
}

TEST(RunGameTest, BotReleaseCarriesNoInformation) {
  const GameEstimate e = RunGame(BotGame(), 1);
  const double spread = std::hypot(HalfWidth(e.lhs_ci), HalfWidth(e.rhs_ci));
  EXPECT_LE(std::abs(e.lhs - e.rhs), 3 * spread);
  EXPECT_GT(e.lhs, 0.05);
}

TEST(RunGameTest, FixedGuessOnHypercubeNeverHits) {
  GameSpec g;
  g.prior = UniformHypercubeParams{64, 10};
  g.mechanism = {MKind::kBot, 0.0};
  g.attacker = AttackerSpec::Constant(BitVector(64));
  g.relation = RelationSpec::ExactMembership();
  g.delta = 0.01;
  g.trials = 1000;
  const GameEstimate e = RunGame(g);
  EXPECT_EQ(e.lhs_successes, 0u);
  EXPECT_EQ(e.rhs_successes, 0u);
  EXPECT_EQ(e.verdict, Verdict::kSatisfied);
}

TEST(RunGameTest, SpikedZeroGuessIsNeutralized) {
  GameSpec g;
  g.prior = SpikedParams{500, 32, 5};
  g.mechanism = {MKind::kBot, 0.0};
  g.attacker = AttackerSpec::Constant(BitVector(32));
  g.relation = RelationSpec::ExactMembership();
  g.delta = 0.1;
  g.trials = 2000;
  const GameEstimate e = RunGame(g);
  const double reference = 1 - std::exp2(-5.0);
  EXPECT_NEAR(e.lhs, reference, 0.02);
  EXPECT_NEAR(e.rhs, reference, 0.02);
  EXPECT_EQ(e.verdict, Verdict::kSatisfied);
}

TEST(RunGameTest, SubtractBreaksSideInfoDefinition) {
  GameSpec g;
  g.prior = TardosParams{200, 64, 50};
  g.mechanism = {MKind::kExactAverage, 0.0};
  g.attacker = AttackerSpec::Of(AKind::kSubtract);
  g.sideinfo = SideInfoSpec::RevealedRows(49);
  g.relation = RelationSpec::ExactMembership();
  g.definition = Definition::kSideInfo;
  g.delta = 0.1;
  g.trials = 2000;
  const GameEstimate e = RunGame(g);
  EXPECT_EQ(e.lhs_successes, e.trials);
  EXPECT_EQ(e.verdict, Verdict::kViolated);
  const double p = 1.0 / 151;
  EXPECT_LE(std::abs(e.rhs - p), 3 * std::sqrt(p * (1 - p) / e.trials));
}

TEST(RunGameTest, GatedGameCountsGateFailures) {
  GameSpec g;
  g.prior = TardosParams{1000, 2048, 10};
  g.mechanism = {MKind::kExactAverage, 0.0};
  g.attacker = AttackerSpec::Of(AKind::kTwoCandidate);
  g.sideinfo = SideInfoSpec::ShuffledPair();
  g.relation = RelationSpec::ExactMembership();
  g.definition = Definition::kSurprisalGated;
  g.xi = 0.5;
  g.delta = 0.05;
  g.trials = 200;
  const GameEstimate e = RunGame(g);
  // The gate can pass when the fresh candidate is itself a member of S.
  EXPECT_LE(e.lhs_successes, 10u);
  EXPECT_GE(e.gate_failures, 150u);
}

TEST(RunGameTest, AgreesWithTheExactOracle) {
  // Repeated independent runs: the oracle value lies within three Wilson
  // half-widths of the estimate in at least 99 of 100 runs.
  GameSpec g;
  g.prior = TardosParams{3, 2, 2};
  g.mechanism = {MKind::kExactAverage, 0.0};
  g.attacker = AttackerSpec::Of(AKind::kRound);
  g.relation = RelationSpec::ExactMembership();
  g.trials = 1000;
  const OracleResult exact = OracleExact(g);
  int lhs_ok = 0, rhs_ok = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    g.master_seed = seed;
    const GameEstimate e = RunGame(g);
    lhs_ok += std::abs(e.lhs - exact.lhs_value) <= 3 * HalfWidth(e.lhs_ci);
    rhs_ok += std::abs(e.rhs - exact.rhs_value) <= 3 * HalfWidth(e.rhs_ci);
  }
  EXPECT_GE(lhs_ok, 99);
  EXPECT_GE(rhs_ok, 99);
}

TEST(RunGameTest, RevealedRowsGameAgreesWithTheExactOracle) {
  GameSpec g;
  g.prior = TardosParams{4, 2, 2};
  g.mechanism = {MKind::kExactAverage, 0.0};
  g.attacker = AttackerSpec::Of(AKind::kSubtract);
  g.sideinfo = SideInfoSpec::RevealedRows(1);
  g.relation = RelationSpec::ExactMembership();
  g.definition = Definition::kSideInfo;
  g.trials = 20000;
  g.master_seed = 5;
  const OracleResult exact = OracleExact(g);
  const GameEstimate e = RunGame(g);
  EXPECT_EQ(exact.lhs_value, 1.0);
  EXPECT_EQ(e.lhs, 1.0);
  EXPECT_LE(std::abs(e.rhs - exact.rhs_value), 3 * HalfWidth(e.rhs_ci));
}

TEST(MiaTest, ParityFitMemorizes) {
  GameSpec g;
  g.prior = UniformHypercubeParams{32, 8};
  g.mechanism = {MKind::kXorParity, 0.0};
  g.attacker = AttackerSpec::Of(AKind::kParityFit);
  g.definition = Definition::kMia;
  g.xi = 0.01;
  g.trials = 5000;
  const MiaEstimate e = RunGameMia(g, 2);
  EXPECT_EQ(e.member_in, e.trials);
  EXPECT_EQ(e.m_point, 8u);
  EXPECT_TRUE(e.fpr_within_xi);
}

TEST(MiaTest, ControlsBehaveAsExpected) {
  GameSpec g;
  g.prior = UniformHypercubeParams{16, 8};
  g.mechanism = {MKind::kBot, 0.0};
  g.attacker = AttackerSpec::Of(AKind::kAlwaysIn);
  g.definition = Definition::kMia;
  g.xi = 0.5;
  g.trials = 2000;
  MiaEstimate e = RunGameMia(g);
  EXPECT_EQ(e.tpr, 1.0);
  EXPECT_EQ(e.fpr, 1.0);
  EXPECT_FALSE(e.fpr_within_xi);

  g.attacker = AttackerSpec{AKind::kBitProbe, {}, 3};
  e = RunGameMia(g);
  const double spread = std::hypot(HalfWidth(e.tpr_ci), HalfWidth(e.fpr_ci));
  EXPECT_LE(std::abs(e.tpr - e.fpr), 3 * spread);
  EXPECT_LE(e.m_point, 5u);
}

TEST(RunTrialsTest, SumsCountersAndRethrows) {
  const auto sums = RunTrials(1000, 4, 2, [](std::uint64_t t, auto& c) {
    c[0] += 1;
    c[1] += t;
  });
  EXPECT_EQ(sums[0], 1000u);
  EXPECT_EQ(sums[1], 999u * 1000u / 2);
  EXPECT_THROW(RunTrials(100, 3, 1,
                         [](std::uint64_t t, auto&) {
                           if (t == 37) throw std::runtime_error("boom");
                         }),
               std::runtime_error);
}

}  // namespace
}  // namespace exsafe
