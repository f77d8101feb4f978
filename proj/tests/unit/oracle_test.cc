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


#include "exsafe/oracle.h"

#include <cmath>

#include <gtest/gtest.h>

#include "exsafe/error.h"
#include "support/enumeration.h"

namespace exsafe {
namespace {

namespace tt = exsafe::testing;
using AKind = AttackerSpec::Kind;
using MKind = MechanismSpec::Kind;

tt::Rows Strings(const RowMultiset& rows) {
  tt::Rows out;
  for (const BitVector& r : rows) out.push_back(r.ToString());
  return tt::Sorted(out);
}

TEST(OracleTest, SingleRowConstantGuessIsOneHalf) {
  GameSpec g;
  g.prior = TardosParams{2, 1, 1};
  g.mechanism = {MKind::kBot, 0.0};
  g.attacker = AttackerSpec::Constant(BitVector::FromString("1"));
  g.relation = RelationSpec::ExactMembership();
  const OracleResult r = OracleExact(g);
  EXPECT_EQ(r.lhs, Rational(1, 2));
  EXPECT_EQ(r.rhs, Rational(1, 2));
  EXPECT_EQ(r.lhs_value, 0.5);
}

TEST(OracleTest, CodebookWeightsMatchQuadrature) {
  Rational total = 0;
  tt::ForEachCodebook(2, 2, [&](const tt::Rows& c, double w) {
    std::vector<BitVector> rows;
    for (const auto& r : c) rows.push_back(BitVector::FromString(r));
    const Rational exact = CodebookWeight(BitMatrix(2, rows));
    total += exact;
    EXPECT_NEAR(static_cast<double>(exact), w, 1e-12);
  });
  EXPECT_EQ(total, 1);
}

TEST(OracleTest, MemberPredictiveMatchesBruteForce) {
  for (const char* s : {"00", "01", "11"}) {
    for (const char* z : {"00", "10", "11"}) {
      const Rational p = OracleMemberPredictive(
          TardosParams{3, 2, 2}, BitMatrix::FromStrings({s}),
          BitVector::FromString(z));
      EXPECT_NEAR(static_cast<double>(p), tt::MemberPredictive(3, 2, {s}, z),
                  1e-12);
    }
  }
  const Rational p = OracleMemberPredictive(
      TardosParams{4, 1, 3}, BitMatrix::FromStrings({"1", "0"}),
      BitVector::FromString("1"));
  EXPECT_NEAR(static_cast<double>(p), tt::MemberPredictive(4, 1, {"1", "0"}, "1"),
              1e-12);
}

TEST(OracleTest, FreshJointLawMatchesBruteForce) {
  const auto exact = OracleJointFreshLaw(TardosParams{3, 1, 2});
  std::map<std::pair<tt::Rows, tt::Rows>, double> converted;
  Rational total = 0;
  for (const auto& [key, p] : exact) {
    converted[{Strings(key.first), Strings(key.second)}] += static_cast<double>(p);
    total += p;
  }
  EXPECT_EQ(total, 1);
  EXPECT_LE(tt::TotalVariation(converted, tt::FreshJointLaw(3, 1, 2)), 1e-12);
}

TEST(OracleTest, ConditionalLawMatchesBruteForce) {
  const auto exact = OracleConditionalTLaw(TardosParams{3, 2, 2}, 1);
  const auto reference = tt::RevealedConditionalLaw(3, 2, 2, 1);
  ASSERT_EQ(exact.size(), reference.size());
  for (const auto& [k, law] : exact) {
    tt::Rows key;
    for (const BitVector& r : k) key.push_back(r.ToString());
    std::map<tt::Rows, double> converted;
    for (const auto& [s, p] : law) converted[Strings(s)] += static_cast<double>(p);
    ASSERT_TRUE(reference.count(key));
    EXPECT_LE(tt::TotalVariation(converted, reference.at(key)), 1e-12);
  }
}

TEST(OracleTest, XorMutualInformation) {
  EXPECT_NEAR(MutualInformationXor(1, 2), 1.0, 1e-9);
  EXPECT_NEAR(MutualInformationXor(2, 2), 2.0, 1e-9);
  EXPECT_NEAR(MutualInformationXor(1, 4), 2.0, 1e-9);
  EXPECT_NEAR(MutualInformationXor(3, 4), 6.0, 1e-9);
  EXPECT_ANY_THROW(MutualInformationXor(1, 3));
}

TEST(OracleTest, RejectsUnsupportedGames) {
  GameSpec g;
  g.prior = TardosParams{5, 4, 2};
  g.mechanism = {MKind::kExactAverage, 0.0};
  g.attacker = AttackerSpec::Of(AKind::kRound);
  g.relation = RelationSpec::ExactMembership();
  EXPECT_THROW(OracleExact(g), ParameterError);
  g.prior = TardosParams{3, 2, 2};
  g.mechanism = {MKind::kNoisyAverage, 0.5};
  EXPECT_THROW(OracleExact(g), ConfigError);
  g.prior = UniformHypercubeParams{2, 2};
  g.mechanism = {MKind::kExactAverage, 0.0};
  EXPECT_THROW(OracleExact(g), ConfigError);
}

}  // namespace
}  // namespace exsafe
