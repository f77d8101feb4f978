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


#include "exsafe/surprisal.h"

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "exsafe/error.h"
#include "exsafe/rng.h"
#include "support/enumeration.h"

namespace exsafe {
namespace {

namespace tt = exsafe::testing;

BitVector V(const std::string& s) { return BitVector::FromString(s); }

BitMatrix M(const tt::Rows& rows, std::size_t d) {
  std::vector<BitVector> out;
  for (const auto& r : rows) out.push_back(V(r));
  return BitMatrix(d, out);
}

std::string Bits(unsigned code, std::size_t d) {
  std::string s(d, '0');
  for (std::size_t j = 0; j < d; ++j) {
    if ((code >> j) & 1u) s[j] = '1';
  }
  return s;
}

TEST(PosteriorTest, RuleOfSuccession) {
  EXPECT_DOUBLE_EQ(PosteriorColumnMean(1, 2), 0.5);
  EXPECT_DOUBLE_EQ(PosteriorColumnMean(0, 2), 0.25);
  for (int m = 0; m < 30; ++m) {
    EXPECT_DOUBLE_EQ(PosteriorColumnMean(m, m), (m + 1.0) / (m + 2.0));
    for (int k = 0; k <= m; ++k) {
      EXPECT_NEAR(PosteriorColumnMean(k, m),
                  tt::BetaMoment(k + 1, m - k) / tt::BetaMoment(k, m - k), 1e-12);
    }
  }
  EXPECT_THROW(PosteriorColumnMean(3, 2), DomainError);
}

TEST(PosteriorTest, PairPredictiveMatchesBetaMoments) {
  for (int m = 0; m < 12; ++m) {
    for (int k = 0; k <= m; ++k) {
      double total = 0.0;
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          const double p = PairColumnPredictive(a, b, k, m);
          total += p;
          EXPECT_NEAR(p,
                      tt::BetaMoment(k + a + b, m - k + 2 - a - b) /
                          tt::BetaMoment(k, m - k),
                      1e-12);
        }
      }
      EXPECT_NEAR(total, 1.0, 1e-12);
    }
  }
}

TEST(SurprisalTest, SingleColumnValue) {
  EXPECT_NEAR(SurprisalGivenRows(V("1"), M({"1", "1"}, 1)), -std::log2(0.75),
              1e-12);
  EXPECT_NEAR(SurprisalGivenRows(V("1"), M({"1", "1"}, 1)), 0.415, 1e-3);
}

TEST(SurprisalTest, AdditiveNonnegativeAndMonotone) {
  Rng rng(1);
  for (int t = 0; t < 300; ++t) {
    const std::size_t d = 1 + rng.UniformIndex(24);
    const std::size_t m = rng.UniformIndex(10);
    tt::Rows rows;
    for (std::size_t i = 0; i < m; ++i) {
      std::string r(d, '0');
      for (char& c : r) c = rng.Bernoulli(0.5) ? '1' : '0';
      rows.push_back(r);
    }
    std::string z(d, '0');
    for (char& c : z) c = rng.Bernoulli(0.5) ? '1' : '0';
    const BitMatrix s = M(rows, d);
    const double h = SurprisalGivenRows(V(z), s);
    ASSERT_GE(h, 0.0);
    double sum = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      tt::Rows col;
      for (const auto& r : rows) col.push_back(std::string(1, r[j]));
      sum += SurprisalGivenRows(V(std::string(1, z[j])), M(col, 1));
    }
    ASSERT_NEAR(h, sum, 1e-9);
    // Moving one coordinate from the majority to the minority value.
    const BitVector mode = PosteriorMode(s);
    const std::size_t j = rng.UniformIndex(d);
    BitVector minority = mode;
    minority.set(j, !mode.get(j));
    ASSERT_LE(SurprisalGivenRows(mode, s), SurprisalGivenRows(minority, s) + 1e-12);
  }
}

TEST(SurprisalTest, PosteriorModeIsTheMinimizer) {
  Rng rng(2);
  const std::size_t d = 8;
  for (int t = 0; t < 20; ++t) {
    tt::Rows rows;
    for (int i = 0; i < 7; ++i) {
      std::string r(d, '0');
      for (char& c : r) c = rng.Bernoulli(0.3) ? '1' : '0';
      rows.push_back(r);
    }
    const BitMatrix s = M(rows, d);
    const double best = SurprisalGivenRows(PosteriorMode(s), s);
    for (unsigned code = 0; code < 256; ++code) {
      ASSERT_LE(best, SurprisalGivenRows(V(Bits(code, d)), s) + 1e-12);
    }
  }
}

TEST(SurprisalTest, MatchesEnumerationAtTinyScale) {
  // N = 3, n = 2, d = 2: one conditioning row and every candidate z.
  for (unsigned a = 0; a < 4; ++a) {
    for (unsigned b = 0; b < 4; ++b) {
      const std::string s_prime = Bits(a, 2);
      const std::string z = Bits(b, 2);
      const double reference = -std::log2(tt::MemberPredictive(3, 2, {s_prime}, z));
      EXPECT_NEAR(SurprisalGivenRows(V(z), M({s_prime}, 2)), reference, 1e-9)
          << s_prime << " " << z;
    }
  }
}

TEST(SurprisalTest, HypercubeCostsOneBitPerCoordinate) {
  const PriorSpec cube = UniformHypercubeParams{5, 3};
  EXPECT_DOUBLE_EQ(SurprisalGivenRows(V("10110"), M({"11111", "00000"}, 5), cube),
                   5.0);
  EXPECT_THROW(SurprisalGivenRows(V("1"), M({"1"}, 1), RandomSupportParams{10, 1, 2}),
               ContractError);
}

SurprisalQuery Query(const std::string& z, const tt::Rows& rows, std::size_t d,
                     SideInfoValue k) {
  return {V(z), M(rows, d), std::move(k), TardosParams{100, d, rows.size() + 1}};
}

TEST(SideinfoSurprisalTest, NoneIsThePlainSurprisal) {
  const auto q = Query("101", {"100", "111"}, 3, NoSideInfo{});
  EXPECT_DOUBLE_EQ(SurprisalGivenSideinfo(q),
                   SurprisalGivenRows(V("101"), M({"100", "111"}, 3)));
}

TEST(SideinfoSurprisalTest, RevealedRowsInsideTheRestChangeNothing) {
  const tt::Rows rest = {"1100", "0110", "0011"};
  const RevealedRows k{M({"0110", "1100"}, 4), {1, 0}};
  const auto q = Query("1010", rest, 4, k);
  EXPECT_EQ(SurprisalGivenSideinfo(q), SurprisalGivenRows(V("1010"), M(rest, 4)));
}

TEST(SideinfoSurprisalTest, RevealedRowsContainingZGiveZero) {
  const RevealedRows k{M({"1010", "1100"}, 4), {0, 1}};
  EXPECT_EQ(SurprisalGivenSideinfo(Query("1010", {"1100"}, 4, k)), 0.0);
  const RevealedRows foreign{M({"0001"}, 4), {7}};
  EXPECT_THROW(SurprisalGivenSideinfo(Query("1010", {"1100"}, 4, foreign)),
               ContractError);
}

TEST(SideinfoSurprisalTest, IdenticalPairIsCertain) {
  const ShuffledPair k{V("0110"), V("0110"), 3, 4};
  EXPECT_EQ(SurprisalGivenSideinfo(Query("0110", {"1100", "0011"}, 4, k)), 0.0);
}

TEST(SideinfoSurprisalTest, SymmetricPairIsOneBit) {
  // Balanced columns make every candidate equally likely a priori.
  const ShuffledPair k{V("1010"), V("0101"), 3, 4};
  EXPECT_NEAR(SurprisalGivenSideinfo(Query("1010", {"1100", "0011"}, 4, k)), 1.0,
              1e-12);
  EXPECT_NEAR(SurprisalGivenSideinfo(Query("0101", {}, 4, k)), 1.0, 1e-12);
}

TEST(SideinfoSurprisalTest, PairRulingOutZIsInfinite) {
  const ShuffledPair k{V("1010"), V("0101"), 3, 4};
  EXPECT_EQ(SurprisalGivenSideinfo(Query("1111", {"1100"}, 4, k)),
            std::numeric_limits<double>::infinity());
}

TEST(SideinfoSurprisalTest, PairPosteriorMatchesBruteForce) {
  Rng rng(3);
  const std::size_t d = 3;
  for (int t = 0; t < 400; ++t) {
    const std::size_t m = rng.UniformIndex(4);
    tt::Rows rows;
    for (std::size_t i = 0; i < m; ++i) rows.push_back(Bits(rng.UniformIndex(8), d));
    const std::string k1 = Bits(rng.UniformIndex(8), d);
    const std::string k2 = Bits(rng.UniformIndex(8), d);
    const std::string z = rng.Bernoulli(0.7) ? (rng.Bernoulli(0.5) ? k1 : k2)
                                             : Bits(rng.UniformIndex(8), d);
    const double p = tt::PairPosterior(rows, k1, k2, z, d);
    const double h = SurprisalGivenSideinfo(
        Query(z, rows, d, ShuffledPair{V(k1), V(k2), 0, 1}));
    if (p == 0.0) {
      ASSERT_TRUE(std::isinf(h));
    } else {
      ASSERT_NEAR(h, -std::log2(p), 1e-9) << k1 << " " << k2 << " " << z;
    }
  }
}

TEST(SideinfoSurprisalTest, GateSeparatesPairFromPlainSurprisal) {
  // With wide rows the pair pins z down to one bit while the plain
  // surprisal grows linearly in d.
  Rng rng(4);
  const std::size_t d = 512;
  std::vector<BitVector> rows;
  for (int i = 0; i < 9; ++i) {
    BitVector x(d);
    for (std::size_t j = 0; j < d; ++j) x.set(j, rng.Bernoulli(0.5));
    rows.push_back(x);
  }
  BitVector z(d), other(d);
  for (std::size_t j = 0; j < d; ++j) {
    z.set(j, rng.Bernoulli(0.5));
    other.set(j, rng.Bernoulli(0.5));
  }
  const BitMatrix rest(d, rows);
  const SurprisalQuery q{z, rest, ShuffledPair{z, other, 0, 1},
                         TardosParams{1000, d, 10}};
  const double gated = SurprisalGivenSideinfo(q);
  const double plain = SurprisalGivenRows(z, rest);
  EXPECT_LE(gated, 2.0);
  EXPECT_GE(plain, 0.2 * d);
}

TEST(SideinfoSurprisalTest, SupersetIsAContractError) {
  EXPECT_THROW(SurprisalGivenSideinfo(Query("1", {"1"}, 1, Superset{M({"1"}, 1)})),
               ContractError);
}

}  // namespace
}  // namespace exsafe
