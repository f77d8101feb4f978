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


#include "exsafe/mechanisms.h"

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "exsafe/error.h"
#include "exsafe/prior.h"

namespace exsafe {
namespace {

BitMatrix RandomMatrix(std::size_t n, std::size_t d, Rng& rng) {
  std::vector<BitVector> rows;
  for (std::size_t i = 0; i < n; ++i) {
    BitVector x(d);
    for (std::size_t j = 0; j < d; ++j) x.set(j, rng.Bernoulli(0.5));
    rows.push_back(x);
  }
  return BitMatrix(d, rows);
}

TEST(ExactAverageTest, HandCases) {
  EXPECT_EQ(ExactAverage(BitMatrix::FromStrings({"01", "11"})),
            (RealVector{0.5, 1.0}));
  EXPECT_EQ(ExactAverage(BitMatrix::FromStrings({"000", "000"})),
            (RealVector{0.0, 0.0, 0.0}));
  EXPECT_EQ(ExactAverage(BitMatrix::FromStrings({"110"})),
            (RealVector{1.0, 1.0, 0.0}));
}

TEST(NoisyAverageTest, NoiseIsZeroMeanLaplace) {
  Rng data(1);
  const BitMatrix s = RandomMatrix(10, 4, data);
  const NoiseParams noise{0.5, 10};
  const double b = noise.Scale();
  const RealVector avg = ExactAverage(s);
  const int trials = 100000;
  std::vector<double> sum(4, 0.0), sq(4, 0.0);
  Rng rng(2);
  for (int t = 0; t < trials; ++t) {
    const RealVector y = NoisyAverage(s, noise, rng);
    for (int j = 0; j < 4; ++j) {
      sum[j] += y[j] - avg[j];
      sq[j] += (y[j] - avg[j]) * (y[j] - avg[j]);
    }
  }
  for (int j = 0; j < 4; ++j) {
    const double mean = sum[j] / trials;
    EXPECT_LE(std::abs(mean), 3 * b / std::sqrt(static_cast<double>(trials)));
    EXPECT_NEAR((sq[j] / trials - mean * mean) / (2 * b * b), 1.0, 0.05);
  }
}

TEST(NoisyAverageTest, VanishingNoiseRecoversAverage) {
  Rng data(3), rng(4);
  const BitMatrix s = RandomMatrix(7, 16, data);
  const RealVector y = NoisyAverage(s, NoiseParams{1e9, 7}, rng);
  const RealVector avg = ExactAverage(s);
  for (std::size_t j = 0; j < 16; ++j) EXPECT_NEAR(y[j], avg[j], 1e-6);
}

TEST(NoisyAverageTest, RejectsBadParameters) {
  EXPECT_THROW(NoiseParams({0.0, 5}).Validate(), ParameterError);
  EXPECT_THROW(NoiseParams({1.0, 0}).Validate(), ParameterError);
}

TEST(XorParityTest, HandCases) {
  EXPECT_EQ(XorParity(BitMatrix::FromStrings({"01"})).h,
            BitMatrix::FromStrings({"1"}));
  EXPECT_EQ(XorParity(BitMatrix::FromStrings({"01", "11"})).h,
            BitMatrix::FromStrings({"1", "0"}));
  EXPECT_EQ(XorParity(BitMatrix::FromStrings({"10"})).h,
            XorParity(BitMatrix::FromStrings({"01"})).h);
  EXPECT_EQ(PairSignature(BitVector::FromString("011011")),
            BitVector::FromString("110"));
  EXPECT_THROW(XorParity(BitMatrix::FromStrings({"011"})), DimensionError);
}

TEST(XorParityTest, FlippingAPairLeavesReleaseUnchanged) {
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    const BitMatrix s = RandomMatrix(4, 20, rng);
    std::vector<BitVector> rows = s.row_list();
    const std::size_t i = rng.UniformIndex(4);
    const std::size_t j = rng.UniformIndex(10);
    rows[i].set(2 * j, !rows[i].get(2 * j));
    rows[i].set(2 * j + 1, !rows[i].get(2 * j + 1));
    ASSERT_EQ(XorParity(BitMatrix(20, rows)).h, XorParity(s).h);
  }
}

TEST(BotTest, ConstantRelease) {
  Rng rng(6);
  const Release a = ApplyMechanism({MechanismSpec::Kind::kBot, 0.0},
                                   BitMatrix::FromStrings({"01"}), rng);
  const Release b = ApplyMechanism({MechanismSpec::Kind::kBot, 0.0},
                                   BitMatrix::FromStrings({"10"}), rng);
  EXPECT_TRUE(std::holds_alternative<BotRelease>(a));
  EXPECT_TRUE(std::holds_alternative<BotRelease>(b));
}

TEST(DpRatioTest, IdenticalDatasetsGiveZero) {
  Rng rng(7);
  const BitMatrix s = RandomMatrix(5, 8, rng);
  const RealVector y = NoisyAverage(s, NoiseParams{0.3, 5}, rng);
  EXPECT_EQ(DpLogDensityRatio(y, s, s, NoiseParams{0.3, 5}), 0.0);
}

TEST(DpRatioTest, SingleCoordinateAtMidpoint) {
  const BitMatrix s = BitMatrix::FromStrings({"00", "10"});
  const BitMatrix s2 = BitMatrix::FromStrings({"00", "00"});
  const NoiseParams noise{0.4, 2};
  const RealVector y{0.25, 0.0};
  EXPECT_LE(std::abs(DpLogDensityRatio(y, s, s2, noise)), 0.4 + 1e-12);
  const RealVector far{3.0, 0.0};
  EXPECT_NEAR(std::abs(DpLogDensityRatio(far, s, s2, noise)), 0.4, 1e-12);
}

TEST(DpRatioTest, BoundedByEpsHatTimesD) {
  Rng rng(8);
  const std::size_t n = 20, d = 32;
  const NoiseParams noise{0.1, n};
  for (int pair = 0; pair < 50; ++pair) {
    const BitMatrix s = RandomMatrix(n, d, rng);
    std::vector<BitVector> rows = s.row_list();
    rows[rng.UniformIndex(n)] = RandomMatrix(1, d, rng).row(0);
    const BitMatrix s2(d, rows);
    for (int k = 0; k < 200; ++k) {
      const RealVector y = NoisyAverage(s, noise, rng);
      ASSERT_LE(std::abs(DpLogDensityRatio(y, s, s2, noise)),
                noise.eps_hat * d + 1e-9);
    }
  }
}

TEST(DpRatioTest, NonNeighborsAreRejected) {
  const BitMatrix s = BitMatrix::FromStrings({"00", "00"});
  const BitMatrix s2 = BitMatrix::FromStrings({"11", "11"});
  EXPECT_THROW(DpLogDensityRatio({0, 0}, s, s2, NoiseParams{1, 2}),
               ContractError);
}

TEST(MarginalErrorTest, HandCases) {
  const BitMatrix s = BitMatrix::FromStrings({"01", "11"});
  EXPECT_EQ(MarginalError(Release(ExactAverage(s)), s), 0.0);
  EXPECT_DOUBLE_EQ(MarginalError(Release(RealVector{0.5 + 0.3, 1.0}), s), 0.3);
  EXPECT_THROW(MarginalError(Release(BotRelease{}), s), ContractError);
  EXPECT_THROW(MarginalError(Release(RealVector{0.5}), s), DimensionError);
}

TEST(MarginalErrorTest, LaplaceTailBound) {
  Rng rng(9);
  const std::size_t n = 100, d = 64;
  const double eps = 0.5, beta = 0.05;
  const double alpha = std::log(2.0 * d / beta) / (eps * n);
  const int trials = 10000;
  int ok = 0;
  for (int t = 0; t < trials; ++t) {
    const BitMatrix s = RandomMatrix(n, d, rng);
    ok += MarginalError(Release(NoisyAverage(s, NoiseParams{eps, n}, rng)), s) <=
          alpha;
  }
  EXPECT_GE(ok / static_cast<double>(trials), 1 - beta);
}

}  // namespace
}  // namespace exsafe
