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

// Releases under study: the exact column average, the Laplace-noised
// average, the pairwise XOR parity matrix, and the empty release.

#ifndef EXSAFE_MECHANISMS_H_
#define EXSAFE_MECHANISMS_H_

#include <cstddef>
#include <string>
#include <variant>

#include "exsafe/bitdata.h"
#include "exsafe/rng.h"

namespace exsafe {

struct ParityRelease {
  BitMatrix h;  // n x d/2
};

struct BotRelease {
  friend bool operator==(const BotRelease&, const BotRelease&) = default;
};

using Release = std::variant<RealVector, ParityRelease, BotRelease>;

// Per-coordinate privacy rate eps_hat; Laplace scale is 1 / (eps_hat * n).
struct NoiseParams {
  double eps_hat = 0.0;
  std::size_t n = 0;

  // Throws ParameterError unless eps_hat > 0 and n >= 1.
  void Validate() const;
  double Scale() const { return 1.0 / (eps_hat * static_cast<double>(n)); }
};

struct MechanismSpec {
  enum class Kind { kExactAverage, kNoisyAverage, kXorParity, kBot };
  Kind kind = Kind::kExactAverage;
  double eps_hat = 0.0;  // kNoisyAverage only.
};

std::string ToString(const MechanismSpec& spec);

RealVector ExactAverage(const BitMatrix& s);

// average(S) + Lap(scale) per coordinate. Not clamped to [0,1].
RealVector NoisyAverage(const BitMatrix& s, const NoiseParams& noise,
                        Rng& rng);

// H[i][j] = S[i][2j] xor S[i][2j+1] (0-based). Throws DimensionError for odd d.
ParityRelease XorParity(const BitMatrix& s);

// Pair-XOR signature of a single row.
BitVector PairSignature(const BitVector& x);

BotRelease Bot(const BitMatrix& s);

Release ApplyMechanism(const MechanismSpec& spec, const BitMatrix& s,
                       Rng& rng);

// log p(y | S) - log p(y | S') for the noisy average, in nats. S and S' must
// have equal shape and differ in at most one row (ContractError otherwise).
double DpLogDensityRatio(const RealVector& y, const BitMatrix& s,
                         const BitMatrix& s_prime, const NoiseParams& noise);

// The same ratio from the two exact averages, for callers that evaluate
// many outputs against one neighboring pair. No neighbor check.
double DpLogDensityRatioFromMeans(const RealVector& y, const RealVector& mean_s,
                                  const RealVector& mean_s_prime,
                                  const NoiseParams& noise);

// l-infinity distance between a real release and the exact average of s.
// Throws ContractError for non-real releases and DimensionError on length
// mismatch.
double MarginalError(const Release& y, const BitMatrix& s);

}  // namespace exsafe

#endif  // EXSAFE_MECHANISMS_H_
