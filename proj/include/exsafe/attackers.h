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

// The attack gallery and the side-information functions it consumes.
// Attackers are deterministic functions of (release, side information); all
// randomness lives in the samplers.

#ifndef EXSAFE_ATTACKERS_H_
#define EXSAFE_ATTACKERS_H_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "exsafe/bitdata.h"
#include "exsafe/mechanisms.h"
#include "exsafe/prior.h"
#include "exsafe/rng.h"
#include "exsafe/sideinfo.h"

namespace exsafe {

struct AttackerSpec {
  enum class Kind {
    kRound,             // threshold the release at 1/2
    kSubtract,          // n*y minus the revealed rows
    kTwoCandidate,      // argmax <k_b, y> over the shuffled pair
    kParityFit,         // membership distinguisher against the XOR release
    kSupersetLookup,    // first superset row whose signature is released
    kConstant,          // a fixed guess z0
    kConstantMajority,  // the all-ones guess (rounded prior mean)
    kAlwaysIn,          // distinguisher answering In unconditionally
    kBitProbe,          // distinguisher answering In iff x[probe_bit] == 1
  };
  Kind kind = Kind::kRound;
  BitVector z0;               // kConstant
  std::size_t probe_bit = 0;  // kBitProbe

  static AttackerSpec Of(Kind kind) { return {kind, {}, 0}; }
  static AttackerSpec Constant(BitVector z0) {
    return {Kind::kConstant, std::move(z0), 0};
  }
};

std::string ToString(const AttackerSpec& spec);

// Distinguishers answer In/Out for a candidate point; everything else
// outputs a reconstruction z.
bool IsDistinguisher(const AttackerSpec& spec);

// ConfigError when the attacker cannot consume the mechanism's release or the
// configured side information.
void CheckCompatible(const AttackerSpec& attacker,
                     const MechanismSpec& mechanism,
                     const SideInfoSpec& sideinfo);

// K <- SideInfo(Nature, S).
//   none           empty
//   revealed(m)    the first m rows of S with their codebook indices
//   shuffled pair  a uniform row of S and a fresh point of Nature, order
//                  randomized
//   superset       the whole support of Nature (plus the spiked atom)
// Throws ContractError when the prior cannot supply the requested value.
SideInfoValue MakeSideinfo(const SideInfoSpec& spec, const World& world,
                           Rng& rng);

// Coordinate-wise threshold at 1/2; exactly 0.5 rounds to 1.
BitVector AttackRound(const RealVector& y);

// round(n*y - sum of revealed rows), half up, clamped to {0,1}. Throws
// ContractError unless K reveals exactly n-1 rows.
BitVector AttackSubtract(const RealVector& y, const RevealedRows& k,
                         std::size_t n);

// argmax over b of <k_b, y>; ties go to k1.
BitVector AttackTwoCandidate(const RealVector& y, const ShuffledPair& k);

// True ("In") iff some row of H equals the pair-XOR signature of x.
bool AttackParityFit(const ParityRelease& h, const BitVector& x);

// Every superset row whose pair-XOR signature appears as a row of H, in
// superset order.
std::vector<BitVector> AttackSupersetLookup(const ParityRelease& h,
                                            const Superset& k);

BitVector AttackConstant(const BitVector& z0);

// Dispatches a reconstruction attacker. ContractError on a release or
// side-information variant the attacker does not accept.
BitVector Reconstruct(const AttackerSpec& spec, const Release& y,
                      const SideInfoValue& k, std::size_t n, std::size_t d);

// Dispatches a distinguisher; true means "In".
bool Distinguish(const AttackerSpec& spec, const Release& y,
                 const BitVector& x);

}  // namespace exsafe

#endif  // EXSAFE_ATTACKERS_H_
