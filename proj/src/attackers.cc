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

#include "exsafe/attackers.h"

#include <cmath>
#include <set>

#include "exsafe/error.h"

namespace exsafe {
namespace {

using AKind = AttackerSpec::Kind;
using MKind = MechanismSpec::Kind;
using SKind = SideInfoSpec::Kind;

bool RealRelease(MKind kind) {
  return kind == MKind::kExactAverage || kind == MKind::kNoisyAverage;
}

const RealVector& RequireReal(const Release& y) {
  const auto* v = std::get_if<RealVector>(&y);
  if (v == nullptr) throw ContractError("attacker needs a real-valued release");
  return *v;
}

const ParityRelease& RequireParity(const Release& y) {
  const auto* h = std::get_if<ParityRelease>(&y);
  if (h == nullptr) throw ContractError("attacker needs a parity release");
  return *h;
}

template <class T>
const T& RequireSideinfo(const SideInfoValue& k, const char* what) {
  const auto* v = std::get_if<T>(&k);
  if (v == nullptr) {
    throw ContractError(std::string("attacker needs ") + what +
                        " side information");
  }
  return *v;
}

double Dot(const BitVector& k, const RealVector& y) {
  double total = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (k.get(j)) total += y[j];
  }
  return total;
}

}  // namespace

std::string ToString(const AttackerSpec& spec) {
  switch (spec.kind) {
    case AKind::kRound:
      return "round";
    case AKind::kSubtract:
      return "subtract";
    case AKind::kTwoCandidate:
      return "two-candidate";
    case AKind::kParityFit:
      return "parity-fit";
    case AKind::kSupersetLookup:
      return "superset-lookup";
    case AKind::kConstant:
      return "constant(" + spec.z0.ToString() + ")";
    case AKind::kConstantMajority:
      return "constant-majority";
    case AKind::kAlwaysIn:
      return "always-in";
    case AKind::kBitProbe:
      return "bit-probe(" + std::to_string(spec.probe_bit) + ")";
  }
  return "unknown";
}

bool IsDistinguisher(const AttackerSpec& spec) {
  return spec.kind == AKind::kParityFit || spec.kind == AKind::kAlwaysIn ||
         spec.kind == AKind::kBitProbe;
}

void CheckCompatible(const AttackerSpec& attacker,
                     const MechanismSpec& mechanism,
                     const SideInfoSpec& sideinfo) {
  const std::string name = ToString(attacker);
  switch (attacker.kind) {
    case AKind::kRound:
      if (!RealRelease(mechanism.kind)) {
        throw ConfigError(name + " needs a real-valued release");
      }
      break;
    case AKind::kSubtract:
      if (!RealRelease(mechanism.kind)) {
        throw ConfigError(name + " needs a real-valued release");
      }
      if (sideinfo.kind != SKind::kRevealedRows) {
        throw ConfigError(name + " needs revealed-rows side information");
      }
      break;
    case AKind::kTwoCandidate:
      if (!RealRelease(mechanism.kind)) {
        throw ConfigError(name + " needs a real-valued release");
      }
      if (sideinfo.kind != SKind::kShuffledPair) {
        throw ConfigError(name + " needs shuffled-pair side information");
      }
      break;
    case AKind::kParityFit:
      if (mechanism.kind != MKind::kXorParity) {
        throw ConfigError(name + " needs the xor-parity release");
      }
      break;
    case AKind::kSupersetLookup:
      if (mechanism.kind != MKind::kXorParity) {
        throw ConfigError(name + " needs the xor-parity release");
      }
      if (sideinfo.kind != SKind::kSuperset) {
        throw ConfigError(name + " needs superset side information");
      }
      break;
    case AKind::kConstant:
    case AKind::kConstantMajority:
    case AKind::kAlwaysIn:
    case AKind::kBitProbe:
      break;
  }
}

SideInfoValue MakeSideinfo(const SideInfoSpec& spec, const World& world,
                           Rng& rng) {
  const Dataset& s = world.s;
  switch (spec.kind) {
    case SKind::kNone:
      return NoSideInfo{};
    case SKind::kRevealedRows: {
      if (spec.revealed > s.rows.rows()) {
        throw ContractError("cannot reveal more rows than S has");
      }
      RevealedRows k{BitMatrix(s.rows.cols()), {}};
      for (std::size_t i = 0; i < spec.revealed; ++i) {
        k.rows.AppendRow(s.rows.row(i));
        k.indices.push_back(s.indices[i]);
      }
      return k;
    }
    case SKind::kShuffledPair: {
      if (s.rows.empty()) throw ContractError("shuffled pair of an empty S");
      const std::size_t member = rng.UniformIndex(s.rows.rows());
      auto [fresh_index, fresh_row] = SampleFreshPoint(world, rng);
      ShuffledPair k{s.rows.row(member), std::move(fresh_row),
                     s.indices[member], fresh_index};
      if (rng.UniformIndex(2) == 1) {
        std::swap(k.k1, k.k2);
        std::swap(k.index1, k.index2);
      }
      return k;
    }
    case SKind::kSuperset: {
      if (!world.has_codebook()) {
        throw ContractError("superset side information needs a finite support");
      }
      Superset k{world.codebook.Materialize()};
      if (world.spiked_atom) k.support.AppendRow(*world.spiked_atom);
      return k;
    }
  }
  throw ContractError("unknown side information kind");
}

BitVector AttackRound(const RealVector& y) {
  BitVector z(y.size());
  for (std::size_t j = 0; j < y.size(); ++j) z.set(j, y[j] >= 0.5);
  return z;
}

BitVector AttackSubtract(const RealVector& y, const RevealedRows& k,
                         std::size_t n) {
  if (k.rows.rows() + 1 != n) {
    throw ContractError("subtract attack needs exactly n-1 revealed rows");
  }
  if (k.rows.cols() != y.size()) {
    throw DimensionError("revealed rows and release differ in width");
  }
  const auto weights = ColumnWeights(k.rows);
  BitVector z(y.size());
  for (std::size_t j = 0; j < y.size(); ++j) {
    const double residual =
        static_cast<double>(n) * y[j] - static_cast<double>(weights[j]);
    z.set(j, std::floor(residual + 0.5) >= 1.0);
  }
  return z;
}

BitVector AttackTwoCandidate(const RealVector& y, const ShuffledPair& k) {
  if (k.k1.size() != y.size() || k.k2.size() != y.size()) {
    throw DimensionError("candidates and release differ in width");
  }
  return Dot(k.k2, y) > Dot(k.k1, y) ? k.k2 : k.k1;
}

bool AttackParityFit(const ParityRelease& h, const BitVector& x) {
  if (x.size() != 2 * h.h.cols()) {
    throw DimensionError("candidate width must be twice the parity width");
  }
  const BitVector sig = PairSignature(x);
  for (const BitVector& row : h.h.row_list()) {
    if (row == sig) return true;
  }
  return false;
}

std::vector<BitVector> AttackSupersetLookup(const ParityRelease& h,
                                            const Superset& k) {
  if (k.support.cols() != 2 * h.h.cols()) {
    throw DimensionError("superset width must be twice the parity width");
  }
  const std::set<BitVector> released(h.h.row_list().begin(),
                                     h.h.row_list().end());
  std::vector<BitVector> found;
  for (const BitVector& x : k.support.row_list()) {
    if (released.contains(PairSignature(x))) found.push_back(x);
  }
  return found;
}

BitVector AttackConstant(const BitVector& z0) { return z0; }

BitVector Reconstruct(const AttackerSpec& spec, const Release& y,
                      const SideInfoValue& k, std::size_t n, std::size_t d) {
  switch (spec.kind) {
    case AKind::kRound:
      return AttackRound(RequireReal(y));
    case AKind::kSubtract:
      return AttackSubtract(RequireReal(y),
                            RequireSideinfo<RevealedRows>(k, "revealed-rows"),
                            n);
    case AKind::kTwoCandidate:
      return AttackTwoCandidate(
          RequireReal(y), RequireSideinfo<ShuffledPair>(k, "shuffled-pair"));
    case AKind::kSupersetLookup: {
      const auto found = AttackSupersetLookup(
          RequireParity(y), RequireSideinfo<Superset>(k, "superset"));
      return found.empty() ? BitVector(d) : found.front();
    }
    case AKind::kConstant:
      if (spec.z0.size() != d) {
        throw DimensionError("constant guess has the wrong width");
      }
      return AttackConstant(spec.z0);
    case AKind::kConstantMajority:
      return BitVector::Ones(d);
    case AKind::kParityFit:
    case AKind::kAlwaysIn:
    case AKind::kBitProbe:
      break;
  }
  throw ContractError(ToString(spec) + " is a distinguisher, not a "
                      "reconstruction attacker");
}

bool Distinguish(const AttackerSpec& spec, const Release& y,
                 const BitVector& x) {
  switch (spec.kind) {
    case AKind::kParityFit:
      return AttackParityFit(RequireParity(y), x);
    case AKind::kAlwaysIn:
      return true;
    case AKind::kBitProbe:
      if (spec.probe_bit >= x.size()) {
        throw DimensionError("probe bit outside the candidate");
      }
      return x.get(spec.probe_bit);
    default:
      break;
  }
  throw ContractError(ToString(spec) + " is not a distinguisher");
}

}  // namespace exsafe
