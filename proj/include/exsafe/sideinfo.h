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

// Side information handed to an attacker alongside the release. Generated
// in attackers.h, consumed by the conditional samplers in prior.h and by the
// surprisal gate.

#ifndef EXSAFE_SIDEINFO_H_
#define EXSAFE_SIDEINFO_H_

#include <cstddef>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "exsafe/bitdata.h"

namespace exsafe {

// Marks a row that has no codebook identity (fresh uniform-hypercube draws).
inline constexpr std::size_t kNoIndex = std::numeric_limits<std::size_t>::max();

struct SideInfoSpec {
  enum class Kind { kNone, kRevealedRows, kShuffledPair, kSuperset };
  Kind kind = Kind::kNone;
  // Number of leading rows of S revealed; only read for kRevealedRows.
  std::size_t revealed = 0;

  static SideInfoSpec None() { return {}; }
  static SideInfoSpec RevealedRows(std::size_t m) {
    return {Kind::kRevealedRows, m};
  }
  static SideInfoSpec ShuffledPair() { return {Kind::kShuffledPair, 0}; }
  static SideInfoSpec Superset() { return {Kind::kSuperset, 0}; }
};

std::string ToString(const SideInfoSpec& spec);

struct NoSideInfo {};

// The first m rows of S together with their codebook indices.
struct RevealedRows {
  BitMatrix rows;
  std::vector<std::size_t> indices;
};

// One member of S and one fresh draw from Nature, in uniformly random order.
// The indices are the codebook identities of k1 and k2 (kNoIndex when the
// prior has no codebook); attackers never read them.
struct ShuffledPair {
  BitVector k1;
  BitVector k2;
  std::size_t index1 = kNoIndex;
  std::size_t index2 = kNoIndex;
};

// The whole support of Nature, a superset of S.
struct Superset {
  BitMatrix support;
};

using SideInfoValue =
    std::variant<NoSideInfo, RevealedRows, ShuffledPair, Superset>;

}  // namespace exsafe

#endif  // EXSAFE_SIDEINFO_H_
