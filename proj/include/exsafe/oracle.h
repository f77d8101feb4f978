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

// Exact enumeration at tiny Tardos scale (N*d <= 16). Sums run over every
// codebook C with weight prod_j k_j!(N-k_j)!/(N+1)!, where k_j is the weight
// of column j, and over every ordered draw of S. All sums are exact
// rationals.

#ifndef EXSAFE_ORACLE_H_
#define EXSAFE_ORACLE_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "exsafe/bitdata.h"
#include "exsafe/estimator.h"
#include "exsafe/prior.h"

namespace exsafe {

using Rational = boost::multiprecision::cpp_rational;

// A multiset of rows, as sorted rows.
using RowMultiset = std::vector<BitVector>;

struct OracleResult {
  Rational lhs;
  Rational rhs;
  double lhs_value = 0.0;
  double rhs_value = 0.0;
  std::uint64_t terms = 0;  // (codebook, S, T) combinations visited
};

// Largest N*d the oracle enumerates.
inline constexpr std::size_t kOracleMaxCells = 16;

// Exact LHS and RHS of a vanilla, bi-criteria or side-info game. Needs the
// Tardos prior, a noiseless mechanism, a reconstruction attacker and side
// information none, revealed rows or superset. T given revealed rows keeps
// the revealed codebook identities, as the sampler does. Throws
// ParameterError past the size bound and ConfigError otherwise.
OracleResult OracleExact(const GameSpec& spec);

// Exact weight of one codebook under the Tardos prior.
Rational CodebookWeight(const BitMatrix& codebook);

// Pr[v = z | S' = s_prime], where v and S' split an ordered S of
// s_prime.rows() + 1 distinct codebook rows.
Rational OracleMemberPredictive(const TardosParams& params,
                                const BitMatrix& s_prime, const BitVector& z);

// Joint law of (S, T) as row multisets, S and T independent uniform
// n-subsets of the same codebook.
std::map<std::pair<RowMultiset, RowMultiset>, Rational> OracleJointFreshLaw(
    const TardosParams& params);

// For each value of the first `revealed` rows of S (in order), the law of
// S as a row multiset given that value. This is the content-level law T
// must follow given revealed-rows side information.
std::map<RowMultiset, std::map<RowMultiset, Rational>> OracleConditionalTLaw(
    const TardosParams& params, std::size_t revealed);

// Exact I(S; H) in bits for the pair-XOR release of n uniform rows of even
// width d. Needs d <= 8 and n*d <= 12.
double MutualInformationXor(std::size_t n, std::size_t d);

}  // namespace exsafe

#endif  // EXSAFE_ORACLE_H_
