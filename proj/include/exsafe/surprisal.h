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

// Point-wise surprisal h(z | ...) = -log2 Pr[v = z | ...], where v is a row
// of S and the conditioning rows are the rest of S.
//
// Under the Tardos prior, distinct codebook rows are i.i.d. Ber(p) given p,
// so the columns factor into Beta-Bernoulli posteriors. The uniform
// hypercube predicts every bit with probability 1/2. Other priors are not
// supported.

#ifndef EXSAFE_SURPRISAL_H_
#define EXSAFE_SURPRISAL_H_

#include <cstddef>

#include "exsafe/bitdata.h"
#include "exsafe/prior.h"
#include "exsafe/sideinfo.h"

namespace exsafe {

// (k + 1) / (m + 2): the predictive probability of a one after k ones in m
// draws, with p ~ U[0,1].
double PosteriorColumnMean(std::size_t ones, std::size_t rows);

// Predictive probability that the next two draws of a column are (a, b)
// after k ones in m draws.
double PairColumnPredictive(bool a, bool b, std::size_t ones,
                            std::size_t rows);

// Tardos predictive: -log2 prod_j q_j with q_j the rule-of-succession
// factor for z_j. Always finite.
double SurprisalGivenRows(const BitVector& z, const BitMatrix& rows);

// Same under the given prior (Tardos or uniform hypercube). Throws
// ContractError for any other prior.
double SurprisalGivenRows(const BitVector& z, const BitMatrix& rows,
                          const PriorSpec& prior);

// Column-wise posterior mode (ones where 2k >= m). It minimizes
// SurprisalGivenRows over all z because the columns factor.
BitVector PosteriorMode(const BitMatrix& rows);

struct SurprisalQuery {
  BitVector z;
  BitMatrix conditioning_rows;  // S with one copy of z removed.
  SideInfoValue sideinfo;
  PriorSpec prior;
};

// h(z | K, S') in bits; may be +infinity when K rules z out.
//   none            SurprisalGivenRows(z, S')
//   revealed rows   as none when K's rows are a sub-multiset of S'; 0 when
//                   K lies inside S' plus z; ContractError otherwise
//   shuffled pair   exact posterior over which pair element is the member
//                   of S and whether that member is v, with the fresh
//                   element drawn from the same predictive
// Superset side information is a contract error.
double SurprisalGivenSideinfo(const SurprisalQuery& q);

}  // namespace exsafe

#endif  // EXSAFE_SURPRISAL_H_
