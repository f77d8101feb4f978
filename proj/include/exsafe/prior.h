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

// Priors over data distributions ("Natures"), their realization, and the
// dataset samplers built on a realized Nature:
//
//   SampleNature           Nature <- Prior
//   SampleDataset          S <- Nature
//   SampleFreshT           T <- Nature, independent of S given Nature
//   SampleTGivenSideinfo   T <- Nature | K
//   SampleCoupledST        the joint (S, T) process built from two index sets
//
// Codebook rows are generated lazily: row i is a pure function of the
// codebook seed and i, so a Tardos Nature with a large N costs only the
// rows a trial actually touches.

#ifndef EXSAFE_PRIOR_H_
#define EXSAFE_PRIOR_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "exsafe/bitdata.h"
#include "exsafe/rng.h"
#include "exsafe/sideinfo.h"

namespace exsafe {

// Per-column biases p_j ~ U[0,1]; codebook of N rows with C[i,j] ~ Ber(p_j);
// S is a uniform n-subset of the codebook rows.
struct TardosParams {
  std::size_t N = 0;
  std::size_t d = 0;
  std::size_t n = 0;
};

// Nature is the uniform distribution on {0,1}^d; S is n i.i.d. draws.
struct UniformHypercubeParams {
  std::size_t d = 0;
  std::size_t n = 0;
};

// Nature is uniform over a random support of m uniform points; S is n
// distinct support points.
struct RandomSupportParams {
  std::size_t m = 0;
  std::size_t d = 0;
  std::size_t n = 0;
};

// As RandomSupport, except every draw is the zero vector with probability
// 1/2.
struct SpikedParams {
  std::size_t m = 0;
  std::size_t d = 0;
  std::size_t n = 0;
};

using PriorSpec = std::variant<TardosParams, UniformHypercubeParams,
                               RandomSupportParams, SpikedParams>;

// Throws ParameterError on non-positive sizes, N < n, or m < n.
void Validate(const PriorSpec& prior);
std::size_t Dimension(const PriorSpec& prior);
std::size_t SampleSize(const PriorSpec& prior);
std::string Describe(const PriorSpec& prior);

inline std::size_t DefaultSupportSize(std::size_t n) { return 100 * n; }

class Codebook {
 public:
  Codebook() = default;
  // Row i has independent bits with P(bit j = 1) = bias[j].
  Codebook(std::size_t rows, RealVector bias, std::uint64_t seed);
  // Row i is uniform over {0,1}^d.
  static Codebook Uniform(std::size_t rows, std::size_t d, std::uint64_t seed);
  static Codebook Explicit(BitMatrix rows);

  std::size_t size() const { return rows_; }
  std::size_t dim() const { return d_; }
  BitVector Row(std::size_t i) const;
  BitMatrix Materialize() const;

 private:
  std::size_t rows_ = 0;
  std::size_t d_ = 0;
  RealVector bias_;
  std::uint64_t seed_ = 0;
  bool uniform_ = false;
  std::optional<BitMatrix> explicit_;
};

// A draw of rows from Nature. `indices[i]` is the codebook identity of row i
// (kNoIndex for hypercube draws; the codebook size for the spiked atom).
struct Dataset {
  std::vector<std::size_t> indices;
  BitMatrix rows;
};

struct TrialTrace {
  std::uint64_t master_seed = 0;
  std::uint64_t trial = 0;
};

// One realized trial. Immutable once sampled.
struct World {
  PriorSpec prior;
  RealVector bias;  // Tardos only.
  Codebook codebook;  // Empty for the uniform hypercube.
  std::optional<BitVector> spiked_atom;
  Dataset s;
  TrialTrace trace;

  std::size_t dim() const { return Dimension(prior); }
  std::size_t sample_size() const { return SampleSize(prior); }
  // Codebook index representing the spiked atom.
  std::size_t atom_index() const { return codebook.size(); }
  bool has_codebook() const { return codebook.size() > 0; }
  BitVector RowAt(std::size_t index) const;
};

World SampleNature(const PriorSpec& prior, Rng& rng);

// Builds a Tardos world around an explicit codebook (tests and oracles).
World TardosWorldFromCodebook(const TardosParams& params, BitMatrix codebook);

// Samples S. Throws ParameterError when the prior asks for more distinct
// rows than the codebook has.
World SampleDataset(World world, Rng& rng);

Dataset SampleFreshT(const World& world, Rng& rng);

// A single point from Nature and its codebook identity.
std::pair<std::size_t, BitVector> SampleFreshPoint(const World& world,
                                                   Rng& rng);

// Exact conditional sampler for T given K, conditioning on codebook
// identities:
//   none, superset   as SampleFreshT
//   revealed rows    T keeps the revealed rows; the rest are fresh distinct
//                    codebook rows outside the revealed identities
//   shuffled pair    one of the two identities is chosen as the member with
//                    probability 1/2 and T is a uniform n-subset containing it
// Throws ContractError when K cannot have come from this world.
Dataset SampleTGivenSideinfo(const World& world, const SideInfoValue& k,
                             Rng& rng);

struct CoupledWorld {
  RealVector bias;
  std::vector<std::size_t> s_indices;
  std::vector<std::size_t> t_indices;
  BitMatrix s;
  BitMatrix t;
  std::size_t overlap = 0;  // |I_S ∩ I_T|
};

// p ~ U[0,1]^d; I_S, I_T independent uniform n-subsets of [N]; one Ber(p)
// row per index of I_S ∪ I_T; S and T read their rows from the shared pool.
CoupledWorld SampleCoupledST(const TardosParams& params, Rng& rng);

// `count` distinct values of [0, universe) not in `exclude`, in uniformly
// random order.
std::vector<std::size_t> SampleDistinct(std::size_t count,
                                        std::size_t universe,
                                        const std::vector<std::size_t>& exclude,
                                        Rng& rng);

}  // namespace exsafe

#endif  // EXSAFE_PRIOR_H_
