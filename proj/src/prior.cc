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

#include "exsafe/prior.h"

#include <algorithm>
#include <map>
#include <sstream>

#include "exsafe/error.h"

namespace exsafe {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

BitVector UniformRow(std::size_t d, Rng& rng) {
  BitVector v(d);
  for (std::uint64_t& w : v.mutable_words()) w = rng.Bits();
  v.ClearPadding();
  return v;
}

bool IsSpiked(const World& world) {
  return std::holds_alternative<SpikedParams>(world.prior);
}

bool IsHypercube(const World& world) {
  return std::holds_alternative<UniformHypercubeParams>(world.prior);
}

// Spiked draws: each row is the atom with probability 1/2, otherwise a
// support row not already used by this draw or listed in `exclude`.
Dataset DrawSpiked(const World& world, std::size_t count,
                   std::vector<std::size_t> exclude, Rng& rng) {
  Dataset out;
  out.rows = BitMatrix(world.dim());
  const std::size_t m = world.codebook.size();
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t index = world.atom_index();
    if (!rng.Bernoulli(0.5)) {
      std::vector<std::size_t> support_exclude;
      for (std::size_t e : exclude) {
        if (e < m) support_exclude.push_back(e);
      }
      index = SampleDistinct(1, m, support_exclude, rng).front();
      exclude.push_back(index);
    }
    out.indices.push_back(index);
    out.rows.AppendRow(world.RowAt(index));
  }
  return out;
}

// `count` rows of Nature avoiding the codebook identities in `exclude`.
Dataset DrawRows(const World& world, std::size_t count,
                 const std::vector<std::size_t>& exclude, Rng& rng) {
  if (IsHypercube(world)) {
    Dataset out;
    out.rows = BitMatrix(world.dim());
    for (std::size_t i = 0; i < count; ++i) {
      out.indices.push_back(kNoIndex);
      out.rows.AppendRow(UniformRow(world.dim(), rng));
    }
    return out;
  }
  if (IsSpiked(world)) return DrawSpiked(world, count, exclude, rng);
  Dataset out;
  out.indices = SampleDistinct(count, world.codebook.size(), exclude, rng);
  out.rows = BitMatrix(world.dim());
  for (std::size_t index : out.indices) out.rows.AppendRow(world.RowAt(index));
  return out;
}

void Append(Dataset& into, const Dataset& tail) {
  for (std::size_t i = 0; i < tail.rows.rows(); ++i) {
    into.indices.push_back(tail.indices[i]);
    into.rows.AppendRow(tail.rows.row(i));
  }
}

Dataset TGivenRevealed(const World& world, const RevealedRows& k, Rng& rng) {
  const std::size_t n = world.sample_size();
  const std::size_t m = k.rows.rows();
  if (m > n || k.rows.cols() != world.dim()) {
    throw ContractError("revealed rows do not fit this world");
  }
  if (!IsHypercube(world) && k.indices.size() != m) {
    throw ContractError(
        "revealed rows must carry codebook indices for a codebook prior");
  }
  if (!IsHypercube(world)) {
    const std::size_t limit = world.codebook.size() + (IsSpiked(world) ? 1 : 0);
    for (std::size_t i = 0; i < m; ++i) {
      if (k.indices[i] >= limit || world.RowAt(k.indices[i]) != k.rows.row(i)) {
        throw ContractError("revealed row " + std::to_string(i) +
                            " is not the codebook row it names");
      }
    }
  }
  Dataset t;
  t.rows = BitMatrix(world.dim());
  for (std::size_t i = 0; i < m; ++i) {
    t.indices.push_back(IsHypercube(world) ? kNoIndex : k.indices[i]);
    t.rows.AppendRow(k.rows.row(i));
  }
  std::vector<std::size_t> exclude;
  if (!IsHypercube(world)) {
    for (std::size_t index : k.indices) {
      if (index != world.atom_index() || !IsSpiked(world)) {
        exclude.push_back(index);
      }
    }
  }
  Append(t, DrawRows(world, n - m, exclude, rng));
  return t;
}

Dataset TGivenPair(const World& world, const ShuffledPair& k, Rng& rng) {
  if (IsSpiked(world)) {
    throw ContractError("shuffled-pair conditioning is not defined for the "
                        "spiked prior");
  }
  const std::size_t n = world.sample_size();
  const bool first = rng.UniformIndex(2) == 0;
  Dataset others;
  Dataset member;
  member.rows = BitMatrix(world.dim());
  if (IsHypercube(world)) {
    member.indices.push_back(kNoIndex);
    member.rows.AppendRow(first ? k.k1 : k.k2);
    others = DrawRows(world, n - 1, {}, rng);
  } else {
    if (k.index1 == kNoIndex || k.index2 == kNoIndex) {
      throw ContractError("shuffled pair lacks codebook identities");
    }
    const std::size_t index = first ? k.index1 : k.index2;
    member.indices.push_back(index);
    member.rows.AppendRow(world.RowAt(index));
    others = DrawRows(world, n - 1, {index}, rng);
  }
  const std::size_t position = rng.UniformIndex(n);
  Dataset t;
  t.rows = BitMatrix(world.dim());
  for (std::size_t i = 0, o = 0; i < n; ++i) {
    if (i == position) {
      Append(t, member);
    } else {
      t.indices.push_back(others.indices[o]);
      t.rows.AppendRow(others.rows.row(o));
      ++o;
    }
  }
  return t;
}

}  // namespace

void Validate(const PriorSpec& prior) {
  std::visit(
      Overloaded{
          [](const TardosParams& p) {
            if (p.d == 0 || p.n == 0 || p.N < p.n) {
              throw ParameterError("tardos prior needs N >= n >= 1, d >= 1");
            }
          },
          [](const UniformHypercubeParams& p) {
            if (p.d == 0 || p.n == 0) {
              throw ParameterError("hypercube prior needs d >= 1, n >= 1");
            }
          },
          [](const RandomSupportParams& p) {
            if (p.d == 0 || p.n == 0 || p.m < p.n) {
              throw ParameterError("random-support prior needs m >= n >= 1");
            }
          },
          [](const SpikedParams& p) {
            if (p.d == 0 || p.n == 0 || p.m < p.n) {
              throw ParameterError("spiked prior needs m >= n >= 1");
            }
          },
      },
      prior);
}

std::size_t Dimension(const PriorSpec& prior) {
  return std::visit([](const auto& p) { return p.d; }, prior);
}

std::size_t SampleSize(const PriorSpec& prior) {
  return std::visit([](const auto& p) { return p.n; }, prior);
}

std::string Describe(const PriorSpec& prior) {
  std::ostringstream out;
  std::visit(Overloaded{
                 [&](const TardosParams& p) {
                   out << "tardos(N=" << p.N << ",d=" << p.d << ",n=" << p.n
                       << ")";
                 },
                 [&](const UniformHypercubeParams& p) {
                   out << "hypercube(d=" << p.d << ",n=" << p.n << ")";
                 },
                 [&](const RandomSupportParams& p) {
                   out << "random-support(m=" << p.m << ",d=" << p.d
                       << ",n=" << p.n << ")";
                 },
                 [&](const SpikedParams& p) {
                   out << "spiked(m=" << p.m << ",d=" << p.d << ",n=" << p.n
                       << ")";
                 },
             },
             prior);
  return out.str();
}

std::string ToString(const SideInfoSpec& spec) {
  switch (spec.kind) {
    case SideInfoSpec::Kind::kNone:
      return "none";
    case SideInfoSpec::Kind::kRevealedRows:
      return "revealed-rows(" + std::to_string(spec.revealed) + ")";
    case SideInfoSpec::Kind::kShuffledPair:
      return "shuffled-pair";
    case SideInfoSpec::Kind::kSuperset:
      return "superset";
  }
  return "unknown";
}

Codebook::Codebook(std::size_t rows, RealVector bias, std::uint64_t seed)
    : rows_(rows), d_(bias.size()), bias_(std::move(bias)), seed_(seed) {}

Codebook Codebook::Uniform(std::size_t rows, std::size_t d,
                           std::uint64_t seed) {
  Codebook c;
  c.rows_ = rows;
  c.d_ = d;
  c.seed_ = seed;
  c.uniform_ = true;
  return c;
}

Codebook Codebook::Explicit(BitMatrix rows) {
  Codebook c;
  c.rows_ = rows.rows();
  c.d_ = rows.cols();
  c.explicit_ = std::move(rows);
  return c;
}

BitVector Codebook::Row(std::size_t i) const {
  if (explicit_) return explicit_->row(i);
  Rng rng(DeriveSeed(seed_, i, static_cast<std::uint64_t>(Stream::kCodebookRow)));
  if (uniform_) return UniformRow(d_, rng);
  BitVector v(d_);
  for (std::size_t j = 0; j < d_; ++j) v.set(j, rng.Bernoulli(bias_[j]));
  return v;
}

BitMatrix Codebook::Materialize() const {
  if (explicit_) return *explicit_;
  BitMatrix out(d_);
  for (std::size_t i = 0; i < rows_; ++i) out.AppendRow(Row(i));
  return out;
}

BitVector World::RowAt(std::size_t index) const {
  if (spiked_atom && index == atom_index()) return *spiked_atom;
  if (index >= codebook.size()) {
    throw ContractError("codebook index out of range");
  }
  return codebook.Row(index);
}

World SampleNature(const PriorSpec& prior, Rng& rng) {
  Validate(prior);
  World world;
  world.prior = prior;
  world.s.rows = BitMatrix(Dimension(prior));
  std::visit(Overloaded{
                 [&](const TardosParams& p) {
                   world.bias.resize(p.d);
                   for (double& b : world.bias) b = rng.Uniform();
                   world.codebook = Codebook(p.N, world.bias, rng.Bits());
                 },
                 [&](const UniformHypercubeParams&) {},
                 [&](const RandomSupportParams& p) {
                   world.codebook = Codebook::Uniform(p.m, p.d, rng.Bits());
                 },
                 [&](const SpikedParams& p) {
                   world.codebook = Codebook::Uniform(p.m, p.d, rng.Bits());
                   world.spiked_atom = BitVector(p.d);
                 },
             },
             prior);
  return world;
}

World TardosWorldFromCodebook(const TardosParams& params, BitMatrix codebook) {
  if (codebook.rows() != params.N || codebook.cols() != params.d) {
    throw DimensionError("codebook shape differs from the tardos parameters");
  }
  World world;
  world.prior = params;
  world.codebook = Codebook::Explicit(std::move(codebook));
  world.s.rows = BitMatrix(params.d);
  return world;
}

World SampleDataset(World world, Rng& rng) {
  world.s = DrawRows(world, world.sample_size(), {}, rng);
  return world;
}

Dataset SampleFreshT(const World& world, Rng& rng) {
  return DrawRows(world, world.sample_size(), {}, rng);
}

std::pair<std::size_t, BitVector> SampleFreshPoint(const World& world,
                                                   Rng& rng) {
  if (IsHypercube(world)) return {kNoIndex, UniformRow(world.dim(), rng)};
  if (IsSpiked(world)) {
    const Dataset one = DrawSpiked(world, 1, {}, rng);
    return {one.indices.front(), one.rows.row(0)};
  }
  const std::size_t index = rng.UniformIndex(world.codebook.size());
  return {index, world.RowAt(index)};
}

Dataset SampleTGivenSideinfo(const World& world, const SideInfoValue& k,
                             Rng& rng) {
  return std::visit(
      Overloaded{
          [&](const NoSideInfo&) { return SampleFreshT(world, rng); },
          [&](const Superset&) { return SampleFreshT(world, rng); },
          [&](const RevealedRows& r) { return TGivenRevealed(world, r, rng); },
          [&](const ShuffledPair& p) { return TGivenPair(world, p, rng); },
      },
      k);
}

CoupledWorld SampleCoupledST(const TardosParams& params, Rng& rng) {
  Validate(params);
  CoupledWorld out;
  out.bias.resize(params.d);
  for (double& b : out.bias) b = rng.Uniform();
  out.s_indices = SampleDistinct(params.n, params.N, {}, rng);
  out.t_indices = SampleDistinct(params.n, params.N, {}, rng);

  std::vector<std::size_t> pool = out.s_indices;
  pool.insert(pool.end(), out.t_indices.begin(), out.t_indices.end());
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  out.overlap = 2 * params.n - pool.size();

  std::map<std::size_t, BitVector> rows;
  for (std::size_t index : pool) {
    BitVector x(params.d);
    for (std::size_t j = 0; j < params.d; ++j) {
      x.set(j, rng.Bernoulli(out.bias[j]));
    }
    rows.emplace(index, std::move(x));
  }
  out.s = BitMatrix(params.d);
  out.t = BitMatrix(params.d);
  for (std::size_t index : out.s_indices) out.s.AppendRow(rows.at(index));
  for (std::size_t index : out.t_indices) out.t.AppendRow(rows.at(index));
  return out;
}

std::vector<std::size_t> SampleDistinct(std::size_t count,
                                        std::size_t universe,
                                        const std::vector<std::size_t>& exclude,
                                        Rng& rng) {
  std::vector<bool> taken(universe, false);
  std::size_t available = universe;
  for (std::size_t e : exclude) {
    if (e < universe && !taken[e]) {
      taken[e] = true;
      --available;
    }
  }
  if (count > available) {
    throw ParameterError("cannot draw " + std::to_string(count) +
                         " distinct rows from " + std::to_string(available));
  }
  std::vector<std::size_t> out;
  out.reserve(count);
  if (2 * count <= available) {
    while (out.size() < count) {
      const std::size_t x = rng.UniformIndex(universe);
      if (!taken[x]) {
        taken[x] = true;
        out.push_back(x);
      }
    }
    return out;
  }
  std::vector<std::size_t> pool;
  pool.reserve(available);
  for (std::size_t x = 0; x < universe; ++x) {
    if (!taken[x]) pool.push_back(x);
  }
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + rng.UniformIndex(pool.size() - i);
    std::swap(pool[i], pool[j]);
    out.push_back(pool[i]);
  }
  return out;
}

}  // namespace exsafe
