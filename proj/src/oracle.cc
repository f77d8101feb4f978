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

#include "exsafe/oracle.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <unordered_map>

#include "exsafe/error.h"

namespace exsafe {
namespace {

using SKind = SideInfoSpec::Kind;
using Index = std::vector<std::size_t>;

constexpr double kMaxTerms = 2e8;

Rational Factorial(std::size_t k) {
  Rational out = 1;
  for (std::size_t i = 2; i <= k; ++i) out *= i;
  return out;
}

std::uint64_t Falling(std::size_t n, std::size_t k) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < k; ++i) out *= n - i;
  return out;
}

std::uint64_t Choose(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::uint64_t out = 1;
  for (std::size_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

// beta[k] = k!(N-k)!/(N+1)!, the Tardos weight of one column of weight k.
std::vector<Rational> ColumnBeta(std::size_t N) {
  std::vector<Rational> beta(N + 1);
  const Rational total = Factorial(N + 1);
  for (std::size_t k = 0; k <= N; ++k) {
    beta[k] = Factorial(k) * Factorial(N - k) / total;
  }
  return beta;
}

void CheckSize(const TardosParams& params) {
  Validate(PriorSpec{params});
  if (params.N * params.d > kOracleMaxCells) {
    throw ParameterError("oracle enumerates at most N*d = 16 cells");
  }
}

void ForEachCodebook(const TardosParams& params,
                     const std::function<void(const BitMatrix&,
                                              const Rational&)>& fn) {
  const std::vector<Rational> beta = ColumnBeta(params.N);
  const std::uint64_t cells = params.N * params.d;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells); ++mask) {
    BitMatrix c(params.d);
    for (std::size_t i = 0; i < params.N; ++i) {
      BitVector row(params.d);
      for (std::size_t j = 0; j < params.d; ++j) {
        row.set(j, (mask >> (i * params.d + j)) & 1);
      }
      c.AppendRow(std::move(row));
    }
    Rational weight = 1;
    for (std::size_t k : ColumnWeights(c)) weight *= beta[k];
    fn(c, weight);
  }
}

void ForEachOrdered(std::size_t universe, std::size_t count,
                    const std::function<void(const Index&)>& fn) {
  Index current;
  std::vector<bool> used(universe, false);
  std::function<void()> rec = [&]() {
    if (current.size() == count) {
      fn(current);
      return;
    }
    for (std::size_t i = 0; i < universe; ++i) {
      if (used[i]) continue;
      used[i] = true;
      current.push_back(i);
      rec();
      current.pop_back();
      used[i] = false;
    }
  };
  rec();
}

// Every `count`-subset of `pool`, in lexicographic order of positions.
void ForEachSubset(const Index& pool, std::size_t count,
                   const std::function<void(const Index&)>& fn) {
  Index current;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (current.size() == count) {
      fn(current);
      return;
    }
    for (std::size_t i = from; i < pool.size(); ++i) {
      current.push_back(pool[i]);
      rec(i + 1);
      current.pop_back();
    }
  };
  rec(0);
}

BitMatrix Gather(const BitMatrix& c, const Index& indices) {
  BitMatrix out(c.cols());
  for (std::size_t i : indices) out.AppendRow(c.row(i));
  return out;
}

Index Range(std::size_t n) {
  Index out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = i;
  return out;
}

double ToDouble(const Rational& r) { return r.convert_to<double>(); }

}  // namespace

Rational CodebookWeight(const BitMatrix& codebook) {
  const std::vector<Rational> beta = ColumnBeta(codebook.rows());
  Rational weight = 1;
  for (std::size_t k : ColumnWeights(codebook)) weight *= beta[k];
  return weight;
}

OracleResult OracleExact(const GameSpec& spec) {
  Validate(spec);
  const auto* params = std::get_if<TardosParams>(&spec.prior);
  if (params == nullptr) throw ConfigError("oracle needs the tardos prior");
  CheckSize(*params);
  if (spec.mechanism.kind == MechanismSpec::Kind::kNoisyAverage) {
    throw ConfigError("oracle needs a noiseless mechanism");
  }
  if (spec.definition != Definition::kVanilla &&
      spec.definition != Definition::kBiCriteria &&
      spec.definition != Definition::kSideInfo) {
    throw ConfigError("oracle covers the vanilla, bi-criteria and side-info "
                      "games");
  }
  if (spec.sideinfo.kind == SKind::kShuffledPair) {
    throw ConfigError("oracle does not enumerate shuffled-pair side "
                      "information");
  }
  const std::size_t N = params->N;
  const std::size_t n = params->n;
  const std::size_t d = params->d;
  const bool revealed = spec.sideinfo.kind == SKind::kRevealedRows;
  const std::size_t m = revealed ? spec.sideinfo.revealed : 0;
  const std::uint64_t s_count = Falling(N, n);
  const std::uint64_t t_count = Choose(N - m, n - m);
  const double terms = std::ldexp(1.0, static_cast<int>(N * d)) *
                       static_cast<double>(s_count) *
                       static_cast<double>(t_count);
  if (terms > kMaxTerms) throw ParameterError("oracle enumeration too large");
  const RelationSpec& rhs_relation =
      spec.definition == Definition::kBiCriteria ? *spec.relation_hat
                                                 : spec.relation;

  OracleResult out;
  Rng unused(0);
  ForEachCodebook(*params, [&](const BitMatrix& c, const Rational& weight) {
    std::uint64_t lhs_hits = 0;
    std::uint64_t rhs_hits = 0;
    ForEachOrdered(N, n, [&](const Index& s_idx) {
      const BitMatrix s = Gather(c, s_idx);
      SideInfoValue k = NoSideInfo{};
      Index fixed;
      if (revealed) {
        RevealedRows r{BitMatrix(d), {}};
        for (std::size_t i = 0; i < m; ++i) {
          r.rows.AppendRow(s.row(i));
          r.indices.push_back(s_idx[i]);
          fixed.push_back(s_idx[i]);
        }
        k = std::move(r);
      } else if (spec.sideinfo.kind == SKind::kSuperset) {
        k = Superset{c};
      }
      const Release y = ApplyMechanism(spec.mechanism, s, unused);
      const BitVector z = Reconstruct(spec.attacker, y, k, n, d);
      if (Holds(spec.relation, s, z)) ++lhs_hits;

      Index rest;
      for (std::size_t i = 0; i < N; ++i) {
        if (std::find(fixed.begin(), fixed.end(), i) == fixed.end()) {
          rest.push_back(i);
        }
      }
      ForEachSubset(rest, n - m, [&](const Index& extra) {
        Index t_idx = fixed;
        t_idx.insert(t_idx.end(), extra.begin(), extra.end());
        if (Holds(rhs_relation, Gather(c, t_idx), z)) ++rhs_hits;
        ++out.terms;
      });
    });
    out.lhs += weight * Rational(lhs_hits) / Rational(s_count);
    out.rhs += weight * Rational(rhs_hits) / Rational(s_count * t_count);
  });
  out.lhs_value = ToDouble(out.lhs);
  out.rhs_value = ToDouble(out.rhs);
  return out;
}

Rational OracleMemberPredictive(const TardosParams& params,
                                const BitMatrix& s_prime, const BitVector& z) {
  CheckSize(params);
  if (s_prime.cols() != params.d || z.size() != params.d) {
    throw DimensionError("oracle: rows differ from the tardos dimension");
  }
  const std::size_t n = s_prime.rows() + 1;
  if (n > params.N) throw ParameterError("S' does not fit the codebook");
  Rational joint = 0;
  Rational marginal = 0;
  ForEachCodebook(params, [&](const BitMatrix& c, const Rational& weight) {
    std::uint64_t match = 0;
    std::uint64_t match_z = 0;
    ForEachOrdered(params.N, n, [&](const Index& idx) {
      for (std::size_t i = 0; i + 1 < n; ++i) {
        if (c.row(idx[i]) != s_prime.row(i)) return;
      }
      ++match;
      if (c.row(idx.back()) == z) ++match_z;
    });
    joint += weight * match_z;
    marginal += weight * match;
  });
  if (marginal == 0) throw DomainError("S' has probability zero");
  return joint / marginal;
}

std::map<std::pair<RowMultiset, RowMultiset>, Rational> OracleJointFreshLaw(
    const TardosParams& params) {
  CheckSize(params);
  const Index all = Range(params.N);
  const Rational per_pair =
      Rational(1) / (Rational(Choose(params.N, params.n)) *
                     Rational(Choose(params.N, params.n)));
  std::map<std::pair<RowMultiset, RowMultiset>, Rational> law;
  ForEachCodebook(params, [&](const BitMatrix& c, const Rational& weight) {
    std::vector<RowMultiset> subsets;
    ForEachSubset(all, params.n, [&](const Index& idx) {
      subsets.push_back(Gather(c, idx).SortedRows());
    });
    for (const RowMultiset& s : subsets) {
      for (const RowMultiset& t : subsets) law[{s, t}] += weight * per_pair;
    }
  });
  return law;
}

std::map<RowMultiset, std::map<RowMultiset, Rational>> OracleConditionalTLaw(
    const TardosParams& params, std::size_t revealed) {
  CheckSize(params);
  if (revealed > params.n) throw ParameterError("cannot reveal more than n");
  const Rational per_tuple = Rational(1) / Rational(Falling(params.N, params.n));
  std::map<RowMultiset, std::map<RowMultiset, Rational>> law;
  ForEachCodebook(params, [&](const BitMatrix& c, const Rational& weight) {
    ForEachOrdered(params.N, params.n, [&](const Index& idx) {
      const BitMatrix s = Gather(c, idx);
      RowMultiset key(s.row_list().begin(), s.row_list().begin() + revealed);
      law[key][s.SortedRows()] += weight * per_tuple;
    });
  });
  for (auto& [key, given] : law) {
    Rational total = 0;
    for (const auto& [t, p] : given) total += p;
    for (auto& [t, p] : given) p /= total;
  }
  return law;
}

double MutualInformationXor(std::size_t n, std::size_t d) {
  if (n == 0 || d == 0 || d % 2 != 0 || d > 8 || n * d > 12) {
    throw ParameterError("xor mutual information needs even d <= 8, n*d <= 12");
  }
  // H is a deterministic function of S, so I(S; H) = H(H).
  const std::uint64_t cells = n * d;
  const std::uint64_t total = std::uint64_t{1} << cells;
  std::unordered_map<std::uint64_t, std::uint64_t> counts;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    BitMatrix s(d);
    for (std::size_t i = 0; i < n; ++i) {
      BitVector row(d);
      for (std::size_t j = 0; j < d; ++j) row.set(j, (mask >> (i * d + j)) & 1);
      s.AppendRow(std::move(row));
    }
    const ParityRelease h = XorParity(s);
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < d / 2; ++j) {
        if (h.h.get(i, j)) key |= std::uint64_t{1} << (i * d / 2 + j);
      }
    }
    ++counts[key];
  }
  double entropy = 0.0;
  for (const auto& [key, count] : counts) {
    const double p = static_cast<double>(count) / static_cast<double>(total);
    entropy -= p * std::log2(p);
  }
  return entropy;
}

}  // namespace exsafe
