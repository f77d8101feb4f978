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


#include "support/enumeration.h"

#include <algorithm>

#include <boost/math/quadrature/gauss.hpp>

namespace exsafe::testing {

double BetaMoment(int ones, int zeros) {
  auto f = [=](double p) {
    return std::pow(p, ones) * std::pow(1.0 - p, zeros);
  };
  // 30 nodes integrate polynomials up to degree 59 exactly.
  return boost::math::quadrature::gauss<double, 30>::integrate(
      f, 0.0, 1.0);
}

double RowsIntegral(const Rows& rows, std::size_t d) {
  double out = 1.0;
  for (std::size_t j = 0; j < d; ++j) {
    int ones = 0;
    for (const Row& r : rows) ones += r[j] == '1';
    out *= BetaMoment(ones, static_cast<int>(rows.size()) - ones);
  }
  return out;
}

void ForEachCodebook(std::size_t N, std::size_t d,
                     const std::function<void(const Rows&, double)>& fn) {
  const std::size_t cells = N * d;
  for (unsigned long code = 0; code < (1UL << cells); ++code) {
    Rows rows(N, Row(d, '0'));
    for (std::size_t c = 0; c < cells; ++c) {
      if ((code >> c) & 1UL) rows[c / d][c % d] = '1';
    }
    fn(rows, RowsIntegral(rows, d));
  }
}

void ForEachOrderedTuple(
    std::size_t N, std::size_t n,
    const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> tuple;
  std::vector<bool> used(N, false);
  std::function<void()> rec = [&] {
    if (tuple.size() == n) {
      fn(tuple);
      return;
    }
    for (std::size_t i = 0; i < N; ++i) {
      if (used[i]) continue;
      used[i] = true;
      tuple.push_back(i);
      rec();
      tuple.pop_back();
      used[i] = false;
    }
  };
  rec();
}

Rows Sorted(Rows rows) {
  std::sort(rows.begin(), rows.end());
  return rows;
}

double MemberPredictive(std::size_t N, std::size_t d, const Rows& s_prime,
                        const Row& z) {
  const std::size_t n = s_prime.size() + 1;
  double num = 0.0;
  double den = 0.0;
  ForEachCodebook(N, d, [&](const Rows& c, double w) {
    ForEachOrderedTuple(N, n, [&](const std::vector<std::size_t>& t) {
      for (std::size_t i = 0; i + 1 < n; ++i) {
        if (c[t[i]] != s_prime[i]) return;
      }
      den += w;
      if (c[t.back()] == z) num += w;
    });
  });
  return num / den;
}

namespace {

// Sorted n-subsets of [0, N).
std::vector<std::vector<std::size_t>> Subsets(std::size_t N, std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  ForEachOrderedTuple(N, n, [&](const std::vector<std::size_t>& t) {
    if (std::is_sorted(t.begin(), t.end())) out.push_back(t);
  });
  return out;
}

Rows Pick(const Rows& c, const std::vector<std::size_t>& idx) {
  Rows out;
  for (std::size_t i : idx) out.push_back(c[i]);
  return out;
}

}  // namespace

JointLaw FreshJointLaw(std::size_t N, std::size_t d, std::size_t n) {
  const auto subsets = Subsets(N, n);
  const double each = 1.0 / static_cast<double>(subsets.size() * subsets.size());
  JointLaw law;
  ForEachCodebook(N, d, [&](const Rows& c, double w) {
    for (const auto& is : subsets) {
      for (const auto& it : subsets) {
        law[{Sorted(Pick(c, is)), Sorted(Pick(c, it))}] += w * each;
      }
    }
  });
  return law;
}

ConditionalLaw RevealedConditionalLaw(std::size_t N, std::size_t d,
                                      std::size_t n, std::size_t revealed) {
  ConditionalLaw law;
  ForEachCodebook(N, d, [&](const Rows& c, double w) {
    ForEachOrderedTuple(N, n, [&](const std::vector<std::size_t>& t) {
      const Rows s = Pick(c, t);
      const Rows k(s.begin(), s.begin() + static_cast<long>(revealed));
      law[k][Sorted(s)] += w;
    });
  });
  for (auto& [k, given] : law) {
    double total = 0.0;
    for (const auto& [s, p] : given) total += p;
    for (auto& [s, p] : given) p /= total;
  }
  return law;
}

double PairPosterior(const Rows& s_prime, const Row& k1, const Row& k2,
                     const Row& z, std::size_t d) {
  const Row* pair[2] = {&k1, &k2};
  double num = 0.0;
  double den = 0.0;
  for (int b = 0; b < 2; ++b) {
    const Row& member = *pair[b];
    const Row& fresh = *pair[1 - b];
    // Member is v.
    Rows all = s_prime;
    all.push_back(member);
    all.push_back(fresh);
    const double as_v = RowsIntegral(all, d);
    den += as_v;
    if (member == z) num += as_v;
    // Member is conditioning row r; v is free in the denominator.
    for (const Row& r : s_prime) {
      if (r != member) continue;
      Rows without_v = s_prime;
      without_v.push_back(fresh);
      den += RowsIntegral(without_v, d);
      Rows with_z = without_v;
      with_z.push_back(z);
      num += RowsIntegral(with_z, d);
    }
  }
  return num / den;
}

}  // namespace exsafe::testing
