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

#include "exsafe/surprisal.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <vector>

#include "exsafe/error.h"

namespace exsafe {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Per-column predictive model fitted to the conditioning rows.
class ColumnModel {
 public:
  ColumnModel(const BitMatrix& rows, const PriorSpec& prior) {
    if (std::holds_alternative<TardosParams>(prior)) {
      tardos_ = true;
    } else if (!std::holds_alternative<UniformHypercubeParams>(prior)) {
      throw ContractError("surprisal needs the tardos or hypercube prior");
    }
    m_ = rows.rows();
    weights_ = ColumnWeights(rows);
  }

  // log2 Pr[next draw = x].
  double LogSingle(const BitVector& x) const {
    Check(x);
    if (!tardos_) return -static_cast<double>(x.size());
    double total = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double one = PosteriorColumnMean(weights_[j], m_);
      total += std::log2(x.get(j) ? one : 1.0 - one);
    }
    return total;
  }

  // log2 Pr[next two draws = (x, y)].
  double LogPair(const BitVector& x, const BitVector& y) const {
    Check(x);
    Check(y);
    if (!tardos_) return -2.0 * static_cast<double>(x.size());
    double total = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      total += std::log2(PairColumnPredictive(x.get(j), y.get(j), weights_[j], m_));
    }
    return total;
  }

 private:
  void Check(const BitVector& x) const {
    if (x.size() != weights_.size()) {
      throw DimensionError("surprisal: candidate and rows differ in width");
    }
  }

  bool tardos_ = false;
  std::size_t m_ = 0;
  std::vector<std::size_t> weights_;
};

// log2 of sum_i 2^terms[i]; -inf for an empty or all -inf list.
double LogSumExp2(const std::vector<double>& terms) {
  double top = -kInf;
  for (double t : terms) top = std::max(top, t);
  if (top == -kInf) return -kInf;
  double sum = 0.0;
  for (double t : terms) sum += std::exp2(t - top);
  return top + std::log2(sum);
}

std::map<BitVector, std::size_t> Counts(const BitMatrix& rows) {
  std::map<BitVector, std::size_t> counts;
  for (const BitVector& r : rows.row_list()) ++counts[r];
  return counts;
}

bool SubMultiset(const BitMatrix& small,
                 std::map<BitVector, std::size_t> counts) {
  for (const BitVector& r : small.row_list()) {
    auto it = counts.find(r);
    if (it == counts.end() || it->second == 0) return false;
    --it->second;
  }
  return true;
}

double GivenRevealed(const SurprisalQuery& q, const RevealedRows& k) {
  auto counts = Counts(q.conditioning_rows);
  if (SubMultiset(k.rows, counts)) {
    return SurprisalGivenRows(q.z, q.conditioning_rows, q.prior);
  }
  ++counts[q.z];
  if (SubMultiset(k.rows, counts)) return 0.0;
  throw ContractError("revealed rows are not part of the sample");
}

double GivenPair(const SurprisalQuery& q, const ShuffledPair& k) {
  const ColumnModel model(q.conditioning_rows, q.prior);
  const auto counts = Counts(q.conditioning_rows);
  auto count_of = [&](const BitVector& x) {
    auto it = counts.find(x);
    return it == counts.end() ? 0.0 : static_cast<double>(it->second);
  };
  const BitVector* pair[2] = {&k.k1, &k.k2};
  std::vector<double> num;
  std::vector<double> den;
  for (int b = 0; b < 2; ++b) {
    const BitVector& member = *pair[b];
    const BitVector& fresh = *pair[1 - b];
    // The member is v itself.
    den.push_back(model.LogPair(member, fresh));
    if (member == q.z) num.push_back(model.LogPair(q.z, fresh));
    // The member is one of the conditioning rows; v is unconstrained.
    const double copies = count_of(member);
    if (copies > 0.0) {
      den.push_back(std::log2(copies) + model.LogSingle(fresh));
      num.push_back(std::log2(copies) + model.LogPair(q.z, fresh));
    }
  }
  const double log_num = LogSumExp2(num);
  if (log_num == -kInf) return kInf;
  return std::max(0.0, LogSumExp2(den) - log_num);
}

}  // namespace

double PosteriorColumnMean(std::size_t ones, std::size_t rows) {
  if (ones > rows) throw DomainError("column has more ones than rows");
  return (static_cast<double>(ones) + 1.0) / (static_cast<double>(rows) + 2.0);
}

double PairColumnPredictive(bool a, bool b, std::size_t ones,
                            std::size_t rows) {
  if (ones > rows) throw DomainError("column has more ones than rows");
  const double k = static_cast<double>(ones);
  const double m = static_cast<double>(rows);
  const double den = (m + 2.0) * (m + 3.0);
  if (a && b) return (k + 1.0) * (k + 2.0) / den;
  if (!a && !b) return (m - k + 1.0) * (m - k + 2.0) / den;
  return (k + 1.0) * (m - k + 1.0) / den;
}

double SurprisalGivenRows(const BitVector& z, const BitMatrix& rows) {
  return SurprisalGivenRows(z, rows, TardosParams{});
}

double SurprisalGivenRows(const BitVector& z, const BitMatrix& rows,
                          const PriorSpec& prior) {
  if (z.size() != rows.cols()) {
    throw DimensionError("surprisal: candidate and rows differ in width");
  }
  return -ColumnModel(rows, prior).LogSingle(z);
}

BitVector PosteriorMode(const BitMatrix& rows) {
  const auto weights = ColumnWeights(rows);
  BitVector mode(rows.cols());
  for (std::size_t j = 0; j < weights.size(); ++j) {
    mode.set(j, 2 * weights[j] >= rows.rows());
  }
  return mode;
}

double SurprisalGivenSideinfo(const SurprisalQuery& q) {
  if (q.z.size() != q.conditioning_rows.cols()) {
    throw DimensionError("surprisal: candidate and rows differ in width");
  }
  if (std::holds_alternative<NoSideInfo>(q.sideinfo)) {
    return SurprisalGivenRows(q.z, q.conditioning_rows, q.prior);
  }
  if (const auto* k = std::get_if<RevealedRows>(&q.sideinfo)) {
    return GivenRevealed(q, *k);
  }
  if (const auto* k = std::get_if<ShuffledPair>(&q.sideinfo)) {
    return GivenPair(q, *k);
  }
  throw ContractError("surprisal does not support superset side information");
}

}  // namespace exsafe
