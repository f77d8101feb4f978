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

#include "exsafe/relations.h"

#include <charconv>
#include <cmath>
#include <numeric>

#include "exsafe/error.h"

namespace exsafe {
namespace {

using Wide = __int128;

std::int64_t ParseInt(std::string_view text) {
  std::int64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError("not an integer: '" + std::string(text) + "'");
  }
  return value;
}

bool AgreeOnFirstHalf(const BitVector& x, const BitVector& z) {
  const std::size_t half = (x.size() + 1) / 2;
  for (std::size_t j = 0; j < half; ++j) {
    if (x.get(j) != z.get(j)) return false;
  }
  return true;
}

}  // namespace

Ratio::Ratio(std::int64_t num, std::int64_t den) {
  if (den <= 0 || num < 0) {
    throw ParameterError("ratio needs num >= 0 and den > 0");
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Ratio Ratio::Parse(std::string_view text) {
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    return Ratio(ParseInt(text.substr(0, slash)),
                 ParseInt(text.substr(slash + 1)));
  }
  const auto dot = text.find('.');
  if (dot == std::string_view::npos) return Ratio(ParseInt(text), 1);
  const std::string_view whole = text.substr(0, dot);
  const std::string_view frac = text.substr(dot + 1);
  if (frac.size() > 17) throw ConfigError("too many decimal places");
  std::int64_t den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  const std::int64_t w = whole.empty() ? 0 : ParseInt(whole);
  const std::int64_t f = frac.empty() ? 0 : ParseInt(frac);
  return Ratio(w * den + f, den);
}

Ratio Ratio::FromDouble(double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw ParameterError("ratio must be a finite nonnegative number");
  }
  if (x == 0.0) return Ratio(0, 1);
  int exponent = 0;
  const double fraction = std::frexp(x, &exponent);
  auto mantissa = static_cast<std::int64_t>(std::ldexp(fraction, 53));
  int shift = 53 - exponent;  // x = mantissa / 2^shift
  if (shift <= 0) {
    if (shift < -9) throw ParameterError("ratio value too large");
    return Ratio(mantissa << -shift, 1);
  }
  if (shift > 62) {
    mantissa >>= (shift - 62);
    shift = 62;
  }
  return Ratio(mantissa, std::int64_t{1} << shift);
}

std::string Ratio::ToString() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

bool Ratio::AtLeastFraction(std::size_t value, std::size_t d) const {
  return static_cast<Wide>(value) * den_ <= static_cast<Wide>(num_) * d;
}

bool operator<(const Ratio& a, const Ratio& b) {
  return static_cast<Wide>(a.num_) * b.den_ < static_cast<Wide>(b.num_) * a.den_;
}

std::string ToString(const RelationSpec& rel) {
  switch (rel.kind) {
    case RelationSpec::Kind::kHamming:
      return "hamming(gamma=" + rel.gamma.ToString() + ")";
    case RelationSpec::Kind::kExactMembership:
      return "exact-membership";
    case RelationSpec::Kind::kTargeted:
      return "targeted(" + rel.predicate + ")";
  }
  return "unknown";
}

void Validate(const RelationSpec& rel) {
  if (rel.kind == RelationSpec::Kind::kHamming && Ratio(1, 1) < rel.gamma) {
    throw ConfigError("hamming relation needs 0 <= gamma <= 1");
  }
  if (rel.kind == RelationSpec::Kind::kTargeted && rel.predicate != "exact" &&
      rel.predicate != "first-half") {
    throw ConfigError("unknown targeted predicate '" + rel.predicate + "'");
  }
}

bool RowHolds(const RelationSpec& rel, const BitVector& x, const BitVector& z) {
  if (x.size() != z.size()) {
    throw DimensionError("relation: candidate and row lengths differ");
  }
  switch (rel.kind) {
    case RelationSpec::Kind::kHamming:
      return rel.gamma.AtLeastFraction(Hamming(x, z), x.size());
    case RelationSpec::Kind::kExactMembership:
      return x == z;
    case RelationSpec::Kind::kTargeted:
      if (rel.predicate == "exact") return x == z;
      if (rel.predicate == "first-half") return AgreeOnFirstHalf(x, z);
      throw ContractError("unknown targeted predicate '" + rel.predicate + "'");
  }
  return false;
}

std::optional<std::size_t> Witness(const RelationSpec& rel, const BitMatrix& s,
                                   const BitVector& z) {
  if (s.cols() != z.size()) {
    throw DimensionError("relation: candidate length differs from dataset");
  }
  for (std::size_t i = 0; i < s.rows(); ++i) {
    if (RowHolds(rel, s.row(i), z)) return i;
  }
  return std::nullopt;
}

bool Holds(const RelationSpec& rel, const BitMatrix& s, const BitVector& z) {
  return Witness(rel, s, z).has_value();
}

double HammingSlack(double c_delta, std::size_t d, double delta,
                    std::size_t n) {
  if (!(delta > 0.0) || n == 0 || d == 0) {
    throw ParameterError("slack needs delta > 0, n >= 1, d >= 1");
  }
  return c_delta * std::sqrt(std::log(static_cast<double>(d) / delta) /
                             static_cast<double>(n));
}

BiRelationSpec HammingBiRelation(Ratio gamma, double c_delta, std::size_t d,
                                 double delta, std::size_t n) {
  const double slack = HammingSlack(c_delta, d, delta, n);
  const double widened = std::min(1.0, (1.0 + slack) * gamma.ToDouble());
  Ratio gamma_hat = Ratio::FromDouble(widened);
  if (gamma_hat < gamma) gamma_hat = gamma;
  return {RelationSpec::Hamming(gamma), RelationSpec::Hamming(gamma_hat)};
}

}  // namespace exsafe
