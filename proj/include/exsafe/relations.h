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

// Reconstruction-success predicates. Every relation here is targeted: a
// per-row predicate R(x, z) lifted to datasets as "some row x of S has
// R(x, z)".

#ifndef EXSAFE_RELATIONS_H_
#define EXSAFE_RELATIONS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "exsafe/bitdata.h"

namespace exsafe {

// Nonnegative rational with an int64 numerator and positive denominator,
// kept in lowest terms.
class Ratio {
 public:
  Ratio() = default;
  Ratio(std::int64_t num, std::int64_t den);

  // Accepts "a/b", a decimal such as "0.04", or an integer. Decimal input is
  // converted exactly (0.3 is 3/10, not the nearest double).
  static Ratio Parse(std::string_view text);
  // The exact binary value of x when its denominator fits in 2^62; smaller
  // magnitudes are truncated toward zero at that resolution.
  static Ratio FromDouble(double x);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double ToDouble() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }
  std::string ToString() const;

  // value <= this * d, decided in integer arithmetic.
  bool AtLeastFraction(std::size_t value, std::size_t d) const;

  friend bool operator==(const Ratio&, const Ratio&) = default;
  friend bool operator<(const Ratio& a, const Ratio& b);
  friend bool operator<=(const Ratio& a, const Ratio& b) { return !(b < a); }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

struct RelationSpec {
  enum class Kind { kHamming, kExactMembership, kTargeted };
  Kind kind = Kind::kExactMembership;
  Ratio gamma;            // kHamming: succeed iff Ham(x, z) <= gamma * d.
  std::string predicate;  // kTargeted: id from the predicate registry.

  static RelationSpec Hamming(Ratio gamma) {
    return {Kind::kHamming, gamma, {}};
  }
  static RelationSpec ExactMembership() { return {}; }
  static RelationSpec Targeted(std::string id) {
    return {Kind::kTargeted, {}, std::move(id)};
  }
};

std::string ToString(const RelationSpec& rel);

// Throws ConfigError for gamma outside [0,1] or an unknown predicate id.
// Registered ids: "exact" (x == z) and "first-half" (x and z agree on the
// first ceil(d/2) coordinates).
void Validate(const RelationSpec& rel);

bool RowHolds(const RelationSpec& rel, const BitVector& x, const BitVector& z);

// Throws DimensionError when z and the rows of s differ in length.
bool Holds(const RelationSpec& rel, const BitMatrix& s, const BitVector& z);

// Lowest row index i with RowHolds(rel, s.row(i), z). Not invariant under
// row permutation, unlike Holds.
std::optional<std::size_t> Witness(const RelationSpec& rel, const BitMatrix& s,
                                   const BitVector& z);

// A pair (R, R-hat) for the bi-criteria game.
struct BiRelationSpec {
  RelationSpec lhs;
  RelationSpec rhs;
};

// Delta = c_delta * sqrt(ln(d / delta) / n).
double HammingSlack(double c_delta, std::size_t d, double delta,
                    std::size_t n);

// R = Hamming(gamma), R-hat = Hamming((1 + Delta) * gamma) capped at 1.
BiRelationSpec HammingBiRelation(Ratio gamma, double c_delta, std::size_t d,
                                 double delta, std::size_t n);

}  // namespace exsafe

#endif  // EXSAFE_RELATIONS_H_
