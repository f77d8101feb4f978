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

// Bit-packed binary vectors and matrices, plus the column kernels shared by
// every sampler, mechanism and attacker.

#ifndef EXSAFE_BITDATA_H_
#define EXSAFE_BITDATA_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace exsafe {

using RealVector = std::vector<double>;

// A point of {0,1}^d packed into 64-bit words, least significant bit first.
// Bits past d in the last word are always zero.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t d);
  BitVector(std::initializer_list<int> bits);

  // Parses a string of '0'/'1' characters; any other character throws
  // DomainError.
  static BitVector FromString(std::string_view bits);
  static BitVector Ones(std::size_t d);

  std::size_t size() const { return d_; }
  bool get(std::size_t j) const {
    return (words_[j >> 6] >> (j & 63)) & 1U;
  }
  void set(std::size_t j, bool value) {
    const std::uint64_t mask = std::uint64_t{1} << (j & 63);
    if (value) {
      words_[j >> 6] |= mask;
    } else {
      words_[j >> 6] &= ~mask;
    }
  }
  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> mutable_words() { return words_; }
  // Clears the padding bits past d after a bulk word write.
  void ClearPadding();

  std::size_t Popcount() const;
  std::string ToString() const;

  friend bool operator==(const BitVector&, const BitVector&) = default;
  friend std::strong_ordering operator<=>(const BitVector& a,
                                          const BitVector& b);

 private:
  std::size_t d_ = 0;
  std::vector<std::uint64_t> words_;
};

// n rows of common width d. An empty matrix still carries its width.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t d) : d_(d) {}
  BitMatrix(std::size_t d, std::vector<BitVector> rows);
  // Rows given as '0'/'1' strings; the width is taken from the first row.
  static BitMatrix FromStrings(std::initializer_list<std::string_view> rows);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return d_; }
  bool empty() const { return rows_.empty(); }
  const BitVector& row(std::size_t i) const { return rows_[i]; }
  const std::vector<BitVector>& row_list() const { return rows_; }
  bool get(std::size_t i, std::size_t j) const { return rows_[i].get(j); }

  void AppendRow(BitVector row);

  // Rows sorted lexicographically: the multiset view of the dataset.
  std::vector<BitVector> SortedRows() const;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t d_ = 0;
  std::vector<BitVector> rows_;
};

// Number of coordinates where x and z differ. Throws DimensionError on a
// length mismatch.
std::size_t Hamming(const BitVector& x, const BitVector& z);

// Per-column count of ones.
std::vector<std::size_t> ColumnWeights(const BitMatrix& s);

// Column means of s. Throws DomainError when s has no rows.
RealVector Average(const BitMatrix& s);

// A column of weight w in an n-row matrix is lukewarm when
// n/4 <= w <= 3n/4, compared exactly as 4w >= n and 4w <= 3n.
inline bool IsLukewarm(std::size_t weight, std::size_t n) {
  return 4 * weight >= n && 4 * weight <= 3 * n;
}

// Number of lukewarm columns of s. Throws DomainError when s has no rows.
std::size_t LukewarmCount(const BitMatrix& s);

// Removes one copy of `row` from `s` (multiset difference). Returns false
// and leaves `s` untouched when no row equals `row`.
bool RemoveOneCopy(BitMatrix& s, const BitVector& row);

}  // namespace exsafe

#endif  // EXSAFE_BITDATA_H_
