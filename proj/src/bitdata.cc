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

#include "exsafe/bitdata.h"

#include <algorithm>
#include <bit>

#include "exsafe/error.h"

namespace exsafe {
namespace {

std::size_t WordCount(std::size_t d) { return (d + 63) / 64; }

}  // namespace

BitVector::BitVector(std::size_t d) : d_(d), words_(WordCount(d), 0) {}

BitVector::BitVector(std::initializer_list<int> bits) : BitVector(bits.size()) {
  std::size_t j = 0;
  for (int b : bits) {
    if (b != 0 && b != 1) {
      throw DomainError("BitVector entries must be 0 or 1");
    }
    set(j++, b == 1);
  }
}

BitVector BitVector::FromString(std::string_view bits) {
  BitVector v(bits.size());
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (bits[j] != '0' && bits[j] != '1') {
      throw DomainError("bit string may only contain '0' and '1'");
    }
    v.set(j, bits[j] == '1');
  }
  return v;
}

BitVector BitVector::Ones(std::size_t d) {
  BitVector v(d);
  std::fill(v.words_.begin(), v.words_.end(), ~std::uint64_t{0});
  v.ClearPadding();
  return v;
}

void BitVector::ClearPadding() {
  if (d_ % 64 != 0) {
    words_.back() &= (std::uint64_t{1} << (d_ % 64)) - 1;
  }
}

std::size_t BitVector::Popcount() const {
  std::size_t total = 0;
  for (std::uint64_t w : words_) total += std::popcount(w);
  return total;
}

std::string BitVector::ToString() const {
  std::string out(d_, '0');
  for (std::size_t j = 0; j < d_; ++j) {
    if (get(j)) out[j] = '1';
  }
  return out;
}

std::strong_ordering operator<=>(const BitVector& a, const BitVector& b) {
  if (auto c = a.d_ <=> b.d_; c != 0) return c;
  // Coordinate order: compare bit j before bit j+1.
  for (std::size_t w = 0; w < a.words_.size(); ++w) {
    const std::uint64_t diff = a.words_[w] ^ b.words_[w];
    if (diff != 0) {
      const int j = std::countr_zero(diff);
      return ((a.words_[w] >> j) & 1U) <=> ((b.words_[w] >> j) & 1U);
    }
  }
  return std::strong_ordering::equal;
}

BitMatrix::BitMatrix(std::size_t d, std::vector<BitVector> rows)
    : d_(d), rows_(std::move(rows)) {
  for (const BitVector& r : rows_) {
    if (r.size() != d_) {
      throw DimensionError("BitMatrix rows must share the declared width");
    }
  }
}

BitMatrix BitMatrix::FromStrings(std::initializer_list<std::string_view> rows) {
  std::vector<BitVector> parsed;
  parsed.reserve(rows.size());
  for (std::string_view r : rows) parsed.push_back(BitVector::FromString(r));
  const std::size_t d = parsed.empty() ? 0 : parsed.front().size();
  return BitMatrix(d, std::move(parsed));
}

void BitMatrix::AppendRow(BitVector row) {
  if (row.size() != d_) {
    throw DimensionError("appended row width differs from matrix width");
  }
  rows_.push_back(std::move(row));
}

std::vector<BitVector> BitMatrix::SortedRows() const {
  std::vector<BitVector> sorted = rows_;
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

std::size_t Hamming(const BitVector& x, const BitVector& z) {
  if (x.size() != z.size()) {
    throw DimensionError("hamming: vectors have different lengths");
  }
  const auto xw = x.words();
  const auto zw = z.words();
  std::size_t distance = 0;
  for (std::size_t w = 0; w < xw.size(); ++w) {
    distance += std::popcount(xw[w] ^ zw[w]);
  }
  return distance;
}

std::vector<std::size_t> ColumnWeights(const BitMatrix& s) {
  std::vector<std::size_t> weights(s.cols(), 0);
  for (const BitVector& r : s.row_list()) {
    const auto words = r.words();
    for (std::size_t w = 0; w < words.size(); ++w) {
      std::uint64_t bits = words[w];
      while (bits != 0) {
        ++weights[w * 64 + std::countr_zero(bits)];
        bits &= bits - 1;
      }
    }
  }
  return weights;
}

RealVector Average(const BitMatrix& s) {
  if (s.empty()) throw DomainError("average of an empty matrix");
  const auto weights = ColumnWeights(s);
  RealVector avg(weights.size());
  const double n = static_cast<double>(s.rows());
  for (std::size_t j = 0; j < weights.size(); ++j) {
    avg[j] = static_cast<double>(weights[j]) / n;
  }
  return avg;
}

std::size_t LukewarmCount(const BitMatrix& s) {
  if (s.empty()) throw DomainError("lukewarm count of an empty matrix");
  const auto weights = ColumnWeights(s);
  return static_cast<std::size_t>(
      std::count_if(weights.begin(), weights.end(), [&](std::size_t w) {
        return IsLukewarm(w, s.rows());
      }));
}

bool RemoveOneCopy(BitMatrix& s, const BitVector& row) {
  std::vector<BitVector> rows = s.row_list();
  auto it = std::find(rows.begin(), rows.end(), row);
  if (it == rows.end()) return false;
  rows.erase(it);
  s = BitMatrix(s.cols(), std::move(rows));
  return true;
}

}  // namespace exsafe
