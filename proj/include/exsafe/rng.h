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

// Seeded random streams. Every sampling site draws from its own generator,
// keyed by (master seed, trial index, stream label), so a trial's outcome
// does not depend on which worker ran it or in what order.

#ifndef EXSAFE_RNG_H_
#define EXSAFE_RNG_H_

#include <cstddef>
#include <cstdint>
#include <random>

namespace exsafe {

// Fixed labels, one per sampling site. Values are part of the
// reproducibility contract; append, never renumber.
enum class Stream : std::uint64_t {
  kNature = 1,
  kDataset = 2,
  kFreshT = 3,
  kSideInfo = 4,
  kConditionalT = 5,
  kMechanism = 6,
  kMiaMember = 7,
  kMiaFresh = 8,
  kCoupled = 9,
  kCodebookRow = 10,
  kAuxiliary = 11,
};

// Mixes the three keys through SplitMix64 finalizers.
std::uint64_t DeriveSeed(std::uint64_t master_seed, std::uint64_t trial,
                         std::uint64_t label);

class Rng {
 public:
  using result_type = std::mt19937_64::result_type;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t master_seed, std::uint64_t trial, Stream stream)
      : engine_(DeriveSeed(master_seed, trial,
                           static_cast<std::uint64_t>(stream))) {}

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  std::uint64_t Bits() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // Uniform on (0, 1).
  double UniformOpen() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }
  bool Bernoulli(double p) { return Uniform() < p; }
  // Uniform integer in [0, n). Unbiased; n must be positive.
  std::size_t UniformIndex(std::size_t n);
  // Zero-mean Laplace draw with the given scale, by inverting the CDF of a
  // single uniform.
  double Laplace(double scale);

 private:
  std::mt19937_64 engine_;
};

}  // namespace exsafe

#endif  // EXSAFE_RNG_H_
