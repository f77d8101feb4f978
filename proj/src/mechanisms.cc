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

#include "exsafe/mechanisms.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "exsafe/error.h"

namespace exsafe {

void NoiseParams::Validate() const {
  if (!(eps_hat > 0.0) || !std::isfinite(eps_hat)) {
    throw ParameterError("eps_hat must be a positive finite number");
  }
  if (n == 0) throw ParameterError("noise parameters need n >= 1");
}

std::string ToString(const MechanismSpec& spec) {
  switch (spec.kind) {
    case MechanismSpec::Kind::kExactAverage:
      return "exact-average";
    case MechanismSpec::Kind::kNoisyAverage: {
      std::ostringstream out;
      out << "noisy-average(eps_hat=" << spec.eps_hat << ")";
      return out.str();
    }
    case MechanismSpec::Kind::kXorParity:
      return "xor-parity";
    case MechanismSpec::Kind::kBot:
      return "bot";
  }
  return "unknown";
}

RealVector ExactAverage(const BitMatrix& s) { return Average(s); }

RealVector NoisyAverage(const BitMatrix& s, const NoiseParams& noise,
                        Rng& rng) {
  noise.Validate();
  if (noise.n != s.rows()) {
    throw ParameterError("noise parameters were set for a different n");
  }
  RealVector y = Average(s);
  const double scale = noise.Scale();
  for (double& v : y) v += rng.Laplace(scale);
  return y;
}

BitVector PairSignature(const BitVector& x) {
  if (x.size() % 2 != 0) {
    throw DimensionError("xor parity needs an even number of columns");
  }
  BitVector sig(x.size() / 2);
  for (std::size_t j = 0; j < sig.size(); ++j) {
    sig.set(j, x.get(2 * j) != x.get(2 * j + 1));
  }
  return sig;
}

ParityRelease XorParity(const BitMatrix& s) {
  if (s.cols() % 2 != 0) {
    throw DimensionError("xor parity needs an even number of columns");
  }
  ParityRelease out{BitMatrix(s.cols() / 2)};
  for (const BitVector& row : s.row_list()) out.h.AppendRow(PairSignature(row));
  return out;
}

BotRelease Bot(const BitMatrix&) { return {}; }

Release ApplyMechanism(const MechanismSpec& spec, const BitMatrix& s,
                       Rng& rng) {
  switch (spec.kind) {
    case MechanismSpec::Kind::kExactAverage:
      return ExactAverage(s);
    case MechanismSpec::Kind::kNoisyAverage:
      return NoisyAverage(s, NoiseParams{spec.eps_hat, s.rows()}, rng);
    case MechanismSpec::Kind::kXorParity:
      return XorParity(s);
    case MechanismSpec::Kind::kBot:
      return Bot(s);
  }
  throw ContractError("unknown mechanism");
}

double DpLogDensityRatio(const RealVector& y, const BitMatrix& s,
                         const BitMatrix& s_prime, const NoiseParams& noise) {
  noise.Validate();
  if (s.rows() != s_prime.rows() || s.cols() != s_prime.cols()) {
    throw ContractError("neighboring datasets must share n and d");
  }
  if (s.rows() != noise.n) {
    throw ParameterError("noise parameters were set for a different n");
  }
  if (y.size() != s.cols()) throw DimensionError("release length differs");
  std::size_t differing = 0;
  for (std::size_t i = 0; i < s.rows(); ++i) {
    if (s.row(i) != s_prime.row(i)) ++differing;
  }
  if (differing > 1) {
    throw ContractError("datasets differ in more than one row");
  }
  return DpLogDensityRatioFromMeans(y, Average(s), Average(s_prime), noise);
}

double DpLogDensityRatioFromMeans(const RealVector& y, const RealVector& mean_s,
                                  const RealVector& mean_s_prime,
                                  const NoiseParams& noise) {
  noise.Validate();
  if (y.size() != mean_s.size() || y.size() != mean_s_prime.size()) {
    throw DimensionError("release length differs");
  }
  const double scale = noise.Scale();
  // Laplace log density is -|y - mu| / scale; the normalizers cancel.
  double ratio = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    ratio += (std::abs(y[j] - mean_s_prime[j]) - std::abs(y[j] - mean_s[j])) /
             scale;
  }
  return ratio;
}

double MarginalError(const Release& y, const BitMatrix& s) {
  const auto* values = std::get_if<RealVector>(&y);
  if (values == nullptr) {
    throw ContractError("marginal error needs a real-valued release");
  }
  if (values->size() != s.cols()) {
    throw DimensionError("release length differs from dataset width");
  }
  const RealVector avg = Average(s);
  double worst = 0.0;
  for (std::size_t j = 0; j < avg.size(); ++j) {
    worst = std::max(worst, std::abs((*values)[j] - avg[j]));
  }
  return worst;
}

}  // namespace exsafe
