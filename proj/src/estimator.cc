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

#include "exsafe/estimator.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "exsafe/error.h"
#include "exsafe/surprisal.h"

namespace exsafe {
namespace {

using SKind = SideInfoSpec::Kind;

bool IsGated(Definition d) {
  return d == Definition::kSurprisalGated || d == Definition::kTargetedGated;
}

bool UsesConditionalT(Definition d) {
  return d == Definition::kSideInfo || IsGated(d);
}

// True when some row x of S with R(x, z) passes
// h(x | K, S\{x}) >= xi * h(x | S\{x}).
bool PassesGate(const GameSpec& spec, const BitMatrix& s, const BitVector& z,
                const SideInfoValue& k) {
  for (std::size_t i = 0; i < s.rows(); ++i) {
    if (!RowHolds(spec.relation, s.row(i), z)) continue;
    std::vector<BitVector> rest;
    rest.reserve(s.rows() - 1);
    for (std::size_t r = 0; r < s.rows(); ++r) {
      if (r != i) rest.push_back(s.row(r));
    }
    SurprisalQuery q{s.row(i), BitMatrix(s.cols(), std::move(rest)), k,
                     spec.prior};
    const double given_k = SurprisalGivenSideinfo(q);
    const double plain =
        SurprisalGivenRows(q.z, q.conditioning_rows, spec.prior);
    if (given_k >= spec.xi * plain) return true;
  }
  return false;
}

World SampleTrialWorld(const GameSpec& spec, std::uint64_t trial) {
  Rng nature(spec.master_seed, trial, Stream::kNature);
  World world = SampleNature(spec.prior, nature);
  world.trace = {spec.master_seed, trial};
  Rng data(spec.master_seed, trial, Stream::kDataset);
  return SampleDataset(std::move(world), data);
}

std::size_t LargestM(double tpr_lower, std::size_t n) {
  std::size_t m = n;
  while (m > 0 && tpr_lower < static_cast<double>(m) / static_cast<double>(n)) {
    --m;
  }
  return m;
}

}  // namespace

Interval WilsonInterval(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) throw ParameterError("interval needs at least one trial");
  if (successes > trials) throw ParameterError("more successes than trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = kWilsonZ * kWilsonZ;
  const double scale = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / scale;
  const double half =
      kWilsonZ / scale * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  Interval out{std::max(0.0, center - half), std::min(1.0, center + half)};
  if (successes == 0) out.lower = 0.0;
  if (successes == trials) out.upper = 1.0;
  return out;
}

std::string ToString(Definition definition) {
  switch (definition) {
    case Definition::kVanilla:
      return "vanilla";
    case Definition::kBiCriteria:
      return "bi-criteria";
    case Definition::kSideInfo:
      return "side-info";
    case Definition::kSurprisalGated:
      return "surprisal-gated";
    case Definition::kTargetedGated:
      return "targeted-gated";
    case Definition::kMia:
      return "mia";
  }
  return "unknown";
}

Definition ParseDefinition(std::string_view name) {
  for (Definition d : {Definition::kVanilla, Definition::kBiCriteria,
                       Definition::kSideInfo, Definition::kSurprisalGated,
                       Definition::kTargetedGated, Definition::kMia}) {
    if (ToString(d) == name) return d;
  }
  throw ConfigError("unknown definition '" + std::string(name) + "'");
}

std::string ToString(Verdict verdict) {
  switch (verdict) {
    case Verdict::kSatisfied:
      return "satisfied";
    case Verdict::kViolated:
      return "violated";
    case Verdict::kInconclusive:
      return "inconclusive";
  }
  return "unknown";
}

Verdict Decide(const Interval& lhs, const Interval& rhs, double epsilon,
               double delta) {
  const double factor = std::exp(epsilon);
  if (lhs.upper <= factor * rhs.lower + delta) return Verdict::kSatisfied;
  if (lhs.lower > factor * rhs.upper + delta) return Verdict::kViolated;
  return Verdict::kInconclusive;
}

void Validate(const GameSpec& spec) {
  auto fail = [&](const std::string& what) {
    throw ConfigError((spec.name.empty() ? "game" : spec.name) + ": " + what);
  };
  if (spec.trials < 1) fail("trials must be at least 1");
  if (!(spec.epsilon >= 0.0) || !(spec.delta >= 0.0)) {
    fail("epsilon and delta must be nonnegative");
  }
  if (!(spec.xi > 0.0 && spec.xi <= 1.0)) fail("xi must lie in (0, 1]");
  try {
    Validate(spec.prior);
  } catch (const Error& e) {
    fail(e.what());
  }
  Validate(spec.relation);
  if (spec.mechanism.kind == MechanismSpec::Kind::kNoisyAverage &&
      !(spec.mechanism.eps_hat > 0.0)) {
    fail("noisy average needs eps_hat > 0");
  }
  if (spec.mechanism.kind == MechanismSpec::Kind::kXorParity &&
      Dimension(spec.prior) % 2 != 0) {
    fail("xor parity needs an even dimension");
  }
  CheckCompatible(spec.attacker, spec.mechanism, spec.sideinfo);

  const bool hypercube =
      std::holds_alternative<UniformHypercubeParams>(spec.prior);
  const bool tardos = std::holds_alternative<TardosParams>(spec.prior);
  const std::size_t n = SampleSize(spec.prior);

  if (spec.definition == Definition::kMia) {
    if (!IsDistinguisher(spec.attacker)) fail("mia needs a distinguisher");
    return;
  }
  if (IsDistinguisher(spec.attacker)) {
    fail("reconstruction games need a reconstruction attacker");
  }
  if ((spec.definition == Definition::kVanilla ||
       spec.definition == Definition::kBiCriteria) &&
      spec.sideinfo.kind != SKind::kNone) {
    fail(ToString(spec.definition) + " takes no side information");
  }
  if (spec.definition == Definition::kBiCriteria) {
    if (!spec.relation_hat) fail("bi-criteria needs a second relation");
    Validate(*spec.relation_hat);
  }
  if (spec.sideinfo.kind == SKind::kRevealedRows && spec.sideinfo.revealed > n) {
    fail("cannot reveal more than n rows");
  }
  if (spec.attacker.kind == AttackerSpec::Kind::kSubtract &&
      spec.sideinfo.revealed + 1 != n) {
    fail("the subtract attacker needs exactly n-1 revealed rows");
  }
  if (spec.sideinfo.kind == SKind::kSuperset && hypercube) {
    fail("the uniform hypercube has no finite support to reveal");
  }
  if (spec.sideinfo.kind == SKind::kShuffledPair &&
      std::holds_alternative<SpikedParams>(spec.prior)) {
    fail("shuffled-pair conditioning is not defined for the spiked prior");
  }
  if (IsGated(spec.definition)) {
    if (!tardos && !hypercube) {
      fail("gated games need the tardos or hypercube prior");
    }
    if (spec.sideinfo.kind == SKind::kSuperset) {
      fail("gated games do not support superset side information");
    }
    if (spec.definition == Definition::kSurprisalGated &&
        spec.relation.kind != RelationSpec::Kind::kExactMembership) {
      fail("surprisal-gated games need exact membership");
    }
  }
}

GameEstimate RunGame(const GameSpec& spec, std::size_t workers) {
  Validate(spec);
  if (spec.definition == Definition::kMia) {
    throw ConfigError("use RunGameMia for the mia game");
  }
  const std::size_t n = SampleSize(spec.prior);
  const std::size_t d = Dimension(spec.prior);
  const RelationSpec& rhs_relation =
      spec.definition == Definition::kBiCriteria ? *spec.relation_hat
                                                 : spec.relation;
  enum { kLhs, kRhs, kLukewarm, kGateFail, kWidth };

  const auto counts = RunTrials(
      spec.trials, workers, kWidth,
      [&](std::uint64_t trial, std::vector<std::uint64_t>& c) {
        const World world = SampleTrialWorld(spec, trial);
        const BitMatrix& s = world.s.rows;
        if (5 * LukewarmCount(s) >= d) ++c[kLukewarm];

        Rng side(spec.master_seed, trial, Stream::kSideInfo);
        const SideInfoValue k = MakeSideinfo(spec.sideinfo, world, side);
        Rng mech(spec.master_seed, trial, Stream::kMechanism);
        const Release y = ApplyMechanism(spec.mechanism, s, mech);
        const BitVector z = Reconstruct(spec.attacker, y, k, n, d);

        bool lhs = Holds(spec.relation, s, z);
        if (lhs && IsGated(spec.definition)) {
          lhs = PassesGate(spec, s, z, k);
          if (!lhs) ++c[kGateFail];
        }
        if (lhs) ++c[kLhs];

        Dataset t;
        if (UsesConditionalT(spec.definition)) {
          Rng rng(spec.master_seed, trial, Stream::kConditionalT);
          t = SampleTGivenSideinfo(world, k, rng);
        } else {
          Rng rng(spec.master_seed, trial, Stream::kFreshT);
          t = SampleFreshT(world, rng);
        }
        if (Holds(rhs_relation, t.rows, z)) ++c[kRhs];
      });

  GameEstimate out;
  out.trials = spec.trials;
  out.lhs_successes = counts[kLhs];
  out.rhs_successes = counts[kRhs];
  out.lhs = static_cast<double>(out.lhs_successes) / spec.trials;
  out.rhs = static_cast<double>(out.rhs_successes) / spec.trials;
  out.lhs_ci = WilsonInterval(out.lhs_successes, spec.trials);
  out.rhs_ci = WilsonInterval(out.rhs_successes, spec.trials);
  out.verdict = Decide(out.lhs_ci, out.rhs_ci, spec.epsilon, spec.delta);
  out.lukewarm_trials = counts[kLukewarm];
  out.gate_failures = counts[kGateFail];
  return out;
}

MiaEstimate RunGameMia(const GameSpec& spec, std::size_t workers) {
  Validate(spec);
  if (spec.definition != Definition::kMia) {
    throw ConfigError("RunGameMia needs the mia definition");
  }
  const std::size_t n = SampleSize(spec.prior);
  enum { kMember, kFresh, kWidth };
  const auto counts = RunTrials(
      spec.trials, workers, kWidth,
      [&](std::uint64_t trial, std::vector<std::uint64_t>& c) {
        const World world = SampleTrialWorld(spec, trial);
        Rng mech(spec.master_seed, trial, Stream::kMechanism);
        const Release y = ApplyMechanism(spec.mechanism, world.s.rows, mech);
        Rng member_rng(spec.master_seed, trial, Stream::kMiaMember);
        const BitVector& member = world.s.rows.row(member_rng.UniformIndex(n));
        Rng fresh_rng(spec.master_seed, trial, Stream::kMiaFresh);
        const BitVector fresh = SampleFreshPoint(world, fresh_rng).second;
        if (Distinguish(spec.attacker, y, member)) ++c[kMember];
        if (Distinguish(spec.attacker, y, fresh)) ++c[kFresh];
      });

  MiaEstimate out;
  out.trials = spec.trials;
  out.n = n;
  out.member_in = counts[kMember];
  out.fresh_in = counts[kFresh];
  out.tpr = static_cast<double>(out.member_in) / spec.trials;
  out.fpr = static_cast<double>(out.fresh_in) / spec.trials;
  out.tpr_ci = WilsonInterval(out.member_in, spec.trials);
  out.fpr_ci = WilsonInterval(out.fresh_in, spec.trials);
  out.m_lower = LargestM(out.tpr_ci.lower, n);
  out.m_point = static_cast<std::size_t>(
      (static_cast<unsigned __int128>(out.member_in) * n) / spec.trials);
  out.fpr_within_xi = out.fpr_ci.upper <= spec.xi;
  return out;
}

std::vector<std::uint64_t> RunTrials(
    std::uint64_t trials, std::size_t workers, std::size_t width,
    const std::function<void(std::uint64_t, std::vector<std::uint64_t>&)>& fn) {
  workers = std::max<std::size_t>(1, std::min<std::uint64_t>(workers, trials));
  std::vector<std::vector<std::uint64_t>> partial(
      workers, std::vector<std::uint64_t>(width, 0));
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr error;
  std::mutex error_mu;

  auto work = [&](std::size_t w) {
    try {
      while (!stop.load(std::memory_order_relaxed)) {
        const std::uint64_t t = next.fetch_add(1, std::memory_order_relaxed);
        if (t >= trials) break;
        fn(t, partial[w]);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mu);
      if (!error) error = std::current_exception();
      stop = true;
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (std::thread& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);

  std::vector<std::uint64_t> total(width, 0);
  for (const auto& p : partial) {
    for (std::size_t i = 0; i < width; ++i) total[i] += p[i];
  }
  return total;
}

}  // namespace exsafe
