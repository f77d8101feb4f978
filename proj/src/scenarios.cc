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

#include "exsafe/scenarios.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <map>
#include <sstream>

#include "exsafe/error.h"
#include "exsafe/estimator.h"
#include "exsafe/oracle.h"
#include "exsafe/surprisal.h"

namespace exsafe {
namespace {

using AKind = AttackerSpec::Kind;
using MKind = MechanismSpec::Kind;

struct Context {
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  std::vector<ResultRow> rows;
  std::vector<Series> series;
  KeyValues constants;
  std::uint64_t next_game = 0;

  std::uint64_t NextSeed() {
    return DeriveSeed(seed, next_game++,
                      static_cast<std::uint64_t>(Stream::kAuxiliary));
  }
  void Constant(const std::string& key, const std::string& value) {
    constants.emplace_back(key, value);
  }
};

using Runner = void (*)(const ParamSet&, Context&);

struct Entry {
  ScenarioInfo info;
  Runner run;
};

std::string Real(double x) { return FormatReal(x); }

std::string Describe(const GameSpec& g) {
  std::ostringstream out;
  out << "prior=" << Describe(g.prior) << " mechanism=" << ToString(g.mechanism)
      << " attacker=" << ToString(g.attacker)
      << " sideinfo=" << ToString(g.sideinfo)
      << " relation=" << ToString(g.relation);
  if (g.relation_hat) out << " relation_hat=" << ToString(*g.relation_hat);
  out << " epsilon=" << Real(g.epsilon) << " delta=" << Real(g.delta);
  if (g.definition == Definition::kSurprisalGated ||
      g.definition == Definition::kTargetedGated ||
      g.definition == Definition::kMia) {
    out << " xi=" << Real(g.xi);
  }
  return out.str();
}

ResultRow GameRow(const GameSpec& g, const GameEstimate& e) {
  ResultRow r;
  r.game = g.name;
  r.definition = ToString(g.definition);
  r.params = Describe(g);
  r.trials = e.trials;
  r.lhs_successes = e.lhs_successes;
  r.lhs = e.lhs;
  r.lhs_lower = e.lhs_ci.lower;
  r.lhs_upper = e.lhs_ci.upper;
  r.rhs_successes = e.rhs_successes;
  r.rhs = e.rhs;
  r.rhs_lower = e.rhs_ci.lower;
  r.rhs_upper = e.rhs_ci.upper;
  r.verdict = ToString(e.verdict);
  r.detail = "lukewarm_trials=" + std::to_string(e.lukewarm_trials) +
             ";gate_failures=" + std::to_string(e.gate_failures);
  return r;
}

ResultRow MiaRow(const GameSpec& g, const MiaEstimate& e) {
  ResultRow r;
  r.game = g.name;
  r.definition = ToString(g.definition);
  r.params = Describe(g);
  r.trials = e.trials;
  r.lhs_successes = e.member_in;
  r.lhs = e.tpr;
  r.lhs_lower = e.tpr_ci.lower;
  r.lhs_upper = e.tpr_ci.upper;
  r.rhs_successes = e.fresh_in;
  r.rhs = e.fpr;
  r.rhs_lower = e.fpr_ci.lower;
  r.rhs_upper = e.fpr_ci.upper;
  r.verdict = e.fpr_within_xi ? "memorizing" : "not-memorizing";
  r.detail = "m_lower=" + std::to_string(e.m_lower) +
             ";m_point=" + std::to_string(e.m_point) +
             ";n=" + std::to_string(e.n);
  return r;
}

ResultRow CheckRow(const std::string& game, const std::string& params,
                   std::uint64_t samples, double measured, double threshold,
                   bool met, const std::string& expectation,
                   const std::string& detail) {
  ResultRow r;
  r.game = game;
  r.definition = "check";
  r.params = params;
  r.trials = samples;
  r.lhs = r.lhs_lower = r.lhs_upper = measured;
  r.rhs = r.rhs_lower = r.rhs_upper = threshold;
  r.verdict = met ? "pass" : "fail";
  r.expectation = expectation;
  r.met = met;
  r.detail = detail;
  return r;
}

AttackerSpec ParseAttacker(const std::string& name) {
  static const std::map<std::string, AKind> kNames = {
      {"round", AKind::kRound},
      {"subtract", AKind::kSubtract},
      {"two-candidate", AKind::kTwoCandidate},
      {"parity-fit", AKind::kParityFit},
      {"superset-lookup", AKind::kSupersetLookup},
      {"constant-majority", AKind::kConstantMajority},
      {"always-in", AKind::kAlwaysIn},
  };
  const auto it = kNames.find(name);
  if (it == kNames.end()) throw ConfigError("unknown attacker '" + name + "'");
  return AttackerSpec::Of(it->second);
}

double HalfWidth(double lower, double upper) { return (upper - lower) / 2.0; }

World TrialWorld(const PriorSpec& prior, std::uint64_t seed,
                 std::uint64_t trial) {
  Rng nature(seed, trial, Stream::kNature);
  World world = SampleNature(prior, nature);
  Rng data(seed, trial, Stream::kDataset);
  return SampleDataset(std::move(world), data);
}

// Total variation between empirical counts and an exact law over the same
// index space; counts past the end of `exact` are outcomes the law misses.
double TotalVariation(const std::vector<std::uint64_t>& counts,
                      const std::vector<double>& exact) {
  std::uint64_t total = 0;
  for (std::uint64_t c : counts) total += c;
  if (total == 0) return 1.0;
  double tv = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double p = i < exact.size() ? exact[i] : 0.0;
    tv += std::abs(static_cast<double>(counts[i]) / total - p);
  }
  return tv / 2.0;
}

// ---------------------------------------------------------------------------
// Scenarios.

void XorMia(const ParamSet& p, Context& ctx) {
  const std::size_t n = p.Count("n");
  const std::size_t d = p.Count("d");
  const double xi = p.Real("xi");
  ctx.Constant("xi", Real(xi));
  ctx.Constant("fpr_reference", Real(n * std::exp2(-static_cast<double>(d) / 2)));

  GameSpec g;
  g.name = "parity-fit";
  g.prior = UniformHypercubeParams{d, n};
  g.mechanism = {MKind::kXorParity, 0.0};
  g.attacker = AttackerSpec::Of(AKind::kParityFit);
  g.definition = Definition::kMia;
  g.xi = xi;
  g.trials = p.Count("trials");
  g.master_seed = ctx.NextSeed();
  MiaEstimate e = RunGameMia(g, ctx.workers);
  ResultRow row = MiaRow(g, e);
  row.expectation = "tpr = 1, fpr_upper <= xi, m = n";
  row.met = e.member_in == e.trials && e.fpr_within_xi && e.m_point == n;
  ctx.rows.push_back(row);

  g.name = "always-in";
  g.attacker = AttackerSpec::Of(AKind::kAlwaysIn);
  g.trials = p.Count("control_trials");
  g.master_seed = ctx.NextSeed();
  e = RunGameMia(g, ctx.workers);
  row = MiaRow(g, e);
  row.expectation = "fpr = 1, fails xi";
  row.met = e.fresh_in == e.trials && !e.fpr_within_xi;
  ctx.rows.push_back(row);

  g.name = "bot-bit-probe";
  g.mechanism = {MKind::kBot, 0.0};
  g.attacker = AttackerSpec{AKind::kBitProbe, {}, 0};
  g.master_seed = ctx.NextSeed();
  e = RunGameMia(g, ctx.workers);
  row = MiaRow(g, e);
  const double spread = std::hypot(HalfWidth(e.tpr_ci.lower, e.tpr_ci.upper),
                                   HalfWidth(e.fpr_ci.lower, e.fpr_ci.upper));
  row.expectation = "|tpr - fpr| <= 3 combined halfwidths";
  row.met = std::abs(e.tpr - e.fpr) <= 3.0 * spread;
  ctx.rows.push_back(row);
}

void XorMiExact(const ParamSet& p, Context& ctx) {
  const double tol = p.Real("tolerance");
  for (const std::string& c : p.List("cases")) {
    const auto x = c.find('x');
    if (x == std::string::npos) {
      throw ConfigError("cases: expected NxD, got '" + c + "'");
    }
    const std::size_t n = ParseCount("cases", c.substr(0, x));
    const std::size_t d = ParseCount("cases", c.substr(x + 1));
    const double value = MutualInformationXor(n, d);
    const double expected = static_cast<double>(n * d) / 2.0;
    ctx.rows.push_back(CheckRow(
        "mutual-information", "n=" + std::to_string(n) + " d=" + std::to_string(d),
        std::uint64_t{1} << (n * d), value, expected,
        std::abs(value - expected) <= tol, "I(S;H) = n*d/2 within tolerance",
        "abs_error=" + Real(std::abs(value - expected))));
  }
}

void SupersetAttack(const ParamSet& p, Context& ctx) {
  const std::size_t n = p.Count("n");
  const std::size_t d = p.Count("d");
  GameSpec g;
  g.name = "superset-lookup";
  g.prior = RandomSupportParams{p.Count("support"), d, n};
  g.mechanism = {MKind::kXorParity, 0.0};
  g.attacker = AttackerSpec::Of(AKind::kSupersetLookup);
  g.sideinfo = SideInfoSpec::Superset();
  g.relation = RelationSpec::ExactMembership();
  g.definition = Definition::kSideInfo;
  g.epsilon = p.Real("epsilon");
  g.delta = p.Real("delta");
  g.trials = p.Count("trials");
  g.master_seed = ctx.NextSeed();
  const GameEstimate e = RunGame(g, ctx.workers);
  ResultRow row = GameRow(g, e);
  row.expectation = "violated";
  row.met = e.verdict == Verdict::kViolated;
  ctx.rows.push_back(row);
}

void TrivialPrior(const ParamSet& p, Context& ctx) {
  const std::size_t n = p.Count("n");
  const std::size_t d = p.Count("d");
  const double reference = 1.0 - std::exp2(-static_cast<double>(n));
  ctx.Constant("spiked_reference", Real(reference));
  GameSpec g;
  g.mechanism = {MKind::kBot, 0.0};
  g.attacker = AttackerSpec::Constant(BitVector(d));
  g.relation = RelationSpec::ExactMembership();
  g.definition = Definition::kVanilla;
  g.epsilon = p.Real("epsilon");
  g.delta = p.Real("delta");
  g.trials = p.Count("trials");

  g.name = "spiked-zero-guess";
  g.prior = SpikedParams{p.Count("support"), d, n};
  g.master_seed = ctx.NextSeed();
  GameEstimate e = RunGame(g, ctx.workers);
  ResultRow row = GameRow(g, e);
  row.expectation = "satisfied";
  row.met = e.verdict == Verdict::kSatisfied;
  row.detail += ";reference=" + Real(reference);
  ctx.rows.push_back(row);

  g.name = "hypercube-zero-guess";
  g.prior = UniformHypercubeParams{d, n};
  g.master_seed = ctx.NextSeed();
  e = RunGame(g, ctx.workers);
  row = GameRow(g, e);
  row.expectation = "satisfied";
  row.met = e.verdict == Verdict::kSatisfied;
  ctx.rows.push_back(row);
}

void VanillaHamming(const ParamSet& p, Context& ctx) {
  const std::size_t d = p.Count("d");
  const Ratio lemma_gamma = p.Fraction("lemma_gamma");
  const double lhs_bound = p.Real("lhs_bound");
  ctx.Constant("lemma_gamma", lemma_gamma.ToString());
  ctx.Constant("lhs_bound", Real(lhs_bound));
  for (const std::string& attacker : p.List("attackers")) {
    Series series{"lhs-vs-gamma-" + attacker, "gamma", "lhs", {}};
    for (const std::string& gamma_text : p.List("gammas")) {
      const Ratio gamma = Ratio::Parse(gamma_text);
      GameSpec g;
      g.name = attacker + "@gamma=" + gamma.ToString();
      g.prior = TardosParams{p.Count("N"), d, p.Count("n")};
      g.mechanism = {MKind::kExactAverage, 0.0};
      g.attacker = ParseAttacker(attacker);
      g.relation = RelationSpec::Hamming(gamma);
      g.definition = Definition::kVanilla;
      g.epsilon = p.Real("epsilon");
      g.delta = p.Real("delta");
      g.trials = p.Count("trials");
      g.master_seed = ctx.NextSeed();
      const GameEstimate e = RunGame(g, ctx.workers);
      ResultRow row = GameRow(g, e);
      if (gamma <= lemma_gamma) {
        row.expectation =
            "satisfied, lhs_upper <= lhs_bound, lukewarm in >= 99% of trials";
        row.met = e.verdict == Verdict::kSatisfied &&
                  e.lhs_ci.upper <= lhs_bound &&
                  100 * e.lukewarm_trials >= 99 * e.trials;
      }
      series.points.emplace_back(gamma.ToDouble(), e.lhs);
      ctx.rows.push_back(row);
    }
    ctx.series.push_back(series);
  }
}

void BiCriteria(const ParamSet& p, Context& ctx) {
  const std::size_t n = p.Count("n");
  const std::size_t d = p.Count("d");
  const Ratio gamma = p.Fraction("gamma");
  const double c_delta = p.Real("c_delta");
  const double delta = p.Real("delta");
  const BiRelationSpec bi = HammingBiRelation(gamma, c_delta, d, delta, n);
  ctx.Constant("c_delta", Real(c_delta));
  ctx.Constant("Delta", Real(HammingSlack(c_delta, d, delta, n)));
  ctx.Constant("gamma", gamma.ToString());
  ctx.Constant("gamma_hat", Real(bi.rhs.gamma.ToDouble()));
  for (const std::string& attacker : p.List("attackers")) {
    GameSpec g;
    g.name = attacker;
    g.prior = TardosParams{p.Count("N"), d, n};
    g.mechanism = {MKind::kExactAverage, 0.0};
    g.attacker = ParseAttacker(attacker);
    g.relation = bi.lhs;
    g.relation_hat = bi.rhs;
    g.definition = Definition::kBiCriteria;
    g.delta = delta;
    g.trials = p.Count("trials");
    g.master_seed = ctx.NextSeed();
    const GameEstimate e = RunGame(g, ctx.workers);
    ResultRow row = GameRow(g, e);
    row.expectation = "satisfied";
    row.met = e.verdict == Verdict::kSatisfied;
    ctx.rows.push_back(row);
  }
}

void SubtractAttack(const ParamSet& p, Context& ctx) {
  const std::size_t N = p.Count("N");
  const std::size_t n = p.Count("n");
  const double reference = 1.0 / static_cast<double>(N - n + 1);
  ctx.Constant("rhs_reference", Real(reference));
  GameSpec g;
  g.name = "subtract";
  g.prior = TardosParams{N, p.Count("d"), n};
  g.mechanism = {MKind::kExactAverage, 0.0};
  g.attacker = AttackerSpec::Of(AKind::kSubtract);
  g.sideinfo = SideInfoSpec::RevealedRows(n - 1);
  g.relation = RelationSpec::ExactMembership();
  g.definition = Definition::kSideInfo;
  g.epsilon = p.Real("epsilon");
  g.delta = p.Real("delta");
  g.trials = p.Count("trials");
  g.master_seed = ctx.NextSeed();
  const GameEstimate e = RunGame(g, ctx.workers);
  ResultRow row = GameRow(g, e);
  row.expectation = "violated, lhs = 1, rhs interval covers 1/(N-n+1)";
  row.met = e.verdict == Verdict::kViolated && e.lhs_successes == e.trials &&
            e.rhs_ci.lower <= reference && reference <= e.rhs_ci.upper;
  row.detail += ";rhs_reference=" + Real(reference);
  ctx.rows.push_back(row);
}

void TwoCandidate(const ParamSet& p, Context& ctx) {
  const std::size_t n = p.Count("n");
  const double eps_hat = p.Real("eps_hat");
  const double margin = p.Real("margin");
  ctx.Constant("eps_hat", Real(eps_hat));
  ctx.Constant("noise_scale", Real(NoiseParams{eps_hat, n}.Scale()));
  ctx.Constant("xi", Real(p.Real("xi")));
  GameSpec g;
  g.name = "two-candidate";
  g.prior = TardosParams{p.Count("N"), p.Count("d"), n};
  g.mechanism = {MKind::kNoisyAverage, eps_hat};
  g.attacker = AttackerSpec::Of(AKind::kTwoCandidate);
  g.sideinfo = SideInfoSpec::ShuffledPair();
  g.relation = RelationSpec::ExactMembership();
  g.definition = Definition::kSideInfo;
  g.trials = p.Count("trials");
  g.master_seed = ctx.NextSeed();
  GameEstimate e = RunGame(g, ctx.workers);
  ResultRow row = GameRow(g, e);
  row.expectation = "violated, lhs - rhs >= margin, intervals disjoint";
  row.met = e.verdict == Verdict::kViolated && e.lhs - e.rhs >= margin &&
            e.lhs_ci.lower > e.rhs_ci.upper;
  ctx.rows.push_back(row);

  g.name = "two-candidate-gated";
  g.definition = Definition::kSurprisalGated;
  g.xi = p.Real("xi");
  g.master_seed = ctx.NextSeed();
  e = RunGame(g, ctx.workers);
  row = GameRow(g, e);
  row.expectation = "satisfied";
  row.met = e.verdict == Verdict::kSatisfied;
  ctx.rows.push_back(row);
}

void DpNoisySecure(const ParamSet& p, Context& ctx) {
  const std::size_t n = p.Count("n");
  const double eps_hat = p.Real("eps_hat");
  const double lhs_bound = p.Real("lhs_bound");
  const double exact_min = p.Real("exact_lhs_min");
  ctx.Constant("xi", Real(p.Real("xi")));
  ctx.Constant("eps_hat", Real(eps_hat));
  GameSpec g;
  g.prior = TardosParams{p.Count("N"), p.Count("d"), n};
  g.attacker = AttackerSpec::Of(AKind::kSubtract);
  g.sideinfo = SideInfoSpec::RevealedRows(n - 1);
  g.relation = RelationSpec::ExactMembership();
  g.definition = Definition::kSurprisalGated;
  g.xi = p.Real("xi");
  g.delta = p.Real("delta");
  g.trials = p.Count("trials");

  Series series{"gated-lhs-vs-eps-hat", "eps_hat", "lhs", {}};
  g.name = "noisy-gated";
  g.mechanism = {MKind::kNoisyAverage, eps_hat};
  g.master_seed = ctx.NextSeed();
  GameEstimate e = RunGame(g, ctx.workers);
  ResultRow row = GameRow(g, e);
  row.expectation = "satisfied, lhs_upper <= lhs_bound";
  row.met = e.verdict == Verdict::kSatisfied && e.lhs_ci.upper <= lhs_bound;
  ctx.rows.push_back(row);
  series.points.emplace_back(eps_hat, e.lhs);

  g.name = "exact-gated";
  g.mechanism = {MKind::kExactAverage, 0.0};
  g.master_seed = ctx.NextSeed();
  e = RunGame(g, ctx.workers);
  row = GameRow(g, e);
  row.expectation = "lhs >= exact_lhs_min";
  row.met = e.lhs >= exact_min;
  ctx.rows.push_back(row);

  for (double sweep : p.RealList("sweep")) {
    g.name = "noisy-gated@eps_hat=" + Real(sweep);
    g.mechanism = {MKind::kNoisyAverage, sweep};
    g.master_seed = ctx.NextSeed();
    e = RunGame(g, ctx.workers);
    ctx.rows.push_back(GameRow(g, e));
    series.points.emplace_back(sweep, e.lhs);
  }
  std::sort(series.points.begin(), series.points.end());
  ctx.series.push_back(series);
}

void DpRatioCheck(const ParamSet& p, Context& ctx) {
  const std::size_t n = p.Count("n");
  const std::size_t d = p.Count("d");
  const std::uint64_t pairs = p.Count("pairs");
  const std::uint64_t outputs = p.Count("outputs");
  const NoiseParams noise{p.Real("eps_hat"), n};
  noise.Validate();
  const double bound = noise.eps_hat * static_cast<double>(d);
  const double tol = p.Real("tolerance");
  const PriorSpec prior = UniformHypercubeParams{d, n};
  const std::uint64_t seed = ctx.NextSeed();
  std::vector<double> worst(pairs, 0.0);
  const auto counts = RunTrials(
      pairs, ctx.workers, 1,
      [&](std::uint64_t pair, std::vector<std::uint64_t>& c) {
        const World world = TrialWorld(prior, seed, pair);
        Rng aux(seed, pair, Stream::kAuxiliary);
        const std::size_t victim = aux.UniformIndex(n);
        std::vector<BitVector> rows = world.s.rows.row_list();
        rows[victim] = SampleFreshPoint(world, aux).second;
        const RealVector a = Average(world.s.rows);
        const RealVector b = Average(BitMatrix(d, std::move(rows)));
        Rng mech(seed, pair, Stream::kMechanism);
        RealVector y(d);
        for (std::uint64_t o = 0; o < outputs; ++o) {
          for (std::size_t j = 0; j < d; ++j) {
            y[j] = a[j] + mech.Laplace(noise.Scale());
          }
          const double r = std::abs(DpLogDensityRatioFromMeans(y, a, b, noise));
          worst[pair] = std::max(worst[pair], r);
          if (r > bound + tol) ++c[0];
        }
      });
  const double max_ratio = *std::max_element(worst.begin(), worst.end());
  ctx.Constant("eps_hat_times_d", Real(bound));
  ctx.rows.push_back(CheckRow(
      "log-density-ratio",
      "n=" + std::to_string(n) + " d=" + std::to_string(d) +
          " eps_hat=" + Real(noise.eps_hat) + " pairs=" + std::to_string(pairs) +
          " outputs=" + std::to_string(outputs),
      pairs * outputs, max_ratio, bound, counts[0] == 0,
      "max |log ratio| <= eps_hat*d + tolerance, zero violations",
      "violations=" + std::to_string(counts[0])));
}

void SurprisalOracle(const ParamSet& p, Context& ctx) {
  const double tol = p.Real("tolerance");
  // Closed form against exact enumeration.
  const TardosParams tiny{3, 2, 2};
  double worst = 0.0;
  std::uint64_t cases = 0;
  for (int s = 0; s < 4; ++s) {
    for (int z = 0; z < 4; ++z) {
      const BitVector sv{s & 1, (s >> 1) & 1};
      const BitVector zv{z & 1, (z >> 1) & 1};
      const BitMatrix s_prime(2, {sv});
      const double exact = -std::log2(
          OracleMemberPredictive(tiny, s_prime, zv).convert_to<double>());
      worst = std::max(worst, std::abs(SurprisalGivenRows(zv, s_prime) - exact));
      ++cases;
    }
  }
  ctx.rows.push_back(CheckRow("closed-form-vs-enumeration", "N=3 n=2 d=2",
                              cases, worst, tol, worst <= tol,
                              "max abs difference <= tolerance", ""));

  // Rule of succession against the Beta integral ratio.
  double rule_worst = 0.0;
  for (auto [k, m] : {std::pair<std::size_t, std::size_t>{1, 2}, {0, 2}}) {
    // int p^(k+1) (1-p)^(m-k) / int p^k (1-p)^(m-k), both Beta integrals.
    auto beta = [](std::size_t a, std::size_t b) -> Rational {
      Rational num = 1;
      for (std::size_t i = 2; i <= a; ++i) num *= i;
      for (std::size_t i = 2; i <= b; ++i) num *= i;
      Rational den = 1;
      for (std::size_t i = 2; i <= a + b + 1; ++i) den *= i;
      return num / den;
    };
    const double exact = (beta(k + 1, m - k) / beta(k, m - k)).convert_to<double>();
    rule_worst = std::max(rule_worst, std::abs(PosteriorColumnMean(k, m) - exact));
  }
  ctx.rows.push_back(CheckRow(
      "rule-of-succession", "(k,m) in {(1,2),(0,2)}", 2, rule_worst, tol,
      rule_worst <= tol, "max abs difference <= tolerance",
      "mean(1,2)=" + Real(PosteriorColumnMean(1, 2)) +
          ";mean(0,2)=" + Real(PosteriorColumnMean(0, 2))));

  // Lukewarm lower bound at the column-wise posterior mode.
  const std::size_t d = p.Count("lukewarm_d");
  const PriorSpec prior = TardosParams{p.Count("lukewarm_N"), d,
                                       p.Count("lukewarm_n")};
  const std::uint64_t worlds = p.Count("lukewarm_worlds");
  const double per_d = p.Real("lukewarm_bound_per_d");
  const std::uint64_t seed = ctx.NextSeed();
  double min_h = std::numeric_limits<double>::infinity();
  std::uint64_t accepted = 0;
  std::uint64_t attempt = 0;
  while (accepted < worlds) {
    if (attempt >= 1000 * worlds) {
      throw ParameterError("too few worlds meet the lukewarm condition");
    }
    const World world = TrialWorld(prior, seed, attempt++);
    if (5 * LukewarmCount(world.s.rows) < d) continue;
    std::vector<BitVector> rest = world.s.rows.row_list();
    rest.pop_back();
    const BitMatrix s_hat(d, std::move(rest));
    min_h = std::min(min_h, SurprisalGivenRows(PosteriorMode(s_hat), s_hat));
    ++accepted;
  }
  const double threshold = per_d * static_cast<double>(d);
  ctx.rows.push_back(CheckRow(
      "lukewarm-lower-bound", Describe(prior), accepted, min_h, threshold,
      min_h >= threshold, "min over worlds of h(z*|S') >= bound_per_d * d",
      "attempts=" + std::to_string(attempt)));
}

void CoupledSamplerCheck(const ParamSet& p, Context& ctx) {
  const double tv_bound = p.Real("tv_bound");
  const TardosParams params{p.Count("N"), p.Count("d"), p.Count("n")};
  const std::uint64_t samples = p.Count("samples");
  const auto law = OracleJointFreshLaw(params);
  std::map<std::pair<RowMultiset, RowMultiset>, std::size_t> index;
  std::vector<double> exact;
  for (const auto& [key, prob] : law) {
    index.emplace(key, exact.size());
    exact.push_back(prob.convert_to<double>());
  }
  const std::string shape = "N=" + std::to_string(params.N) +
                            " n=" + std::to_string(params.n) +
                            " d=" + std::to_string(params.d);

  auto tally = [&](std::vector<std::uint64_t>& c, const BitMatrix& s,
                   const BitMatrix& t) {
    const auto it = index.find({s.SortedRows(), t.SortedRows()});
    ++c[it == index.end() ? exact.size() : it->second];
  };
  std::uint64_t seed = ctx.NextSeed();
  auto counts = RunTrials(samples, ctx.workers, exact.size() + 1,
                          [&](std::uint64_t t, std::vector<std::uint64_t>& c) {
                            Rng rng(seed, t, Stream::kCoupled);
                            const CoupledWorld w = SampleCoupledST(params, rng);
                            tally(c, w.s, w.t);
                          });
  double tv = TotalVariation(counts, exact);
  ctx.rows.push_back(CheckRow("coupled-vs-exact", shape, samples, tv, tv_bound,
                              tv <= tv_bound, "total variation <= tv_bound",
                              ""));

  seed = ctx.NextSeed();
  counts = RunTrials(samples, ctx.workers, exact.size() + 1,
                     [&](std::uint64_t t, std::vector<std::uint64_t>& c) {
                       const World w = TrialWorld(params, seed, t);
                       Rng rng(seed, t, Stream::kFreshT);
                       tally(c, w.s.rows, SampleFreshT(w, rng).rows);
                     });
  tv = TotalVariation(counts, exact);
  ctx.rows.push_back(CheckRow("independent-vs-exact", shape, samples, tv,
                              tv_bound, tv <= tv_bound,
                              "total variation <= tv_bound", ""));

  // Overlap of the two index sets.
  const TardosParams wide{p.Count("overlap_N"), 1, p.Count("overlap_n")};
  const double expected = static_cast<double>(wide.n * wide.n) / wide.N;
  const double rel_tol = p.Real("overlap_tolerance");
  seed = ctx.NextSeed();
  counts = RunTrials(samples, ctx.workers, 1,
                     [&](std::uint64_t t, std::vector<std::uint64_t>& c) {
                       Rng rng(seed, t, Stream::kCoupled);
                       c[0] += SampleCoupledST(wide, rng).overlap;
                     });
  const double mean = static_cast<double>(counts[0]) / samples;
  ctx.rows.push_back(CheckRow(
      "mean-overlap",
      "N=" + std::to_string(wide.N) + " n=" + std::to_string(wide.n), samples,
      mean, expected, std::abs(mean - expected) <= rel_tol * expected,
      "|mean overlap - n^2/N| <= overlap_tolerance * n^2/N", ""));

  // T given revealed rows against the Bayes conditional.
  const TardosParams cond{p.Count("cond_N"), p.Count("cond_d"),
                          p.Count("cond_n")};
  const std::size_t revealed = p.Count("cond_revealed");
  const auto cond_law = OracleConditionalTLaw(cond, revealed);
  std::map<std::pair<RowMultiset, RowMultiset>, std::size_t> cond_index;
  std::vector<std::size_t> group;  // K of each cell
  std::vector<double> cond_exact;
  std::size_t k_count = 0;
  for (const auto& [k, given] : cond_law) {
    for (const auto& [t, prob] : given) {
      cond_index.emplace(std::make_pair(k, t), cond_exact.size());
      cond_exact.push_back(prob.convert_to<double>());
      group.push_back(k_count);
    }
    ++k_count;
  }
  seed = ctx.NextSeed();
  counts = RunTrials(
      samples, ctx.workers, cond_exact.size() + 1,
      [&](std::uint64_t t, std::vector<std::uint64_t>& c) {
        const World w = TrialWorld(cond, seed, t);
        Rng side(seed, t, Stream::kSideInfo);
        const SideInfoValue k =
            MakeSideinfo(SideInfoSpec::RevealedRows(revealed), w, side);
        Rng rng(seed, t, Stream::kConditionalT);
        const Dataset tset = SampleTGivenSideinfo(w, k, rng);
        const auto& rows = std::get<RevealedRows>(k).rows.row_list();
        const auto it = cond_index.find({rows, tset.rows.SortedRows()});
        ++c[it == cond_index.end() ? cond_exact.size() : it->second];
      });
  double worst_tv = counts.back() > 0 ? 1.0 : 0.0;
  for (std::size_t g = 0; g < k_count; ++g) {
    std::vector<std::uint64_t> sub;
    std::vector<double> sub_exact;
    for (std::size_t i = 0; i < cond_exact.size(); ++i) {
      if (group[i] != g) continue;
      sub.push_back(counts[i]);
      sub_exact.push_back(cond_exact[i]);
    }
    worst_tv = std::max(worst_tv, TotalVariation(sub, sub_exact));
  }
  ctx.rows.push_back(CheckRow(
      "conditional-vs-bayes",
      "N=" + std::to_string(cond.N) + " n=" + std::to_string(cond.n) +
          " d=" + std::to_string(cond.d) +
          " revealed=" + std::to_string(revealed),
      samples, worst_tv, tv_bound, worst_tv <= tv_bound,
      "max over K of total variation <= tv_bound",
      "k_values=" + std::to_string(k_count)));
}

void MarginalsAccuracy(const ParamSet& p, Context& ctx) {
  const std::size_t n = p.Count("n");
  const std::size_t d = p.Count("d");
  const double eps_hat = p.Real("eps_hat");
  const double beta = p.Real("beta");
  const double alpha =
      std::log(2.0 * static_cast<double>(d) / beta) / (eps_hat * n);
  ctx.Constant("alpha", Real(alpha));
  const PriorSpec prior = UniformHypercubeParams{d, n};
  const MechanismSpec mech{MKind::kNoisyAverage, eps_hat};
  const std::uint64_t trials = p.Count("trials");
  const std::uint64_t seed = ctx.NextSeed();
  const auto counts =
      RunTrials(trials, ctx.workers, 1,
                [&](std::uint64_t t, std::vector<std::uint64_t>& c) {
                  const World w = TrialWorld(prior, seed, t);
                  Rng rng(seed, t, Stream::kMechanism);
                  const Release y = ApplyMechanism(mech, w.s.rows, rng);
                  if (MarginalError(y, w.s.rows) <= alpha) ++c[0];
                });
  const double fraction = static_cast<double>(counts[0]) / trials;
  ResultRow row = CheckRow(
      "error-within-alpha",
      "n=" + std::to_string(n) + " d=" + std::to_string(d) +
          " eps_hat=" + Real(eps_hat) + " beta=" + Real(beta),
      trials, fraction, 1.0 - beta, fraction >= 1.0 - beta,
      "Pr[max error <= ln(2d/beta)/(eps_hat n)] >= 1 - beta",
      "alpha=" + Real(alpha));
  row.lhs_successes = counts[0];
  const Interval ci = WilsonInterval(counts[0], trials);
  row.lhs_lower = ci.lower;
  row.lhs_upper = ci.upper;
  ctx.rows.push_back(row);
}

// ---------------------------------------------------------------------------
// Registry.

const std::vector<Entry>& Registry() {
  static const std::vector<Entry> kEntries = {
      {{"xor-mia",
        "membership inference against the pair-XOR release",
        {{"n", "8", "sample size"},
         {"d", "32", "dimension (even)"},
         {"trials", "100000", "trials of the parity-fit game"},
         {"control_trials", "10000", "trials of each control game"},
         {"xi", "0.001", "false-positive budget"}}},
       XorMia},
      {{"xor-mi-exact",
        "exact I(S;H) of the pair-XOR release by enumeration",
        {{"cases", "1x2,2x2,1x4", "comma list of NxD sizes"},
         {"tolerance", "1e-9", "absolute tolerance"}}},
       XorMiExact},
      {{"superset-attack",
        "XOR release plus the support as side information",
        {{"n", "8", "sample size"},
         {"d", "32", "dimension (even)"},
         {"support", "800", "support size m (100 n)"},
         {"trials", "2000", "trials"},
         {"epsilon", "0", "epsilon"},
         {"delta", "0.1", "delta"}}},
       SupersetAttack},
      {{"trivial-prior",
        "constant zero guess against the spiked prior and the hypercube",
        {{"n", "10", "sample size"},
         {"d", "64", "dimension"},
         {"support", "1000", "support size m of the spiked prior (100 n)"},
         {"trials", "2000", "trials"},
         {"epsilon", "0", "epsilon"},
         {"delta", "0.01", "delta"}}},
       TrivialPrior},
      {{"vanilla-hamming",
        "exact average against Hamming reconstruction, sweeping gamma",
        {{"N", "200", "codebook size"},
         {"n", "50", "sample size"},
         {"d", "256", "dimension"},
         {"gammas", "0.02,0.04,0.06,0.08,0.1,0.12,0.14,0.16,0.18,0.2",
          "relation radii"},
         {"attackers", "round,constant-majority", "attackers"},
         {"trials", "2000", "trials per game"},
         {"epsilon", "0", "epsilon"},
         {"delta", "0.01", "delta"},
         {"lemma_gamma", "1/25", "largest gamma with an expectation"},
         {"lhs_bound", "0.01", "required lhs upper bound"}}},
       VanillaHamming},
      {{"bi-criteria",
        "exact average against Hamming radii gamma and gamma-hat",
        {{"N", "500", "codebook size"},
         {"n", "50", "sample size"},
         {"d", "512", "dimension"},
         {"gamma", "0.3", "lhs radius"},
         {"c_delta", "3", "slack constant in Delta"},
         {"delta", "0.05", "delta"},
         {"attackers", "round", "attackers"},
         {"trials", "2000", "trials per game"}}},
       BiCriteria},
      {{"subtract-attack",
        "exact average with n-1 revealed rows",
        {{"N", "200", "codebook size"},
         {"n", "50", "sample size"},
         {"d", "64", "dimension"},
         {"trials", "2000", "trials"},
         {"epsilon", "0", "epsilon"},
         {"delta", "0.1", "delta"}}},
       SubtractAttack},
      {{"two-candidate",
        "noisy average with a shuffled member/fresh pair as side information",
        {{"N", "1000", "codebook size"},
         {"n", "10", "sample size"},
         {"d", "4096", "dimension"},
         {"eps_hat", "0.2", "per-coordinate privacy parameter"},
         {"trials", "1000", "trials per game"},
         {"xi", "0.9", "gate fraction of the gated variant"},
         {"margin", "0.2", "required lhs - rhs"}}},
       TwoCandidate},
      {{"dp-noisy-secure",
        "surprisal-gated subtract attack on noisy and exact averages",
        {{"N", "200", "codebook size"},
         {"n", "50", "sample size"},
         {"d", "512", "dimension"},
         {"xi", "0.9", "gate fraction"},
         {"eps_hat", "0.02", "privacy parameter with an expectation"},
         {"sweep", "0.05,0.1,0.2,0.5,1,2", "further eps_hat values"},
         {"trials", "500", "trials per game"},
         {"delta", "0.05", "delta"},
         {"lhs_bound", "0.05", "required gated lhs upper bound"},
         {"exact_lhs_min", "0.95", "required gated lhs of the exact average"}}},
       DpNoisySecure},
      {{"dp-ratio-check",
        "Laplace log-density ratios over neighboring datasets",
        {{"pairs", "1000", "neighboring pairs"},
         {"outputs", "1000", "outputs per pair"},
         {"n", "50", "sample size"},
         {"d", "64", "dimension"},
         {"eps_hat", "0.1", "privacy parameter"},
         {"tolerance", "1e-9", "slack on the bound"}}},
       DpRatioCheck},
      {{"surprisal-oracle",
        "surprisal closed forms against enumeration, and the lukewarm bound",
        {{"tolerance", "1e-9", "absolute tolerance"},
         {"lukewarm_N", "200", "codebook size"},
         {"lukewarm_n", "50", "sample size"},
         {"lukewarm_d", "256", "dimension"},
         {"lukewarm_worlds", "100", "worlds meeting the lukewarm condition"},
         {"lukewarm_bound_per_d", "0.08", "required bits per column"}}},
       SurprisalOracle},
      {{"coupled-sampler-check",
        "coupled and conditional samplers against exact laws",
        {{"N", "3", "codebook size"},
         {"n", "2", "sample size"},
         {"d", "1", "dimension"},
         {"samples", "100000", "samples per check"},
         {"tv_bound", "0.02", "total variation bound"},
         {"overlap_N", "20", "codebook size of the overlap check"},
         {"overlap_n", "5", "sample size of the overlap check"},
         {"overlap_tolerance", "0.01", "relative tolerance on E[overlap]"},
         {"cond_N", "3", "codebook size of the conditional check"},
         {"cond_n", "2", "sample size of the conditional check"},
         {"cond_d", "2", "dimension of the conditional check"},
         {"cond_revealed", "1", "revealed rows"}}},
       CoupledSamplerCheck},
      {{"marginals-accuracy",
        "accuracy of the noisy average",
        {{"n", "100", "sample size"},
         {"d", "64", "dimension"},
         {"eps_hat", "0.5", "privacy parameter"},
         {"beta", "0.05", "failure probability"},
         {"trials", "10000", "trials"}}},
       MarginalsAccuracy},
  };
  return kEntries;
}

const Entry& FindEntry(const std::string& name) {
  for (const Entry& e : Registry()) {
    if (e.info.name == name) return e;
  }
  throw ConfigError("unknown scenario '" + name + "'");
}

std::string UtcNow(const char* format) {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[64];
  std::strftime(buf, sizeof(buf), format, &tm);
  return buf;
}

}  // namespace

std::vector<ScenarioInfo> ListScenarios() {
  std::vector<ScenarioInfo> out;
  for (const Entry& e : Registry()) out.push_back(e.info);
  return out;
}

ScenarioInfo FindScenario(const std::string& name) {
  return FindEntry(name).info;
}

ResultManifest RunScenario(const RunOptions& options) {
  const Entry& entry = FindEntry(options.scenario);
  ParamSet params(entry.info.params);
  for (const auto& [key, value] : options.overrides) {
    params.Override(key, value);
  }
  Context ctx;
  ctx.seed = options.seed;
  ctx.workers = std::max<std::uint64_t>(1, options.workers);

  ResultManifest m;
  m.scenario = entry.info.name;
  m.label = options.label.empty() ? UtcNow("%Y%m%dT%H%M%SZ") : options.label;
  m.seed = options.seed;
  m.workers = ctx.workers;
  m.params = params.Resolved();
  m.started_at = UtcNow("%Y-%m-%dT%H:%M:%SZ");
  const auto start = std::chrono::steady_clock::now();
  entry.run(params, ctx);
  m.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  m.constants = std::move(ctx.constants);
  m.rows = std::move(ctx.rows);
  m.series = std::move(ctx.series);
  m.expectations_met = std::all_of(m.rows.begin(), m.rows.end(),
                                   [](const ResultRow& r) { return r.met; });
  return m;
}

std::filesystem::path OutputDir(const RunOptions& options,
                                const ResultManifest& manifest) {
  return options.out_dir / manifest.scenario / manifest.label;
}

RunOptions OptionsFromManifest(const ResultManifest& manifest) {
  RunOptions options;
  options.scenario = manifest.scenario;
  options.seed = manifest.seed;
  options.workers = manifest.workers;
  options.label = manifest.label;
  options.overrides = manifest.params;
  return options;
}

}  // namespace exsafe
