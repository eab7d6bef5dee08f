// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ocrs/analysis.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "ocrs/parallel.h"
#include "ocrs/stats.h"

namespace ocrs {
namespace {

constexpr double kBulletSlack = 1e-9;
constexpr double kTieSlack = 1e-12;

void RequireChainArgs(double lambda, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0 / 20.0)) {
    throw std::domain_error("epsilon must lie in (0, 1/20]");
  }
  if (!(lambda > 0.0 && lambda <= 1.0 - 4.0 * epsilon)) {
    throw std::domain_error("lambda must lie in (0, 1 - 4 eps]");
  }
}

void RequireTrials(int trials) {
  if (trials < 1) throw std::domain_error("trials must be at least 1");
}

// Refuses x outside lambda P_M when the polytope check is affordable.
void RequireInPolytope(const MatroidOracle& m, const MarginalVector& x,
                       double lambda) {
  if (x.size() != m.universe_size()) {
    throw std::invalid_argument("marginal vector does not match the universe");
  }
  if (m.ground_set().Size() <= kMaxExactGroundSet &&
      !InScaledPolytope(m, x, lambda)) {
    throw std::domain_error("x is not in lambda * P_M for lambda = " +
                            std::to_string(lambda));
  }
}

// Pr[e in span(a + R)] for every ground element, by exact enumeration.
std::vector<double> SpanProbabilities(const MatroidOracle& m,
                                      const MarginalVector& x,
                                      const ElemSet& a) {
  std::vector<CompensatedSum> sums(m.universe_size());
  ForEachRealization(x, m.ground_set(), [&](const ElemSet& r, double p) {
    for (ElementId e : m.Span(a | r)) sums[e].Add(p);
  });
  std::vector<double> out(m.universe_size(), 0.0);
  for (int e = 0; e < m.universe_size(); ++e) out[e] = sums[e].Total();
  return out;
}

GoodBadVerdict MakeVerdict(ElementId e, bool member, double probability,
                           double tau) {
  GoodBadVerdict v;
  v.element = e;
  if (member) {
    v.status = GoodBad::kMember;
    v.probability = 1.0;
  } else {
    v.status = probability > tau ? GoodBad::kBad : GoodBad::kGood;
    v.probability = probability;
  }
  return v;
}

void CheckClassifyArgs(const MatroidOracle& m, const ElemSet& a, ElementId e) {
  if (!a.IsSubsetOf(m.ground_set())) {
    throw std::domain_error("A leaves the ground set");
  }
  if (e < 0 || e >= m.universe_size() || !m.ground_set().Contains(e)) {
    throw std::domain_error("element " + std::to_string(e) +
                            " is not in the ground set");
  }
}

}  // namespace

std::string_view GoodBadName(GoodBad status) {
  switch (status) {
    case GoodBad::kGood:
      return "good";
    case GoodBad::kBad:
      return "bad";
    case GoodBad::kMember:
      return "member";
  }
  return "unknown";
}

GoodBadVerdict ClassifyElementExact(const MatroidOracle& m,
                                    const MarginalVector& x, const ElemSet& a,
                                    double tau, ElementId e) {
  CheckClassifyArgs(m, a, e);
  if (a.Contains(e)) return MakeVerdict(e, true, 1.0, tau);
  const double p = ExactEventProbability(
      x, m.ground_set(),
      [&](const ElemSet& r) { return m.Span(a | r).Contains(e); });
  return MakeVerdict(e, false, p, tau);
}

GoodBadVerdict ClassifyElementMonteCarlo(const MatroidOracle& m,
                                         const MarginalVector& x,
                                         const ElemSet& a, double tau,
                                         ElementId e, int samples,
                                         RngStream& rng) {
  CheckClassifyArgs(m, a, e);
  if (samples < 1) throw std::domain_error("need at least one sample");
  if (a.Contains(e)) return MakeVerdict(e, true, 1.0, tau);
  const SampleBatch batch = DrawSamples(x, m.ground_set(), samples, rng);
  const double p = EmpiricalProbability(
      batch, [&](const ElemSet& s) { return m.Span(a | s).Contains(e); });
  return MakeVerdict(e, false, p, tau);
}

LinkBuilder SampleLinkBuilder() {
  return [](const MatroidOracle& m, const MarginalVector& x,
            const LinkParams& params, RngStream& rng) {
    return SingleOcrsLink(m, x, params, rng).link;
  };
}

LinkBuilder EmptyLinkBuilder() {
  return [](const MatroidOracle& m, const MarginalVector& x,
            const LinkParams& params, RngStream& rng) {
    LinkParams never = params;
    never.threshold = 1.0;
    return SingleOcrsLink(m, x, never, rng).link;
  };
}

InLinkLossReport VerifyInLinkLoss(const MatroidOracle& m,
                                  const MarginalVector& x, int rho, double tau,
                                  double epsilon, int trials,
                                  std::uint64_t seed, int threads,
                                  const LinkBuilder& builder,
                                  std::optional<int> q_override,
                                  std::optional<int> eta_override) {
  if (rho < 3) throw std::domain_error("rho must be at least 3");
  if (!(tau > 0.0 && tau <= 1.0)) {
    throw std::domain_error("tau must lie in (0, 1]");
  }
  if (!(epsilon > 0.0 && epsilon <= tau)) {
    throw std::domain_error("epsilon must lie in (0, tau]");
  }
  RequireTrials(trials);
  if (x.size() != m.universe_size()) {
    throw std::invalid_argument("marginal vector does not match the universe");
  }
  if (m.ground_set().Size() > kMaxExactGroundSet) {
    throw SizeLimitError("exact classification limited to " +
                         std::to_string(kMaxExactGroundSet) + " elements");
  }
  const LinkParams params =
      LinkParams::Conforming(rho, (1.0 - epsilon) * tau, epsilon)
          .WithOverrides(q_override, eta_override);
  const LinkBuilder build = builder ? builder : SampleLinkBuilder();

  std::vector<ElemSet> links(trials);
  ParallelFor(trials, threads, [&](std::int64_t t) {
    RngStream rng(seed, static_cast<std::uint64_t>(t));
    links[t] = build(m, x, params, rng);
  });

  const std::vector<ElementId> ids = m.ground_set().ToVector();
  std::map<ElemSet, std::vector<double>> memo;
  std::vector<MeanAccumulator> excess(ids.size());
  std::vector<std::int64_t> bad(ids.size(), 0);
  std::vector<std::int64_t> good(ids.size(), 0);
  for (const ElemSet& a : links) {
    auto it = memo.find(a);
    if (it == memo.end()) {
      it = memo.emplace(a, SpanProbabilities(m, x, a)).first;
    }
    for (std::size_t j = 0; j < ids.size(); ++j) {
      const ElementId e = ids[j];
      double d = 0.0;
      if (!a.Contains(e)) {
        if (it->second[e] > tau) {
          ++bad[j];
          d = 1.0;
        } else {
          ++good[j];
          d = -epsilon;
        }
      }
      excess[j].Add(d);
    }
  }

  InLinkLossReport report;
  report.rho = rho;
  report.link_threshold = params.threshold;
  report.q = params.q;
  report.eta = params.eta;
  Verdict& v = report.verdict;
  v.check = "in-link-loss";
  v.trials = trials;
  v.seed = seed;
  v.conforming = params.conforming;
  v.bound = 2.0 * epsilon * epsilon * epsilon /
            std::log(static_cast<double>(rho));
  v.z = ids.empty() ? 3.0 : BonferroniZ(static_cast<int>(ids.size()));
  v.measured = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < ids.size(); ++j) {
    InLinkElementStat s;
    s.element = ids[j];
    s.pr_bad = static_cast<double>(bad[j]) / trials;
    s.pr_good = static_cast<double>(good[j]) / trials;
    s.excess = excess[j].mean();
    s.std_error = excess[j].std_error();
    s.pass = s.excess <= v.bound + v.z * s.std_error;
    if (s.excess > v.measured) {
      v.measured = s.excess;
      v.tolerance = v.z * s.std_error;
    }
    v.pass = v.pass && s.pass;
    report.elements.push_back(s);
  }
  if (ids.empty()) v.measured = 0.0;
  v.detail = "per element: Pr[bad] - eps Pr[good] <= 2 eps^3 / ln rho";
  return report;
}

double ProgressBound(double lambda, double tau, double epsilon, int rank) {
  return (1.0 + lambda - (1.0 - 3.0 * epsilon) * tau) * rank;
}

ProgressReport VerifyProgress(const MatroidOracle& m, const MarginalVector& x,
                              double lambda, double tau, double epsilon,
                              int trials, std::uint64_t seed, int threads,
                              std::optional<int> q_override,
                              std::optional<int> eta_override) {
  if (!(epsilon > 0.0 && epsilon <= 1.0 / 20.0)) {
    throw std::domain_error("epsilon must lie in (0, 1/20]");
  }
  if (!(lambda >= 0.0 && lambda < tau && tau <= 1.0)) {
    throw std::domain_error("tau must lie in (lambda, 1]");
  }
  RequireTrials(trials);
  RequireInPolytope(m, x, lambda);

  ProgressReport report;
  report.rho = std::max(m.FullRank(), 3);
  const LinkParams params =
      LinkParams::Conforming(report.rho, (1.0 - epsilon) * tau, epsilon)
          .WithOverrides(q_override, eta_override);
  std::vector<int> ranks(trials);
  ParallelFor(trials, threads, [&](std::int64_t t) {
    RngStream rng(seed, static_cast<std::uint64_t>(t));
    ranks[t] = m.Rank(SingleOcrsLink(m, x, params, rng).link);
  });
  MeanAccumulator acc;
  for (int r : ranks) acc.Add(r);

  Verdict& v = report.verdict;
  v.check = "progress";
  v.trials = trials;
  v.seed = seed;
  v.conforming = params.conforming;
  v.measured = acc.mean();
  v.bound = ProgressBound(lambda, tau, epsilon, m.FullRank());
  report.std_error = acc.std_error();
  v.tolerance = v.z * report.std_error;
  v.pass = v.measured <= v.bound + v.tolerance;
  v.detail = "mean r(A) <= (1 + lambda - (1 - 3 eps) tau) rank(M)";
  return report;
}

SpanningReport VerifySpanning(const MatroidOracle& m, const MarginalVector& x,
                              double lambda, double epsilon, int trials,
                              std::uint64_t seed, int threads,
                              const ChainOverrides& overrides) {
  RequireChainArgs(lambda, epsilon);
  RequireTrials(trials);
  RequireInPolytope(m, x, lambda);
  const double tau = lambda + 4.0 * epsilon;
  const ChainTrace plan = PlanChain(m, tau, epsilon, overrides);

  struct Row {
    bool empty = false;
    int nonempty_links = 0;
    std::int64_t draws = 0;
  };
  std::vector<Row> rows(trials);
  ParallelFor(trials, threads, [&](std::int64_t t) {
    RngStream rng(seed, static_cast<std::uint64_t>(t));
    const ChainResult built = OcrsChain(m, x, tau, epsilon, rng, overrides);
    Row& row = rows[t];
    row.empty = built.chain[built.trace.zeta].Empty();
    for (int i = 1; i <= built.chain.length(); ++i) {
      if (!built.chain[i].Empty()) ++row.nonempty_links;
    }
    row.draws = built.trace.draw_count;
  });

  SpanningReport report;
  std::int64_t nonempty = 0;
  for (const Row& row : rows) {
    if (row.empty) ++report.empty_count;
    nonempty += row.nonempty_links;
    report.draw_count += row.draws;
  }
  report.mean_nonempty_links = static_cast<double>(nonempty) / trials;
  report.draw_bound = plan.DrawBound() * trials;

  Verdict& v = report.verdict;
  v.check = "spanning";
  v.trials = trials;
  v.seed = seed;
  v.conforming = plan.conforming;
  v.measured = static_cast<double>(report.empty_count) / trials;
  v.bound = 1.0 - epsilon;
  v.tolerance = v.z * ProportionStdError(v.bound, trials);
  v.pass = v.measured >= v.bound - v.tolerance;
  v.detail = "fraction of chains with C_zeta empty >= 1 - eps";
  return report;
}

FreenessReport VerifyFreenessLikely(const MatroidOracle& m,
                                    const MarginalVector& x, double lambda,
                                    double epsilon, int trials,
                                    std::uint64_t seed, int threads,
                                    const ChainOverrides& overrides) {
  RequireChainArgs(lambda, epsilon);
  RequireTrials(trials);
  RequireInPolytope(m, x, lambda);
  if (m.ground_set().Size() > kMaxExactGroundSet) {
    throw SizeLimitError("exact freeness limited to " +
                         std::to_string(kMaxExactGroundSet) + " elements");
  }
  const double tau = lambda + 4.0 * epsilon;
  const ChainTrace plan = PlanChain(m, tau, epsilon, overrides);

  FreenessReport report;
  report.freeness_level = 1.0 - lambda - 4.0 * epsilon;
  const std::vector<ElementId> ids = m.ground_set().ToVector();
  // Per trial and element: 0 inside C_zeta, 1 outside but not free, 2 free.
  std::vector<std::vector<char>> state(trials);
  ParallelFor(trials, threads, [&](std::int64_t t) {
    RngStream rng(seed, static_cast<std::uint64_t>(t));
    const ChainResult built = OcrsChain(m, x, tau, epsilon, rng, overrides);
    const ElemSet& last = built.chain[built.trace.zeta];
    std::vector<char>& row = state[t];
    row.assign(ids.size(), 0);
    for (std::size_t j = 0; j < ids.size(); ++j) {
      if (last.Contains(ids[j])) continue;
      const double f = ChainFreenessExact(m, x, built.chain, ids[j]);
      row[j] = f >= report.freeness_level - 1e-12 ? 2 : 1;
    }
  });

  Verdict& v = report.verdict;
  v.check = "freeness-likely";
  v.trials = trials;
  v.seed = seed;
  v.conforming = plan.conforming;
  v.z = ids.empty() ? 3.0 : BonferroniZ(static_cast<int>(ids.size()));
  v.measured = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < ids.size(); ++j) {
    FreenessElementStat s;
    s.element = ids[j];
    for (const auto& row : state) {
      if (row[j] > 0) ++s.outside_count;
      if (row[j] == 2) ++s.free_count;
    }
    s.pr_outside = static_cast<double>(s.outside_count) / trials;
    if (s.outside_count > 0) {
      s.conditional = static_cast<double>(s.free_count) / s.outside_count;
      s.bound = 1.0 - epsilon - 2.0 * epsilon / s.pr_outside;
      s.tolerance = v.z * ProportionStdError(std::clamp(s.bound, 0.0, 1.0),
                                             s.outside_count);
      s.pass = s.conditional >= s.bound - s.tolerance;
      if (s.conditional - s.bound < v.measured - v.bound) {
        v.measured = s.conditional;
        v.bound = s.bound;
        v.tolerance = s.tolerance;
      }
    } else {
      s.bound = -std::numeric_limits<double>::infinity();
    }
    v.pass = v.pass && s.pass;
    report.elements.push_back(s);
  }
  if (!std::isfinite(v.measured)) {
    v.measured = 1.0;
    v.bound = 0.0;
  }
  v.detail =
      "per element: Pr[freeness >= 1 - lambda - 4 eps | e not in C_zeta] >= "
      "1 - eps - 2 eps / Pr[e not in C_zeta]";
  return report;
}

ExactTables::ExactTables(const MatroidOracle& m, const MarginalVector& x)
    : universe_size_(m.universe_size()),
      ids_(m.ground_set().ToVector()),
      local_(m.universe_size(), -1) {
  if (size() > kMaxTAlphaGroundSet) {
    throw SizeLimitError("exact tables limited to " +
                         std::to_string(kMaxTAlphaGroundSet) + " elements");
  }
  for (int j = 0; j < size(); ++j) local_[ids_[j]] = j;
  rank_.resize(std::size_t{1} << size());
  for (std::uint32_t mask = 0; mask <= full(); ++mask) {
    rank_[mask] = m.Rank(ToSet(mask));
  }
  ForEachRealization(x, m.ground_set(), [&](const ElemSet& r, double p) {
    realizations_.emplace_back(ToMask(r), p);
  });
}

std::uint32_t ExactTables::Span(std::uint32_t mask) const {
  std::uint32_t out = mask;
  for (int j = 0; j < size(); ++j) {
    const std::uint32_t bit = std::uint32_t{1} << j;
    if (!(mask & bit) && rank_[mask | bit] == rank_[mask]) out |= bit;
  }
  return out;
}

std::uint32_t ExactTables::ToMask(const ElemSet& s) const {
  std::uint32_t mask = 0;
  for (ElementId e : s) {
    if (local_[e] < 0) {
      throw std::domain_error("set leaves the tabulated ground set");
    }
    mask |= std::uint32_t{1} << local_[e];
  }
  return mask;
}

ElemSet ExactTables::ToSet(std::uint32_t mask) const {
  ElemSet s(universe_size_);
  for (int j = 0; j < size(); ++j) {
    if ((mask >> j) & 1U) s.Insert(ids_[j]);
  }
  return s;
}

TAlphaResult BruteForceTAlpha(const ExactTables& tables, const ElemSet& b,
                              double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw std::domain_error("alpha must lie in [0, 1)");
  }
  const std::uint32_t b_mask = tables.ToMask(b);
  const std::uint32_t free = tables.full() & ~b_mask;
  const auto& realizations = tables.realizations();
  std::vector<int> base_rank(realizations.size());
  for (std::size_t k = 0; k < realizations.size(); ++k) {
    base_rank[k] = tables.Rank(b_mask | realizations[k].first);
  }
  const double scale = 1.0 / (1.0 - alpha);

  TAlphaResult best;
  best.alpha = alpha;
  best.b = b;
  bool have = false;
  std::uint32_t best_mask = 0;
  // Walk every subset of the free elements, including the empty one.
  std::uint32_t sub = free;
  while (true) {
    const std::uint32_t t_mask = b_mask | sub;
    const int gain = tables.Rank(t_mask) - tables.Rank(b_mask);
    CompensatedSum expected;
    for (std::size_t k = 0; k < realizations.size(); ++k) {
      const auto& [r, p] = realizations[k];
      expected.Add(p * (tables.Rank(t_mask | r) - base_rank[k]));
    }
    const double objective = gain - scale * expected.Total();
    bool better = !have || objective > best.objective + kTieSlack;
    if (have && !better && std::abs(objective - best.objective) <= kTieSlack) {
      const int pc = std::popcount(t_mask);
      const int best_pc = std::popcount(best_mask);
      better = pc < best_pc ||
               (pc == best_pc && LexicographicLess(tables.ToSet(t_mask),
                                                   tables.ToSet(best_mask)));
    }
    if (better) {
      have = true;
      best_mask = t_mask;
      best.objective = objective;
      best.rank_gain = gain;
      best.expected_gain = expected.Total();
    }
    if (sub == 0) break;
    sub = (sub - 1) & free;
  }
  best.t = tables.ToSet(best_mask);
  return best;
}

TAlphaResult BruteForceTAlpha(const MatroidOracle& m, const MarginalVector& x,
                              const ElemSet& b, double alpha) {
  return BruteForceTAlpha(ExactTables(m, x), b, alpha);
}

BulletCheck TAlphaFirstBullet(const TAlphaResult& result) {
  BulletCheck check;
  check.lhs = result.expected_gain;
  check.rhs = (1.0 - result.alpha) * result.rank_gain;
  check.holds = check.lhs <= check.rhs + kBulletSlack;
  return check;
}

BulletCheck TAlphaSecondBullet(const ExactTables& tables,
                               const TAlphaResult& result, const ElemSet& q) {
  const std::uint32_t t_mask = tables.ToMask(result.t);
  const std::uint32_t q_mask = tables.ToMask(q);
  if (q_mask & t_mask) throw std::domain_error("Q must avoid T");
  const int t_rank = tables.Rank(t_mask);
  CompensatedSum lhs;
  for (const auto& [r, p] : tables.realizations()) {
    const std::uint32_t inside = q_mask & tables.Span(t_mask | r);
    lhs.Add(p * (tables.Rank(inside | t_mask) - t_rank));
  }
  BulletCheck check;
  check.lhs = lhs.Total();
  check.rhs = result.alpha * (tables.Rank(q_mask | t_mask) - t_rank);
  check.holds = check.lhs <= check.rhs + kBulletSlack;
  return check;
}

AuditRow MakeAuditRow(const ChainTrace& trace) {
  AuditRow row;
  row.rho = trace.rho;
  row.zeta = trace.zeta;
  row.eta = trace.eta;
  row.q = trace.q;
  row.draw_count = trace.draw_count;
  row.draw_bound = trace.DrawBound();
  const double l = std::log(static_cast<double>(trace.rho));
  row.reference = l * std::log(l) * std::log(l);
  row.ratio = static_cast<double>(row.draw_count) / row.reference;
  row.within_bound = row.draw_count <= row.draw_bound;
  row.conforming = trace.conforming;
  return row;
}

SampleComplexityAudit AuditTraces(const std::vector<ChainTrace>& traces,
                                  double max_band) {
  SampleComplexityAudit audit;
  audit.max_band = max_band;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const ChainTrace& trace : traces) {
    AuditRow row = MakeAuditRow(trace);
    audit.all_within_bound = audit.all_within_bound && row.within_bound;
    audit.all_conforming = audit.all_conforming && row.conforming;
    lo = std::min(lo, row.ratio);
    hi = std::max(hi, row.ratio);
    audit.rows.push_back(row);
  }
  if (!audit.rows.empty()) {
    audit.band = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  }
  audit.band_pass = audit.band <= max_band;
  return audit;
}

SampleComplexityAudit RunScalingAudit(const std::vector<int>& rhos,
                                      double lambda, double epsilon,
                                      std::uint64_t seed,
                                      const ChainOverrides& overrides) {
  RequireChainArgs(lambda, epsilon);
  std::vector<ChainTrace> traces;
  for (std::size_t i = 0; i < rhos.size(); ++i) {
    if (rhos[i] < 3) throw std::domain_error("audit rho must be at least 3");
    const MatroidOracle m = UniformMatroid(2 * rhos[i], rhos[i]);
    const MarginalVector x(std::vector<double>(2 * rhos[i], lambda / 2.0));
    RngStream rng(seed, i);
    traces.push_back(
        OcrsChain(m, x, lambda + 4.0 * epsilon, epsilon, rng, overrides)
            .trace);
  }
  return AuditTraces(traces);
}

}  // namespace ocrs
