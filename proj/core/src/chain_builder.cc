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

#include "ocrs/chain_builder.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

#include "ocrs/parallel.h"
#include "ocrs/stats.h"

namespace ocrs {
namespace {

// Ground sets up to this size tabulate sample patterns and evaluate one span
// per distinct pattern.
constexpr int kHistogramLimit = 12;

void CheckTruncationArgs(double epsilon, int rho) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::domain_error("epsilon must lie in (0, 1), got " +
                            std::to_string(epsilon));
  }
  if (rho < 3) {
    throw std::domain_error("rho must be at least 3, got " +
                            std::to_string(rho));
  }
}

int CeilToInt(double v, const char* what) {
  const double c = std::ceil(v);
  if (!(c < static_cast<double>(std::numeric_limits<int>::max()))) {
    throw std::domain_error(std::string(what) + " overflows");
  }
  return static_cast<int>(c);
}

// Splits count across the two values of pattern bit j and recurses. The
// leaves hold a multinomial histogram with the same law as tallying count
// independent draws of the product distribution.
void SplitCounts(const std::vector<double>& probs, int j, std::uint32_t mask,
                 std::int64_t count, RngStream& rng,
                 std::vector<std::int64_t>& histogram) {
  if (count == 0) return;
  if (j == static_cast<int>(probs.size())) {
    histogram[mask] += count;
    return;
  }
  const double pj = probs[j];
  std::int64_t in;
  if (pj <= 0.0) {
    in = 0;
  } else if (pj >= 1.0) {
    in = count;
  } else {
    in = std::binomial_distribution<std::int64_t>(count, pj)(rng);
  }
  SplitCounts(probs, j + 1, mask | (std::uint32_t{1} << j), in, rng,
              histogram);
  SplitCounts(probs, j + 1, mask, count - in, rng, histogram);
}

void CountSpannedByPattern(const MatroidOracle& m,
                           const std::vector<ElementId>& ids,
                           const std::vector<double>& probs, const ElemSet& a,
                           int q, RngStream& rng,
                           std::vector<std::int64_t>& hits) {
  const int g = static_cast<int>(ids.size());
  std::vector<std::int64_t> histogram(std::size_t{1} << g, 0);
  SplitCounts(probs, 0, 0, q, rng, histogram);
  ElemSet s = a;
  for (std::uint32_t mask = 0; mask < histogram.size(); ++mask) {
    if (histogram[mask] == 0) continue;
    s = a;
    for (int j = 0; j < g; ++j) {
      if ((mask >> j) & 1U) s.Insert(ids[j]);
    }
    const ElemSet spanned = m.Span(s);
    for (int j = 0; j < g; ++j) {
      if (spanned.Contains(ids[j])) hits[j] += histogram[mask];
    }
  }
}

void CountSpannedBySample(const MatroidOracle& m,
                          const std::vector<ElementId>& ids,
                          const std::vector<double>& probs, const ElemSet& a,
                          int q, RngStream& rng,
                          std::vector<std::int64_t>& hits) {
  const int g = static_cast<int>(ids.size());
  std::vector<int> local(m.universe_size(), -1);
  for (int j = 0; j < g; ++j) local[ids[j]] = j;
  ElemSet s = a;
  for (int p = 0; p < q; ++p) {
    s = a;
    for (int j = 0; j < g; ++j) {
      const double pj = probs[j];
      if (pj <= 0.0) continue;
      if (pj >= 1.0 || rng.Uniform() < pj) s.Insert(ids[j]);
    }
    for (ElementId e : m.Span(s)) ++hits[local[e]];
  }
}

}  // namespace

int TruncationCeiling(double epsilon, int rho) {
  CheckTruncationArgs(epsilon, rho);
  const double ratio = std::log(static_cast<double>(rho)) /
                       (epsilon * epsilon * epsilon);
  return CeilToInt(1.0 + std::log(ratio) / std::log1p(epsilon), "eta");
}

int SamplesPerEstimate(double threshold, double epsilon, int rho) {
  CheckTruncationArgs(epsilon, rho);
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw std::domain_error("threshold must lie in (0, 1]");
  }
  const double q = 6.0 / (threshold * epsilon * epsilon) *
                   std::log(std::log(static_cast<double>(rho)) / epsilon);
  return std::max(1, CeilToInt(q, "q"));
}

int ChainLength(double epsilon, int rho) {
  CheckTruncationArgs(epsilon, rho);
  return CeilToInt(std::log(static_cast<double>(rho) / epsilon) / epsilon,
                   "zeta");
}

TruncationDistribution::TruncationDistribution(double epsilon, int rho,
                                               std::vector<double> pmf)
    : epsilon_(epsilon), rho_(rho), pmf_(std::move(pmf)) {
  cumulative_.reserve(pmf_.size());
  double acc = 0.0;
  for (double p : pmf_) cumulative_.push_back(acc += p);
}

TruncationDistribution TruncationDistribution::Make(double epsilon, int rho) {
  return WithCeiling(epsilon, rho, TruncationCeiling(epsilon, rho));
}

TruncationDistribution TruncationDistribution::WithCeiling(double epsilon,
                                                           int rho, int eta) {
  CheckTruncationArgs(epsilon, rho);
  if (eta < 1) throw std::domain_error("eta must be at least 1");
  std::vector<double> pmf(eta);
  pmf[0] = std::pow(1.0 + epsilon, -(eta - 1));
  double below = pmf[0];
  for (int h = 2; h <= eta; ++h) {
    pmf[h - 1] = epsilon * below;
    below += pmf[h - 1];
  }
  return TruncationDistribution(epsilon, rho, std::move(pmf));
}

int TruncationDistribution::Sample(RngStream& rng) const {
  const double u = rng.Uniform() * cumulative_.back();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  const auto h = static_cast<int>(it - cumulative_.begin()) + 1;
  return std::min(h, eta());
}

LinkParams LinkParams::Conforming(int rho, double threshold, double epsilon) {
  LinkParams p;
  p.rho = rho;
  p.threshold = threshold;
  p.epsilon = epsilon;
  p.q = SamplesPerEstimate(threshold, epsilon, rho);
  p.eta = TruncationCeiling(epsilon, rho);
  p.conforming = true;
  return p;
}

LinkParams LinkParams::WithOverrides(std::optional<int> q_override,
                                     std::optional<int> eta_override) const {
  LinkParams p = *this;
  if (q_override && *q_override != p.q) {
    p.q = *q_override;
    p.conforming = false;
  }
  if (eta_override && *eta_override != p.eta) {
    p.eta = *eta_override;
    p.conforming = false;
  }
  p.Validate();
  return p;
}

void LinkParams::Validate() const {
  CheckTruncationArgs(epsilon, rho);
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw std::domain_error("link threshold must lie in (0, 1]");
  }
  if (q < 1) throw std::domain_error("q must be at least 1");
  if (eta < 1) throw std::domain_error("eta must be at least 1");
}

LinkResult SingleOcrsLink(const MatroidOracle& m, const MarginalVector& x,
                          const LinkParams& params, RngStream& rng) {
  params.Validate();
  if (x.size() != m.universe_size()) {
    throw std::invalid_argument("marginal vector does not match the universe");
  }
  const auto truncation =
      TruncationDistribution::WithCeiling(params.epsilon, params.rho,
                                          params.eta);
  LinkResult result;
  LinkTrace& trace = result.trace;
  trace.h_bar = truncation.Sample(rng);
  trace.q = params.q;
  trace.draw_count = static_cast<std::int64_t>(trace.h_bar) * params.q;
  trace.iterates.reserve(trace.h_bar);

  const std::vector<ElementId> ids = m.ground_set().ToVector();
  const int g = static_cast<int>(ids.size());
  std::vector<double> probs(g);
  for (int j = 0; j < g; ++j) probs[j] = x[ids[j]];

  ElemSet a = m.EmptySet();
  std::vector<std::int64_t> hits(g);
  for (int h = 1; h <= trace.h_bar; ++h) {
    // Samples of D(x) over an empty ground set are all empty; nothing to
    // draw or count.
    if (g > 0) {
      std::fill(hits.begin(), hits.end(), 0);
      if (g <= kHistogramLimit) {
        CountSpannedByPattern(m, ids, probs, a, params.q, rng, hits);
      } else {
        CountSpannedBySample(m, ids, probs, a, params.q, rng, hits);
      }
      ElemSet next = m.EmptySet();
      for (int j = 0; j < g; ++j) {
        const double estimate =
            static_cast<double>(hits[j]) / static_cast<double>(params.q);
        if (estimate > params.threshold) next.Insert(ids[j]);
      }
      a = std::move(next);
    }
    trace.iterates.push_back(a);
  }
  result.link = std::move(a);
  return result;
}

SpanningChain::SpanningChain(std::vector<ElemSet> links)
    : links_(std::move(links)) {
  if (links_.empty()) {
    throw std::invalid_argument("spanning chain needs at least one link");
  }
  for (std::size_t i = 1; i < links_.size(); ++i) {
    if (links_[i].universe_size() != links_[0].universe_size() ||
        !links_[i].IsSubsetOf(links_[i - 1])) {
      throw std::invalid_argument("spanning chain links are not nested at " +
                                  std::to_string(i));
    }
  }
  if (!links_.back().Empty()) {
    throw std::invalid_argument("spanning chain must end with the empty set");
  }
}

SpanningChain SpanningChain::Trivial(const ElemSet& ground) {
  return SpanningChain({ground, ElemSet(ground.universe_size())});
}

int SpanningChain::LevelOf(ElementId e) const {
  if (!links_.front().Contains(e)) {
    throw std::out_of_range("element " + std::to_string(e) +
                            " is not in the chain's ground set");
  }
  int level = 0;
  while (level + 1 < static_cast<int>(links_.size()) &&
         links_[level + 1].Contains(e)) {
    ++level;
  }
  return level;
}

ChainTrace PlanChain(const MatroidOracle& m, double tau, double epsilon,
                     const ChainOverrides& overrides) {
  if (!(epsilon > 0.0 && epsilon <= 1.0 / 20.0)) {
    throw std::domain_error("chain epsilon must lie in (0, 1/20], got " +
                            std::to_string(epsilon));
  }
  if (!(tau > 0.0 && tau <= 1.0)) {
    throw std::domain_error("chain tau must lie in (0, 1], got " +
                            std::to_string(tau));
  }
  ChainTrace trace;
  trace.rho = std::max(m.FullRank(), 3);
  const int formula_zeta = ChainLength(epsilon, trace.rho);
  trace.zeta = overrides.zeta.value_or(formula_zeta);
  if (trace.zeta < 1) throw std::domain_error("zeta must be at least 1");
  trace.threshold = (1.0 - epsilon) * tau;
  const LinkParams params =
      LinkParams::Conforming(trace.rho, trace.threshold, epsilon)
          .WithOverrides(overrides.q, overrides.eta);
  trace.eta = params.eta;
  trace.q = params.q;
  trace.conforming = params.conforming && trace.zeta == formula_zeta;
  return trace;
}

ChainResult OcrsChain(const MatroidOracle& m, const MarginalVector& x,
                      double tau, double epsilon, RngStream& rng,
                      const ChainOverrides& overrides) {
  ChainTrace trace = PlanChain(m, tau, epsilon, overrides);
  LinkParams params;
  params.rho = trace.rho;
  params.threshold = trace.threshold;
  params.epsilon = epsilon;
  params.q = trace.q;
  params.eta = trace.eta;
  params.conforming = trace.conforming;

  std::vector<ElemSet> links;
  links.reserve(trace.zeta + 2);
  links.push_back(m.ground_set());
  trace.links.reserve(trace.zeta);
  for (int i = 1; i <= trace.zeta; ++i) {
    LinkResult link = SingleOcrsLink(m.Restrict(links.back()), x, params, rng);
    trace.draw_count += link.trace.draw_count;
    links.push_back(std::move(link.link));
    trace.links.push_back(std::move(link.trace));
  }
  links.push_back(m.EmptySet());
  return ChainResult{SpanningChain(std::move(links)), std::move(trace)};
}

ChainSampler OcrsChainSampler(MatroidOracle m, MarginalVector x, double tau,
                              double epsilon, ChainOverrides overrides) {
  return [m = std::move(m), x = std::move(x), tau, epsilon,
          overrides = std::move(overrides)](RngStream& rng) {
    return OcrsChain(m, x, tau, epsilon, rng, overrides);
  };
}

ChainSampler FixedChainSampler(SpanningChain chain) {
  return [chain = std::move(chain)](RngStream&) {
    return ChainResult{chain, ChainTrace{}};
  };
}

MinimalLinkResult MinimalLinkConstruction(const MatroidOracle& m,
                                          const MarginalVector& x,
                                          double tau) {
  if (!(tau > 0.0 && tau < 1.0)) {
    throw std::domain_error("tau must lie in (0, 1)");
  }
  const ElemSet& ground = m.ground_set();
  if (ground.Size() > kMaxExactGroundSet) {
    throw SizeLimitError("known-x link construction limited to " +
                         std::to_string(kMaxExactGroundSet) + " elements");
  }
  const std::vector<ElementId> ids = ground.ToVector();
  const int g = static_cast<int>(ids.size());
  const RealizationTable realizations(x, ground);

  MinimalLinkResult result;
  ElemSet previous = m.EmptySet();
  for (int iteration = 0; iteration <= g; ++iteration) {
    std::vector<CompensatedSum> spanned(g);
    for (const auto& [r, p] : realizations.outcomes()) {
      const ElemSet base = r | previous;
      const ElemSet closure = m.Span(base);
      const int base_rank = m.Rank(base);
      for (int j = 0; j < g; ++j) {
        const ElementId e = ids[j];
        bool hit;
        if (!base.Contains(e)) {
          hit = closure.Contains(e);
        } else {
          ElemSet without = base;
          without.Erase(e);
          hit = m.Rank(without) == base_rank;
        }
        if (hit) spanned[j].Add(p);
      }
    }
    ElemSet next = m.EmptySet();
    for (int j = 0; j < g; ++j) {
      if (spanned[j].Total() > tau) next.Insert(ids[j]);
    }
    result.iterates.push_back(next);
    if (next == previous) break;
    previous = std::move(next);
  }
  result.link = result.iterates.back();
  return result;
}

SpanningChain MinimalSpanningChain(const MatroidOracle& m,
                                   const MarginalVector& x, double tau) {
  std::vector<ElemSet> links{m.ground_set()};
  while (!links.back().Empty()) {
    ElemSet next =
        MinimalLinkConstruction(m.Restrict(links.back()), x, tau).link;
    if (next == links.back()) {
      throw std::runtime_error("known-x chain stalled at link " +
                               next.ToString());
    }
    links.push_back(std::move(next));
  }
  return SpanningChain(std::move(links));
}

namespace {

struct FreenessLevel {
  ElemSet random_part;  // (C_i \ C_{i+1}) - e
  ElemSet below;        // C_{i+1}
};

FreenessLevel LevelFor(const MatroidOracle& m, const SpanningChain& chain,
                       ElementId e) {
  if (chain.ground() != m.ground_set()) {
    throw std::invalid_argument("chain ground set differs from the matroid's");
  }
  const int i = chain.LevelOf(e);
  FreenessLevel level{chain[i] - chain[i + 1], chain[i + 1]};
  level.random_part.Erase(e);
  return level;
}

}  // namespace

double ChainFreenessExact(const MatroidOracle& m, const MarginalVector& x,
                          const SpanningChain& chain, ElementId e) {
  if (m.ground_set().Size() > kMaxExactGroundSet) {
    throw SizeLimitError("exact freeness limited to " +
                         std::to_string(kMaxExactGroundSet) + " elements");
  }
  const FreenessLevel level = LevelFor(m, chain, e);
  return ExactEventProbability(x, level.random_part, [&](const ElemSet& r) {
    return !m.Span(r | level.below).Contains(e);
  });
}

double ChainFreenessMonteCarlo(const MatroidOracle& m, const MarginalVector& x,
                               const SpanningChain& chain, ElementId e,
                               int samples, RngStream& rng) {
  if (samples < 1) throw std::domain_error("need at least one sample");
  const FreenessLevel level = LevelFor(m, chain, e);
  std::int64_t free = 0;
  for (int p = 0; p < samples; ++p) {
    const ElemSet r = SampleActiveSet(x, level.random_part, rng);
    if (!m.Span(r | level.below).Contains(e)) ++free;
  }
  return static_cast<double>(free) / samples;
}

double BalancednessEstimate::MinMean(const ElemSet& over) const {
  double best = 1.0;
  for (ElementId e : over) best = std::min(best, mean[e]);
  return best;
}

BalancednessEstimate EstimateBalancedness(const MatroidOracle& m,
                                          const MarginalVector& x,
                                          const ChainSampler& sampler,
                                          int trials, std::uint64_t seed,
                                          int threads, int mc_samples) {
  if (trials < 1) throw std::domain_error("trials must be at least 1");
  const std::vector<ElementId> ids = m.ground_set().ToVector();
  std::vector<std::vector<double>> per_trial(trials);
  ParallelFor(trials, threads, [&](std::int64_t t) {
    RngStream rng(seed, static_cast<std::uint64_t>(t));
    const SpanningChain chain = sampler(rng).chain;
    std::vector<double>& out = per_trial[t];
    out.reserve(ids.size());
    for (ElementId e : ids) {
      out.push_back(mc_samples == 0
                        ? ChainFreenessExact(m, x, chain, e)
                        : ChainFreenessMonteCarlo(m, x, chain, e, mc_samples,
                                                  rng));
    }
  });
  BalancednessEstimate estimate;
  estimate.trials = trials;
  estimate.mean.assign(m.universe_size(), 0.0);
  estimate.std_error.assign(m.universe_size(), 0.0);
  for (std::size_t j = 0; j < ids.size(); ++j) {
    MeanAccumulator acc;
    for (const auto& row : per_trial) acc.Add(row[j]);
    estimate.mean[ids[j]] = acc.mean();
    estimate.std_error[ids[j]] = acc.std_error();
  }
  return estimate;
}

}  // namespace ocrs
