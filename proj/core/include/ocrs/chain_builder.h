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

// Spanning chains N = C_0 >= C_1 >= ... >= C_k = {} and their construction.
//
// The sample-based builder only touches x through draws from D(x). Each link
// runs a randomly truncated number h of estimation rounds; round h draws q
// fresh samples and keeps the elements whose empirical probability of being
// spanned by A_{h-1} + S strictly exceeds the threshold.
//
// The exact known-x construction (iterate to a fixed point using exact
// probabilities) is provided as a baseline for small ground sets.

#ifndef OCRS_CHAIN_BUILDER_H_
#define OCRS_CHAIN_BUILDER_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ocrs/elem_set.h"
#include "ocrs/matroid.h"
#include "ocrs/rng.h"
#include "ocrs/stochastic.h"

namespace ocrs {

// eta = ceil(1 + log_{1+eps}(ln(rho) / eps^3)).
int TruncationCeiling(double epsilon, int rho);
// q = ceil(6 / (threshold * eps^2) * ln(ln(rho) / eps)), at least 1.
int SamplesPerEstimate(double threshold, double epsilon, int rho);
// zeta = ceil((1 / eps) * ln(rho / eps)).
int ChainLength(double epsilon, int rho);

// Law of the number of estimation rounds in one link, supported on
// {1, ..., eta}: Pr[h = 1] = (1 + eps)^-(eta - 1) and
// Pr[h = h'] = eps * Pr[h < h'] for h' >= 2.
class TruncationDistribution {
 public:
  // Uses the formula ceiling. Throws std::domain_error unless eps is in
  // (0, 1) and rho >= 3.
  static TruncationDistribution Make(double epsilon, int rho);
  // Same recurrence with an explicit ceiling (non-conforming runs).
  static TruncationDistribution WithCeiling(double epsilon, int rho, int eta);

  double epsilon() const { return epsilon_; }
  int rho() const { return rho_; }
  int eta() const { return static_cast<int>(pmf_.size()); }
  // pmf()[h - 1] = Pr[h_bar = h].
  const std::vector<double>& pmf() const { return pmf_; }

  int Sample(RngStream& rng) const;

 private:
  TruncationDistribution(double epsilon, int rho, std::vector<double> pmf);

  double epsilon_;
  int rho_;
  std::vector<double> pmf_;
  std::vector<double> cumulative_;
};

struct LinkParams {
  int rho = 3;
  // Used verbatim: an element joins A_h iff its estimate is > threshold.
  double threshold = 0.5;
  double epsilon = 0.05;
  int q = 1;
  int eta = 1;
  // False when q or eta was overridden away from its formula value.
  bool conforming = true;

  static LinkParams Conforming(int rho, double threshold, double epsilon);
  LinkParams WithOverrides(std::optional<int> q_override,
                           std::optional<int> eta_override) const;
  // Throws std::domain_error on out-of-range fields.
  void Validate() const;
};

struct LinkTrace {
  int h_bar = 0;
  int q = 0;
  // A_1, ..., A_{h_bar}.
  std::vector<ElemSet> iterates;
  std::int64_t draw_count = 0;
};

struct LinkResult {
  ElemSet link;
  LinkTrace trace;
};

// One link from samples of D(x) restricted to the ground set of m.
LinkResult SingleOcrsLink(const MatroidOracle& m, const MarginalVector& x,
                          const LinkParams& params, RngStream& rng);

class SpanningChain {
 public:
  SpanningChain() = default;
  // Throws std::invalid_argument unless the links are nested, share one
  // universe, and end with the empty set.
  explicit SpanningChain(std::vector<ElemSet> links);
  // (ground, {}).
  static SpanningChain Trivial(const ElemSet& ground);

  const std::vector<ElemSet>& links() const { return links_; }
  const ElemSet& operator[](int i) const { return links_[i]; }
  const ElemSet& ground() const { return links_.front(); }
  // Number of links minus one.
  int length() const { return static_cast<int>(links_.size()) - 1; }

  // The level i with e in C_i \ C_{i+1}, i.e. max{j : e in C_j}. Throws
  // std::out_of_range when e is not in C_0.
  int LevelOf(ElementId e) const;

  bool operator==(const SpanningChain&) const = default;

 private:
  std::vector<ElemSet> links_;
};

struct ChainOverrides {
  std::optional<int> q;
  std::optional<int> eta;
  std::optional<int> zeta;

  bool empty() const { return !q && !eta && !zeta; }
};

struct ChainTrace {
  int rho = 0;
  int zeta = 0;
  int eta = 0;
  int q = 0;
  double threshold = 0.0;
  bool conforming = true;
  std::vector<LinkTrace> links;
  std::int64_t draw_count = 0;

  // zeta * eta * q, the worst case of draw_count.
  std::int64_t DrawBound() const {
    return static_cast<std::int64_t>(zeta) * eta * q;
  }
};

struct ChainResult {
  SpanningChain chain;
  ChainTrace trace;
};

// The parameters OcrsChain would use, with no links and no draws.
ChainTrace PlanChain(const MatroidOracle& m, double tau, double epsilon,
                     const ChainOverrides& overrides = {});

// Builds (C_0, ..., C_{zeta+1}) by calling SingleOcrsLink on M|C_{i-1} with
// threshold (1 - eps) * tau and rho = max(rank(M), 3) for every link.
// Requires eps in (0, 1/20] and tau in (0, 1].
ChainResult OcrsChain(const MatroidOracle& m, const MarginalVector& x,
                      double tau, double epsilon, RngStream& rng,
                      const ChainOverrides& overrides = {});

// Draws one chain per call. Must be safe to call concurrently with distinct
// streams.
using ChainSampler = std::function<ChainResult(RngStream&)>;

ChainSampler OcrsChainSampler(MatroidOracle m, MarginalVector x, double tau,
                              double epsilon, ChainOverrides overrides = {});
ChainSampler FixedChainSampler(SpanningChain chain);

struct MinimalLinkResult {
  ElemSet link;
  // A_1, A_2, ... up to and including the fixed point.
  std::vector<ElemSet> iterates;
};

// Known-x link: iterates A_i = {e : Pr[e in span((R(x) + A_{i-1}) - e)] > tau}
// with exact probabilities until A_i = A_{i-1}. Requires a ground set of at
// most kMaxExactGroundSet elements and tau in (0, 1).
MinimalLinkResult MinimalLinkConstruction(const MatroidOracle& m,
                                          const MarginalVector& x, double tau);

// Chains known-x links until an empty link appears. Throws
// std::runtime_error if a link fails to shrink.
SpanningChain MinimalSpanningChain(const MatroidOracle& m,
                                   const MarginalVector& x, double tau);

// Pr[e not in span(((R(x) - e) & C_i) + C_{i+1})] at e's level i, by exact
// enumeration (ground set of at most kMaxExactGroundSet elements).
double ChainFreenessExact(const MatroidOracle& m, const MarginalVector& x,
                          const SpanningChain& chain, ElementId e);
// The same probability estimated from `samples` draws of R(x).
double ChainFreenessMonteCarlo(const MatroidOracle& m, const MarginalVector& x,
                               const SpanningChain& chain, ElementId e,
                               int samples, RngStream& rng);

struct BalancednessEstimate {
  int trials = 0;
  // Indexed by ElementId; entries outside the ground set stay zero.
  std::vector<double> mean;
  std::vector<double> std_error;

  // Minimum mean over the given elements.
  double MinMean(const ElemSet& over) const;
};

// Expected chain freeness of every element over chains drawn from `sampler`.
// Trial t uses RngStream(seed, t). Freeness is exact when mc_samples is 0 and
// Monte Carlo with that many draws otherwise.
BalancednessEstimate EstimateBalancedness(const MatroidOracle& m,
                                          const MarginalVector& x,
                                          const ChainSampler& sampler,
                                          int trials, std::uint64_t seed,
                                          int threads = 1,
                                          int mc_samples = 0);

}  // namespace ocrs

#endif  // OCRS_CHAIN_BUILDER_H_
