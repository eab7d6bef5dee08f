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

// Online selection over a spanning chain.
//
// An arriving element e with level i (e in C_i \ C_{i+1}) is accepted iff the
// elements already accepted at level i plus e stay independent in
// (M | C_i) / C_{i+1}. The lambda-filter scheme discards each active element
// independently with probability 1 - lambda before it reaches the greedy rule.

#ifndef OCRS_OCRS_ENGINE_H_
#define OCRS_OCRS_ENGINE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ocrs/chain_builder.h"
#include "ocrs/elem_set.h"
#include "ocrs/matroid.h"
#include "ocrs/rng.h"
#include "ocrs/stats.h"
#include "ocrs/stochastic.h"

namespace ocrs {

using ArrivalOrder = std::vector<ElementId>;

// Greedy state for one pass over one chain. Holds references; the matroid
// and chain must outlive it.
class GreedySelector {
 public:
  GreedySelector(const MatroidOracle& m, const SpanningChain& chain);

  // Decides e and records it on acceptance. Throws std::logic_error when e
  // has no level in the chain.
  bool Offer(ElementId e);

  // Union over all levels.
  const ElemSet& accepted() const { return accepted_; }
  const ElemSet& AcceptedAtLevel(int level) const {
    return accepted_by_level_[level];
  }
  // (M | C_i) / C_{i+1}.
  const MatroidOracle& LevelMinor(int level);

 private:
  const MatroidOracle& m_;
  const SpanningChain& chain_;
  std::vector<std::optional<MatroidOracle>> minors_;
  std::vector<ElemSet> accepted_by_level_;
  ElemSet accepted_;
};

// Feeds `order` to a fresh GreedySelector. Throws std::domain_error unless
// order is a permutation of actives, and std::logic_error if the result is
// ever dependent in M.
ElemSet RunSelection(const MatroidOracle& m, const SpanningChain& chain,
                     const ElemSet& actives, const ArrivalOrder& order);

enum class AdversaryKind {
  kElementLast,
  kExhaustiveWorst,
  kRandomOrder,
  kFixed,
};

std::string_view AdversaryName(AdversaryKind kind);
// Accepts "element-last", "exhaustive-worst", "random-order", "fixed".
std::optional<AdversaryKind> ParseAdversary(std::string_view name);

inline constexpr int kMaxExhaustiveActives = 7;

// Ascending ids of actives - target, then target.
ArrivalOrder ElementLastOrder(const ElemSet& actives, ElementId target);

// An arrival order that minimizes acceptance of target.
//
// kElementLast returns ElementLastOrder. kExhaustiveWorst scans every
// permutation (|actives| <= kMaxExhaustiveActives, else SizeLimitError),
// returns the lexicographically first minimizer, and throws std::logic_error
// if its outcome differs from the element-last outcome. Other kinds are
// rejected with std::invalid_argument. Target must be active.
ArrivalOrder WorstCaseOrder(const MatroidOracle& m, const SpanningChain& chain,
                            const ElemSet& actives, ElementId target,
                            AdversaryKind kind);

struct TrialOutcome {
  ElemSet active;    // R(x), before the filter
  ElemSet fed;       // survivors of the filter
  ElemSet selected;  // subset of fed
  int chain_length = 0;
  bool last_link_empty = true;  // C_zeta = {} for a chain of length zeta + 1
  std::int64_t draw_count = 0;
};

// One run of the lambda-filter scheme: draw a chain, draw R(x), filter with
// keep probability lambda, then select against the adversary.
//
// Under kElementLast and kExhaustiveWorst each fed element is judged under
// its own worst order, so `selected` collects per-target outcomes rather than
// a single pass. kRandomOrder shuffles with rng; kFixed feeds ascending ids.
TrialOutcome ChainOcrsTrial(const MatroidOracle& m, const MarginalVector& x,
                            double lambda, const ChainSampler& sampler,
                            AdversaryKind adversary, RngStream& rng);

struct ElementSelectability {
  ElementId element = 0;
  std::int64_t activations = 0;
  std::int64_t selections = 0;
  double frequency = 0.0;  // selections / activations, 0 when never active
  Interval ci;             // Wilson, 99%
};

struct SelectabilityReport {
  double lambda = 0.0;
  double epsilon = 0.0;
  double chain_tau = 0.0;
  AdversaryKind adversary = AdversaryKind::kElementLast;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<ElementSelectability> elements;  // ground-set order

  // Over elements with at least one activation; -1 and 1.0 when vacuous.
  ElementId min_element = -1;
  double min_frequency = 1.0;

  // lambda * (1 - lambda - 8 eps).
  double floor = 0.0;
  // 3 standard errors of a proportion at the floor, for the minimizer.
  double tolerance = 0.0;
  bool floor_pass = true;
  // 1/4 - eps, reported for comparison only.
  double headline = 0.0;

  // Chain statistics.
  double last_link_empty_rate = 0.0;
  double mean_chain_length = 0.0;
  std::int64_t draw_count = 0;
  std::int64_t draw_bound = 0;
  bool conforming = true;
};

// Runs `trials` independent ChainOcrsTrial calls, trial t on
// RngStream(seed, t), with chains from OcrsChain(M, lambda * x, lambda + 4 eps,
// eps). Requires eps in (0, 1/20], lambda in (0, 1 - 4 eps], trials >= 1 and,
// for ground sets of at most kMaxExactGroundSet elements, x in P_M. Violations
// throw std::domain_error.
SelectabilityReport SelectabilityExperiment(
    const MatroidOracle& m, const MarginalVector& x, double lambda,
    double epsilon, int trials, AdversaryKind adversary, std::uint64_t seed,
    int threads = 1, const ChainOverrides& overrides = {});

}  // namespace ocrs

#endif  // OCRS_OCRS_ENGINE_H_
