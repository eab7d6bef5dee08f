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

#include "ocrs/ocrs_engine.h"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include "ocrs/parallel.h"

namespace ocrs {

GreedySelector::GreedySelector(const MatroidOracle& m,
                               const SpanningChain& chain)
    : m_(m),
      chain_(chain),
      minors_(chain.links().size()),
      accepted_by_level_(chain.links().size(), m.EmptySet()),
      accepted_(m.EmptySet()) {
  if (chain.ground() != m.ground_set()) {
    throw std::invalid_argument("chain ground set differs from the matroid's");
  }
}

const MatroidOracle& GreedySelector::LevelMinor(int level) {
  auto& slot = minors_[level];
  if (!slot) {
    slot = m_.Restrict(chain_[level]).Contract(chain_[level + 1]);
  }
  return *slot;
}

bool GreedySelector::Offer(ElementId e) {
  int level;
  try {
    level = chain_.LevelOf(e);
  } catch (const std::out_of_range&) {
    throw std::logic_error("element " + std::to_string(e) +
                           " has no level in the chain");
  }
  ElemSet candidate = accepted_by_level_[level];
  candidate.Insert(e);
  if (!LevelMinor(level).IsIndependent(candidate)) return false;
  accepted_by_level_[level] = std::move(candidate);
  accepted_.Insert(e);
  return true;
}

namespace {

void CheckPermutation(const ElemSet& actives, const ArrivalOrder& order) {
  ElemSet seen(actives.universe_size());
  for (ElementId e : order) {
    if (e < 0 || e >= actives.universe_size() || !actives.Contains(e) ||
        seen.Contains(e)) {
      throw std::domain_error("arrival order is not a permutation of actives");
    }
    seen.Insert(e);
  }
  if (seen != actives) {
    throw std::domain_error("arrival order misses active elements");
  }
}

bool TargetAccepted(const MatroidOracle& m, const SpanningChain& chain,
                    const ArrivalOrder& order, ElementId target) {
  GreedySelector selector(m, chain);
  for (ElementId e : order) {
    const bool accepted = selector.Offer(e);
    if (e == target) return accepted;
  }
  throw std::logic_error("target missing from arrival order");
}

}  // namespace

ElemSet RunSelection(const MatroidOracle& m, const SpanningChain& chain,
                     const ElemSet& actives, const ArrivalOrder& order) {
  CheckPermutation(actives, order);
  GreedySelector selector(m, chain);
  for (ElementId e : order) {
    if (selector.Offer(e) && !m.IsIndependent(selector.accepted())) {
      throw std::logic_error("greedy selection produced a dependent set " +
                             selector.accepted().ToString());
    }
  }
  return selector.accepted();
}

std::string_view AdversaryName(AdversaryKind kind) {
  switch (kind) {
    case AdversaryKind::kElementLast:
      return "element-last";
    case AdversaryKind::kExhaustiveWorst:
      return "exhaustive-worst";
    case AdversaryKind::kRandomOrder:
      return "random-order";
    case AdversaryKind::kFixed:
      return "fixed";
  }
  return "unknown";
}

std::optional<AdversaryKind> ParseAdversary(std::string_view name) {
  for (AdversaryKind kind :
       {AdversaryKind::kElementLast, AdversaryKind::kExhaustiveWorst,
        AdversaryKind::kRandomOrder, AdversaryKind::kFixed}) {
    if (AdversaryName(kind) == name) return kind;
  }
  return std::nullopt;
}

ArrivalOrder ElementLastOrder(const ElemSet& actives, ElementId target) {
  if (!actives.Contains(target)) {
    throw std::domain_error("target " + std::to_string(target) +
                            " is not active");
  }
  ArrivalOrder order;
  order.reserve(actives.Size());
  for (ElementId e : actives) {
    if (e != target) order.push_back(e);
  }
  order.push_back(target);
  return order;
}

ArrivalOrder WorstCaseOrder(const MatroidOracle& m, const SpanningChain& chain,
                            const ElemSet& actives, ElementId target,
                            AdversaryKind kind) {
  ArrivalOrder last = ElementLastOrder(actives, target);
  if (kind == AdversaryKind::kElementLast) return last;
  if (kind != AdversaryKind::kExhaustiveWorst) {
    throw std::invalid_argument("no worst-case order for adversary " +
                                std::string(AdversaryName(kind)));
  }
  if (actives.Size() > kMaxExhaustiveActives) {
    throw SizeLimitError("exhaustive order search limited to " +
                         std::to_string(kMaxExhaustiveActives) + " actives");
  }
  ArrivalOrder order = actives.ToVector();
  ArrivalOrder best;
  do {
    if (!TargetAccepted(m, chain, order, target)) {
      best = order;
      break;
    }
    if (best.empty()) best = order;
  } while (std::next_permutation(order.begin(), order.end()));

  const bool exhaustive = TargetAccepted(m, chain, best, target);
  if (exhaustive != TargetAccepted(m, chain, last, target)) {
    throw std::logic_error("element-last order is not worst for target " +
                           std::to_string(target));
  }
  return best;
}

TrialOutcome ChainOcrsTrial(const MatroidOracle& m, const MarginalVector& x,
                            double lambda, const ChainSampler& sampler,
                            AdversaryKind adversary, RngStream& rng) {
  const ChainResult built = sampler(rng);
  const SpanningChain& chain = built.chain;
  TrialOutcome out;
  out.chain_length = chain.length();
  out.last_link_empty = chain[std::max(0, chain.length() - 1)].Empty();
  out.draw_count = built.trace.draw_count;
  out.active = SampleActiveSet(x, m.ground_set(), rng);
  out.fed = FilterActives(out.active, lambda, rng);
  out.selected = m.EmptySet();

  switch (adversary) {
    case AdversaryKind::kElementLast:
    case AdversaryKind::kExhaustiveWorst:
      for (ElementId target : out.fed) {
        const ArrivalOrder order =
            WorstCaseOrder(m, chain, out.fed, target, adversary);
        if (TargetAccepted(m, chain, order, target)) {
          out.selected.Insert(target);
        }
      }
      break;
    case AdversaryKind::kRandomOrder: {
      ArrivalOrder order = out.fed.ToVector();
      for (std::size_t i = order.size(); i > 1; --i) {
        std::swap(order[i - 1], order[rng.UniformInt(i)]);
      }
      out.selected = RunSelection(m, chain, out.fed, order);
      break;
    }
    case AdversaryKind::kFixed:
      out.selected = RunSelection(m, chain, out.fed, out.fed.ToVector());
      break;
  }
  return out;
}

SelectabilityReport SelectabilityExperiment(
    const MatroidOracle& m, const MarginalVector& x, double lambda,
    double epsilon, int trials, AdversaryKind adversary, std::uint64_t seed,
    int threads, const ChainOverrides& overrides) {
  if (!(epsilon > 0.0 && epsilon <= 1.0 / 20.0)) {
    throw std::domain_error("epsilon must lie in (0, 1/20]");
  }
  if (!(lambda > 0.0 && lambda <= 1.0 - 4.0 * epsilon)) {
    throw std::domain_error("lambda must lie in (0, 1 - 4 eps]");
  }
  if (trials < 1) throw std::domain_error("trials must be at least 1");
  if (x.size() != m.universe_size()) {
    throw std::invalid_argument("marginal vector does not match the universe");
  }
  if (m.ground_set().Size() <= kMaxExactGroundSet &&
      !InScaledPolytope(m, x, 1.0)) {
    throw std::domain_error("x is not in the matroid polytope");
  }

  SelectabilityReport report;
  report.lambda = lambda;
  report.epsilon = epsilon;
  report.chain_tau = lambda + 4.0 * epsilon;
  report.adversary = adversary;
  report.trials = trials;
  report.seed = seed;
  report.floor = lambda * (1.0 - lambda - 8.0 * epsilon);
  report.headline = 0.25 - epsilon;

  const ChainSampler sampler = OcrsChainSampler(
      m, Scale(x, lambda), report.chain_tau, epsilon, overrides);
  const ChainTrace plan = PlanChain(m, report.chain_tau, epsilon, overrides);
  report.draw_bound = plan.DrawBound() * trials;
  report.conforming = plan.conforming;

  std::vector<TrialOutcome> outcomes(trials);
  ParallelFor(trials, threads, [&](std::int64_t t) {
    RngStream rng(seed, static_cast<std::uint64_t>(t));
    outcomes[t] = ChainOcrsTrial(m, x, lambda, sampler, adversary, rng);
  });

  std::vector<std::int64_t> activations(m.universe_size(), 0);
  std::vector<std::int64_t> selections(m.universe_size(), 0);
  std::int64_t empty_last = 0;
  std::int64_t length_sum = 0;
  for (const TrialOutcome& o : outcomes) {
    for (ElementId e : o.active) ++activations[e];
    for (ElementId e : o.selected) {
      if (!o.active.Contains(e)) {
        throw std::logic_error("selected element was not active");
      }
      ++selections[e];
    }
    if (o.last_link_empty) ++empty_last;
    length_sum += o.chain_length;
    report.draw_count += o.draw_count;
  }
  report.last_link_empty_rate = static_cast<double>(empty_last) / trials;
  report.mean_chain_length = static_cast<double>(length_sum) / trials;

  for (ElementId e : m.ground_set()) {
    ElementSelectability row;
    row.element = e;
    row.activations = activations[e];
    row.selections = selections[e];
    row.frequency = row.activations > 0
                        ? static_cast<double>(row.selections) /
                              static_cast<double>(row.activations)
                        : 0.0;
    row.ci = WilsonInterval(row.selections, row.activations);
    if (row.activations > 0 && row.frequency < report.min_frequency) {
      report.min_frequency = row.frequency;
      report.min_element = e;
    }
    report.elements.push_back(row);
  }
  if (report.min_element >= 0) {
    const double f = std::clamp(report.floor, 0.0, 1.0);
    report.tolerance =
        3.0 * ProportionStdError(f, activations[report.min_element]);
    report.floor_pass =
        report.min_frequency >= report.floor - report.tolerance;
  }
  return report;
}

}  // namespace ocrs
