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

// Product distributions D(x) over subsets of a ground set: sampling, exact
// enumeration for small ground sets, and empirical estimation.

#ifndef OCRS_STOCHASTIC_H_
#define OCRS_STOCHASTIC_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ocrs/elem_set.h"
#include "ocrs/matroid.h"
#include "ocrs/rng.h"

namespace ocrs {

// Per-element activation probabilities, indexed by ElementId.
class MarginalVector {
 public:
  MarginalVector() = default;
  // Throws std::domain_error unless every entry lies in [0, 1].
  explicit MarginalVector(std::vector<double> values);
  static MarginalVector Zeros(int n) {
    return MarginalVector(std::vector<double>(n, 0.0));
  }

  int size() const { return static_cast<int>(values_.size()); }
  double operator[](ElementId e) const { return values_[e]; }
  const std::vector<double>& values() const { return values_; }

  bool operator==(const MarginalVector&) const = default;

 private:
  std::vector<double> values_;
};

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void Add(double v) {
    const double t = sum_ + v;
    if ((sum_ >= 0 ? sum_ : -sum_) >= (v >= 0 ? v : -v)) {
      compensation_ += (sum_ - t) + v;
    } else {
      compensation_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double Total() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

// R(x) restricted to `ground`: each e in ground is included independently
// with probability x_e; elements outside ground never are.
ElemSet SampleActiveSet(const MarginalVector& x, const ElemSet& ground,
                        RngStream& rng);
// R(x) over the whole universe {0, ..., x.size()-1}.
ElemSet SampleActiveSet(const MarginalVector& x, RngStream& rng);

// q independent draws from D(x) restricted to a ground set.
struct SampleBatch {
  std::vector<ElemSet> samples;
  std::int64_t draw_count = 0;
};
SampleBatch DrawSamples(const MarginalVector& x, const ElemSet& ground, int q,
                        RngStream& rng);

inline constexpr int kMaxExactGroundSet = 20;

// Calls f(realization, probability) for every realization of R(x) within
// `ground` that has positive probability. Elements with x_e = 1 are always
// present and those with x_e = 0 never are, so only the genuinely random
// elements are enumerated. Throws SizeLimitError when |ground| exceeds
// kMaxExactGroundSet.
template <typename F>
void ForEachRealization(const MarginalVector& x, const ElemSet& ground, F&& f);

// Pr[predicate(R)] for R ~ D(x) restricted to ground, by full enumeration.
template <typename Predicate>
double ExactEventProbability(const MarginalVector& x, const ElemSet& ground,
                             Predicate&& predicate) {
  CompensatedSum total;
  ForEachRealization(x, ground, [&](const ElemSet& r, double p) {
    if (predicate(r)) total.Add(p);
  });
  return total.Total();
}

// All positive-probability realizations, materialized for repeated queries.
class RealizationTable {
 public:
  RealizationTable(const MarginalVector& x, const ElemSet& ground);

  std::size_t size() const { return outcomes_.size(); }
  const std::vector<std::pair<ElemSet, double>>& outcomes() const {
    return outcomes_;
  }

  template <typename Predicate>
  double Probability(Predicate&& predicate) const {
    CompensatedSum total;
    for (const auto& [r, p] : outcomes_) {
      if (predicate(r)) total.Add(p);
    }
    return total.Total();
  }

  template <typename Value>
  double Expectation(Value&& value) const {
    CompensatedSum total;
    for (const auto& [r, p] : outcomes_) total.Add(p * value(r));
    return total.Total();
  }

 private:
  std::vector<std::pair<ElemSet, double>> outcomes_;
};

// |{p : predicate(S_p)}| / q. Throws std::domain_error on an empty batch.
template <typename Predicate>
double EmpiricalProbability(const SampleBatch& batch, Predicate&& predicate) {
  if (batch.samples.empty()) {
    throw std::domain_error("empirical probability of an empty batch");
  }
  std::int64_t hits = 0;
  for (const ElemSet& s : batch.samples) {
    if (predicate(s)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(batch.samples.size());
}

// lambda * x; lambda must lie in [0, 1].
MarginalVector Scale(const MarginalVector& x, double lambda);

// Each member of r survives independently with probability lambda.
ElemSet FilterActives(const ElemSet& r, double lambda, RngStream& rng);

// Whether sum_{e in S} x_e <= lambda * r(S) for every nonempty S within the
// ground set of m, checked by enumeration (|ground| <= kMaxExactGroundSet).
// A relative slack of 1e-12 absorbs rounding in the sums.
bool InScaledPolytope(const MatroidOracle& m, const MarginalVector& x,
                      double lambda);

// ---------------------------------------------------------------------------

template <typename F>
void ForEachRealization(const MarginalVector& x, const ElemSet& ground,
                        F&& f) {
  if (ground.Size() > kMaxExactGroundSet) {
    throw SizeLimitError("exact enumeration limited to " +
                         std::to_string(kMaxExactGroundSet) +
                         " elements, got " + std::to_string(ground.Size()));
  }
  if (ground.universe_size() != x.size()) {
    throw std::invalid_argument("marginal vector does not match the universe");
  }
  ElemSet base(ground.universe_size());
  std::vector<ElementId> random_ids;
  std::vector<double> probs;
  for (ElementId e : ground) {
    if (x[e] >= 1.0) {
      base.Insert(e);
    } else if (x[e] > 0.0) {
      random_ids.push_back(e);
      probs.push_back(x[e]);
    }
  }
  const int k = static_cast<int>(random_ids.size());
  ElemSet r = base;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << k); ++mask) {
    r = base;
    double p = 1.0;
    for (int b = 0; b < k; ++b) {
      if ((mask >> b) & 1U) {
        r.Insert(random_ids[b]);
        p *= probs[b];
      } else {
        p *= 1.0 - probs[b];
      }
    }
    f(static_cast<const ElemSet&>(r), p);
  }
}

}  // namespace ocrs

#endif  // OCRS_STOCHASTIC_H_
