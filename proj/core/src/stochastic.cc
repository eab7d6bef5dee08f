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

#include "ocrs/stochastic.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace ocrs {
namespace {

void CheckProbability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error(std::string(what) + " must lie in [0, 1], got " +
                            std::to_string(p));
  }
}

}  // namespace

MarginalVector::MarginalVector(std::vector<double> values)
    : values_(std::move(values)) {
  for (double v : values_) CheckProbability(v, "marginal entry");
}

ElemSet SampleActiveSet(const MarginalVector& x, const ElemSet& ground,
                        RngStream& rng) {
  ElemSet out(x.size());
  for (ElementId e : ground) {
    const double p = x[e];
    // Degenerate coordinates consume no randomness.
    if (p <= 0.0) continue;
    if (p >= 1.0 || rng.Bernoulli(p)) out.Insert(e);
  }
  return out;
}

ElemSet SampleActiveSet(const MarginalVector& x, RngStream& rng) {
  return SampleActiveSet(x, ElemSet::Full(x.size()), rng);
}

SampleBatch DrawSamples(const MarginalVector& x, const ElemSet& ground, int q,
                        RngStream& rng) {
  SampleBatch batch;
  batch.samples.reserve(q);
  for (int p = 0; p < q; ++p) {
    batch.samples.push_back(SampleActiveSet(x, ground, rng));
  }
  batch.draw_count = q;
  return batch;
}

RealizationTable::RealizationTable(const MarginalVector& x,
                                   const ElemSet& ground) {
  ForEachRealization(x, ground, [this](const ElemSet& r, double p) {
    outcomes_.emplace_back(r, p);
  });
}

MarginalVector Scale(const MarginalVector& x, double lambda) {
  CheckProbability(lambda, "scale factor");
  std::vector<double> out(x.values());
  for (double& v : out) v *= lambda;
  return MarginalVector(std::move(out));
}

ElemSet FilterActives(const ElemSet& r, double lambda, RngStream& rng) {
  CheckProbability(lambda, "filter keep probability");
  ElemSet kept(r.universe_size());
  for (ElementId e : r) {
    if (rng.Bernoulli(lambda)) kept.Insert(e);
  }
  return kept;
}

bool InScaledPolytope(const MatroidOracle& m, const MarginalVector& x,
                      double lambda) {
  const std::vector<ElementId> ids = m.ground_set().ToVector();
  const int g = static_cast<int>(ids.size());
  if (g > kMaxExactGroundSet) {
    throw SizeLimitError("polytope check limited to " +
                         std::to_string(kMaxExactGroundSet) + " elements");
  }
  if (x.size() != m.universe_size()) {
    throw std::invalid_argument("marginal vector does not match the universe");
  }
  ElemSet s = m.EmptySet();
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << g); ++mask) {
    s.Clear();
    double mass = 0.0;
    for (int b = 0; b < g; ++b) {
      if ((mask >> b) & 1U) {
        s.Insert(ids[b]);
        mass += x[ids[b]];
      }
    }
    const double cap = lambda * m.Rank(s);
    if (mass > cap + 1e-12 * std::max(1.0, std::abs(cap))) return false;
  }
  return true;
}

}  // namespace ocrs
