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

#ifndef OCRS_MATROID_H_
#define OCRS_MATROID_H_

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ocrs/elem_set.h"

namespace ocrs {

// Raised when an operation is asked to enumerate a ground set larger than
// its exhaustive limit.
class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// A concrete matroid family over the universe {0, ..., n-1}.
//
// Implementations must be immutable after construction; oracles are shared
// across concurrent trial workers.
class MatroidFamily {
 public:
  virtual ~MatroidFamily() = default;

  virtual int universe_size() const = 0;
  virtual int Rank(const ElemSet& s) const = 0;
  // {e : r(s + e) = r(s)} over the whole universe.
  virtual ElemSet Closure(const ElemSet& s) const;
  virtual std::string Describe() const = 0;
};

// Rank, independence, and span access to a minor (M | R) / K of a family.
//
// The ground set is R \ K and ranks are r(S + K) - r(K). Restriction and
// contraction return new views sharing the same family; nothing is
// materialized. Element ids are never relabeled.
class MatroidOracle {
 public:
  explicit MatroidOracle(std::shared_ptr<const MatroidFamily> family);

  int universe_size() const { return family_->universe_size(); }
  const ElemSet& ground_set() const { return ground_; }
  const ElemSet& contracted() const { return contracted_; }
  const MatroidFamily& family() const { return *family_; }

  // All of these throw std::domain_error when `s` leaves the ground set.
  int Rank(const ElemSet& s) const;
  bool IsIndependent(const ElemSet& s) const;
  ElemSet Span(const ElemSet& s) const;

  // Rank of the ground set.
  int FullRank() const { return full_rank_; }
  bool IsLoop(ElementId e) const;

  // M|c; requires c within the ground set.
  MatroidOracle Restrict(const ElemSet& c) const;
  // M/a; requires a within the ground set.
  MatroidOracle Contract(const ElemSet& a) const;

  std::string Describe() const;

  ElemSet EmptySet() const { return ElemSet(universe_size()); }

 private:
  MatroidOracle(std::shared_ptr<const MatroidFamily> family, ElemSet ground,
                ElemSet contracted);
  void CheckInGround(const ElemSet& s, std::string_view op) const;

  std::shared_ptr<const MatroidFamily> family_;
  ElemSet ground_;
  ElemSet contracted_;
  int contracted_rank_ = 0;
  int full_rank_ = 0;
};

// U_{k,n}: every set of size at most k is independent.
MatroidOracle UniformMatroid(int n, int k);

// Blocks must partition {0, ..., n-1}; at most capacities[i] elements of
// blocks[i] may be chosen.
MatroidOracle PartitionMatroid(int n, std::vector<std::vector<ElementId>> blocks,
                               std::vector<int> capacities);

// Cycle matroid of a multigraph. Edge i is element i; self-loops are matroid
// loops.
MatroidOracle GraphicMatroid(int num_vertices,
                             std::vector<std::pair<int, int>> edges);
// Graphic matroid of the complete graph K_v, edges in lexicographic order.
MatroidOracle CompleteGraphMatroid(int num_vertices);

// A set is independent iff it meets each family member L in at most
// capacities[L] elements. The family must be laminar.
MatroidOracle LaminarMatroid(int n, std::vector<std::vector<ElementId>> sets,
                             std::vector<int> capacities);

// A matroid given by the list of all its independent sets. Requires n <= 12;
// the matroid axioms are verified on construction and a violation throws
// std::invalid_argument.
MatroidOracle ExplicitMatroid(int n, std::vector<ElemSet> independent_sets);

// Outcome of an exhaustive axiom check.
struct ValidationReport {
  bool empty_independent = true;
  bool rank_bounded = true;  // 0 <= r(S) <= |S|
  bool rank_monotone = true;
  bool downward_closure = true;
  bool exchange = true;
  bool submodular = true;
  std::string first_violation;

  bool passed() const {
    return empty_independent && rank_bounded && rank_monotone &&
           downward_closure && exchange && submodular;
  }
};

inline constexpr int kMaxValidationGroundSet = 12;

// Exhaustive check of the independence axioms and of submodularity of the
// rank function over all subsets of the ground set. Throws SizeLimitError
// when the ground set exceeds kMaxValidationGroundSet.
ValidationReport ValidateAxioms(const MatroidOracle& m);

// Same checks for a raw independence family on {0, ..., n-1}, with rank
// defined as the largest listed subset. Used to vet explicit families before
// an oracle is built.
ValidationReport ValidateIndependenceFamily(
    int n, const std::vector<ElemSet>& independent_sets);

}  // namespace ocrs

#endif  // OCRS_MATROID_H_
