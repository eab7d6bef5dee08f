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

#include "ocrs/matroid.h"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace ocrs {

ElemSet MatroidFamily::Closure(const ElemSet& s) const {
  const int base = Rank(s);
  ElemSet out = s;
  ElemSet probe = s;
  for (ElementId e = 0; e < universe_size(); ++e) {
    if (s.Contains(e)) continue;
    probe.Insert(e);
    if (Rank(probe) == base) out.Insert(e);
    probe.Erase(e);
  }
  return out;
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int Find(int v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }
  // Returns false when u and v were already connected.
  bool Union(int u, int v) {
    u = Find(u);
    v = Find(v);
    if (u == v) return false;
    parent_[u] = v;
    return true;
  }

 private:
  std::vector<int> parent_;
};

class UniformFamily final : public MatroidFamily {
 public:
  UniformFamily(int n, int k) : n_(n), k_(k) {}
  int universe_size() const override { return n_; }
  int Rank(const ElemSet& s) const override { return std::min(s.Size(), k_); }
  ElemSet Closure(const ElemSet& s) const override {
    return s.Size() >= k_ ? ElemSet::Full(n_) : s;
  }
  std::string Describe() const override {
    return "uniform(n=" + std::to_string(n_) + ",k=" + std::to_string(k_) +
           ")";
  }

 private:
  int n_;
  int k_;
};

class PartitionFamily final : public MatroidFamily {
 public:
  PartitionFamily(int n, std::vector<ElemSet> blocks,
                  std::vector<int> capacities)
      : n_(n), blocks_(std::move(blocks)), capacities_(std::move(capacities)) {}
  int universe_size() const override { return n_; }
  int Rank(const ElemSet& s) const override {
    int r = 0;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      r += std::min((s & blocks_[b]).Size(), capacities_[b]);
    }
    return r;
  }
  ElemSet Closure(const ElemSet& s) const override {
    ElemSet out = s;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      if ((s & blocks_[b]).Size() >= capacities_[b]) out |= blocks_[b];
    }
    return out;
  }
  std::string Describe() const override {
    return "partition(n=" + std::to_string(n_) +
           ",blocks=" + std::to_string(blocks_.size()) + ")";
  }

 private:
  int n_;
  std::vector<ElemSet> blocks_;
  std::vector<int> capacities_;
};

class GraphicFamily final : public MatroidFamily {
 public:
  GraphicFamily(int num_vertices, std::vector<std::pair<int, int>> edges)
      : num_vertices_(num_vertices), edges_(std::move(edges)) {}
  int universe_size() const override {
    return static_cast<int>(edges_.size());
  }
  int Rank(const ElemSet& s) const override {
    UnionFind uf(num_vertices_);
    int r = 0;
    for (ElementId e : s) {
      if (uf.Union(edges_[e].first, edges_[e].second)) ++r;
    }
    return r;
  }
  ElemSet Closure(const ElemSet& s) const override {
    UnionFind uf(num_vertices_);
    for (ElementId e : s) uf.Union(edges_[e].first, edges_[e].second);
    ElemSet out(universe_size());
    for (ElementId e = 0; e < universe_size(); ++e) {
      if (uf.Find(edges_[e].first) == uf.Find(edges_[e].second)) {
        out.Insert(e);
      }
    }
    return out;
  }
  std::string Describe() const override {
    return "graphic(vertices=" + std::to_string(num_vertices_) +
           ",edges=" + std::to_string(edges_.size()) + ")";
  }

 private:
  int num_vertices_;
  std::vector<std::pair<int, int>> edges_;
};

class LaminarFamily final : public MatroidFamily {
 public:
  LaminarFamily(int n, std::vector<ElemSet> sets, std::vector<int> capacities)
      : n_(n),
        sets_(std::move(sets)),
        capacities_(std::move(capacities)),
        containing_(n) {
    for (std::size_t l = 0; l < sets_.size(); ++l) {
      for (ElementId e : sets_[l]) containing_[e].push_back(static_cast<int>(l));
    }
  }
  int universe_size() const override { return n_; }
  // Greedy over ascending ids yields a maximum independent subset.
  int Rank(const ElemSet& s) const override {
    std::vector<int> load(sets_.size(), 0);
    int r = 0;
    for (ElementId e : s) {
      const auto& ls = containing_[e];
      const bool fits = std::all_of(ls.begin(), ls.end(), [&](int l) {
        return load[l] < capacities_[l];
      });
      if (!fits) continue;
      for (int l : ls) ++load[l];
      ++r;
    }
    return r;
  }
  std::string Describe() const override {
    return "laminar(n=" + std::to_string(n_) +
           ",sets=" + std::to_string(sets_.size()) + ")";
  }

 private:
  int n_;
  std::vector<ElemSet> sets_;
  std::vector<int> capacities_;
  std::vector<std::vector<int>> containing_;
};

// Rank table over all 2^n subsets; n <= 12.
class ExplicitFamily final : public MatroidFamily {
 public:
  ExplicitFamily(int n, std::vector<int> rank_table)
      : n_(n), rank_(std::move(rank_table)) {}
  int universe_size() const override { return n_; }
  int Rank(const ElemSet& s) const override { return rank_[s.Mask()]; }
  std::string Describe() const override {
    return "explicit(n=" + std::to_string(n_) + ")";
  }

 private:
  int n_;
  std::vector<int> rank_;
};

// rank[mask] = largest popcount of a listed subset of mask (0 if none).
std::vector<int> RankTableFromFamily(int n, const std::vector<bool>& listed) {
  const std::uint32_t size = std::uint32_t{1} << n;
  std::vector<int> rank(size, 0);
  for (std::uint32_t mask = 0; mask < size; ++mask) {
    int best = listed[mask] ? std::popcount(mask) : 0;
    for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
      const std::uint32_t bit = rest & (~rest + 1);
      best = std::max(best, rank[mask ^ bit]);
    }
    rank[mask] = best;
  }
  return rank;
}

std::vector<bool> ListedTable(int n, const std::vector<ElemSet>& sets) {
  std::vector<bool> listed(std::size_t{1} << n, false);
  for (const ElemSet& s : sets) {
    if (s.universe_size() != n) {
      throw std::invalid_argument(
          "explicit matroid: independent set over wrong universe");
    }
    listed[s.Mask()] = true;
  }
  return listed;
}

// Exhaustive checks over a ground set of g <= 12 local elements.
ValidationReport CheckTables(int g, const std::vector<bool>& indep,
                             const std::vector<int>& rank) {
  ValidationReport report;
  const std::uint32_t size = std::uint32_t{1} << g;
  auto fail = [&report](bool& flag, const std::string& what) {
    if (flag && report.first_violation.empty()) report.first_violation = what;
    flag = false;
  };
  auto mask_str = [](std::uint32_t m) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (int b = 0; b < 32; ++b) {
      if ((m >> b) & 1U) {
        os << (first ? "" : ",") << b;
        first = false;
      }
    }
    os << "}";
    return os.str();
  };

  if (!indep[0]) fail(report.empty_independent, "empty set is not independent");

  for (std::uint32_t mask = 0; mask < size && report.rank_bounded; ++mask) {
    if (rank[mask] < 0 || rank[mask] > std::popcount(mask)) {
      fail(report.rank_bounded, "rank out of range at " + mask_str(mask));
    }
  }
  for (std::uint32_t mask = 0; mask < size && report.rank_monotone; ++mask) {
    for (int b = 0; b < g; ++b) {
      if (((mask >> b) & 1U) && rank[mask ^ (1U << b)] > rank[mask]) {
        fail(report.rank_monotone, "rank not monotone at " + mask_str(mask));
        break;
      }
    }
  }
  for (std::uint32_t mask = 0; mask < size && report.downward_closure;
       ++mask) {
    if (!indep[mask]) continue;
    for (int b = 0; b < g; ++b) {
      if (((mask >> b) & 1U) && !indep[mask ^ (1U << b)]) {
        fail(report.downward_closure,
             "downward closure: " + mask_str(mask) + " independent but " +
                 mask_str(mask ^ (1U << b)) + " is not");
        break;
      }
    }
  }

  std::vector<std::uint32_t> independents;
  for (std::uint32_t mask = 0; mask < size; ++mask) {
    if (indep[mask]) independents.push_back(mask);
  }
  for (std::uint32_t small : independents) {
    if (!report.exchange) break;
    for (std::uint32_t large : independents) {
      if (std::popcount(large) <= std::popcount(small)) continue;
      bool found = false;
      for (std::uint32_t rest = large & ~small; rest != 0; rest &= rest - 1) {
        const std::uint32_t bit = rest & (~rest + 1);
        if (indep[small | bit]) {
          found = true;
          break;
        }
      }
      if (!found) {
        fail(report.exchange, "exchange axiom fails for I=" + mask_str(small) +
                                  ", J=" + mask_str(large));
        break;
      }
    }
  }

  for (std::uint32_t s = 0; s < size && report.submodular; ++s) {
    for (std::uint32_t t = s + 1; t < size; ++t) {
      if (rank[s | t] + rank[s & t] > rank[s] + rank[t]) {
        fail(report.submodular,
             "submodularity fails for S=" + mask_str(s) + ", T=" + mask_str(t));
        break;
      }
    }
  }
  return report;
}

ElemSet CheckedSet(int n, const std::vector<ElementId>& ids,
                   const char* what) {
  ElemSet s(n);
  for (ElementId e : ids) {
    if (e < 0 || e >= n) {
      throw std::invalid_argument(std::string(what) + ": element " +
                                  std::to_string(e) + " outside [0, n)");
    }
    s.Insert(e);
  }
  return s;
}

}  // namespace

MatroidOracle::MatroidOracle(std::shared_ptr<const MatroidFamily> family)
    : MatroidOracle(family, ElemSet::Full(family->universe_size()),
                    ElemSet(family->universe_size())) {}

MatroidOracle::MatroidOracle(std::shared_ptr<const MatroidFamily> family,
                             ElemSet ground, ElemSet contracted)
    : family_(std::move(family)),
      ground_(std::move(ground)),
      contracted_(std::move(contracted)) {
  contracted_rank_ = family_->Rank(contracted_);
  full_rank_ = family_->Rank(ground_ | contracted_) - contracted_rank_;
}

void MatroidOracle::CheckInGround(const ElemSet& s,
                                  std::string_view op) const {
  if (s.universe_size() != universe_size() || !s.IsSubsetOf(ground_)) {
    throw std::domain_error(std::string(op) + ": set " + s.ToString() +
                            " is not contained in the ground set");
  }
}

int MatroidOracle::Rank(const ElemSet& s) const {
  CheckInGround(s, "rank");
  if (contracted_.Empty()) return family_->Rank(s);
  return family_->Rank(s | contracted_) - contracted_rank_;
}

bool MatroidOracle::IsIndependent(const ElemSet& s) const {
  return Rank(s) == s.Size();
}

ElemSet MatroidOracle::Span(const ElemSet& s) const {
  CheckInGround(s, "span");
  if (contracted_.Empty()) return family_->Closure(s) & ground_;
  return family_->Closure(s | contracted_) & ground_;
}

bool MatroidOracle::IsLoop(ElementId e) const {
  ElemSet single = EmptySet();
  single.Insert(e);
  return Rank(single) == 0;
}

MatroidOracle MatroidOracle::Restrict(const ElemSet& c) const {
  CheckInGround(c, "restrict");
  return MatroidOracle(family_, c, contracted_);
}

MatroidOracle MatroidOracle::Contract(const ElemSet& a) const {
  CheckInGround(a, "contract");
  return MatroidOracle(family_, ground_ - a, contracted_ | a);
}

std::string MatroidOracle::Describe() const {
  std::string out = family_->Describe();
  if (ground_.Size() != universe_size()) out += "|" + ground_.ToString();
  if (!contracted_.Empty()) out += "/" + contracted_.ToString();
  return out;
}

MatroidOracle UniformMatroid(int n, int k) {
  if (n < 0 || k < 0) {
    throw std::invalid_argument("uniform matroid: n and k must be >= 0");
  }
  return MatroidOracle(std::make_shared<UniformFamily>(n, std::min(k, n)));
}

MatroidOracle PartitionMatroid(int n,
                               std::vector<std::vector<ElementId>> blocks,
                               std::vector<int> capacities) {
  if (blocks.size() != capacities.size()) {
    throw std::invalid_argument(
        "partition matroid: blocks and capacities differ in length");
  }
  std::vector<ElemSet> block_sets;
  ElemSet covered(n);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    ElemSet block = CheckedSet(n, blocks[b], "partition matroid");
    if (block.Intersects(covered)) {
      throw std::invalid_argument("partition matroid: blocks overlap");
    }
    if (capacities[b] < 0) {
      throw std::invalid_argument("partition matroid: negative capacity");
    }
    covered |= block;
    block_sets.push_back(std::move(block));
  }
  if (covered.Size() != n) {
    throw std::invalid_argument(
        "partition matroid: blocks do not cover the ground set");
  }
  return MatroidOracle(std::make_shared<PartitionFamily>(
      n, std::move(block_sets), std::move(capacities)));
}

MatroidOracle GraphicMatroid(int num_vertices,
                             std::vector<std::pair<int, int>> edges) {
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= num_vertices || v >= num_vertices) {
      throw std::invalid_argument("graphic matroid: endpoint out of range");
    }
  }
  return MatroidOracle(
      std::make_shared<GraphicFamily>(num_vertices, std::move(edges)));
}

MatroidOracle CompleteGraphMatroid(int num_vertices) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < num_vertices; ++u) {
    for (int v = u + 1; v < num_vertices; ++v) edges.emplace_back(u, v);
  }
  return GraphicMatroid(num_vertices, std::move(edges));
}

MatroidOracle LaminarMatroid(int n, std::vector<std::vector<ElementId>> sets,
                             std::vector<int> capacities) {
  if (sets.size() != capacities.size()) {
    throw std::invalid_argument(
        "laminar matroid: sets and capacities differ in length");
  }
  std::vector<ElemSet> family;
  for (std::size_t l = 0; l < sets.size(); ++l) {
    if (capacities[l] < 0) {
      throw std::invalid_argument("laminar matroid: negative capacity");
    }
    family.push_back(CheckedSet(n, sets[l], "laminar matroid"));
  }
  for (std::size_t a = 0; a < family.size(); ++a) {
    for (std::size_t b = a + 1; b < family.size(); ++b) {
      const bool ok = !family[a].Intersects(family[b]) ||
                      family[a].IsSubsetOf(family[b]) ||
                      family[b].IsSubsetOf(family[a]);
      if (!ok) {
        throw std::invalid_argument("laminar matroid: sets " +
                                    family[a].ToString() + " and " +
                                    family[b].ToString() + " cross");
      }
    }
  }
  return MatroidOracle(std::make_shared<LaminarFamily>(n, std::move(family),
                                                       std::move(capacities)));
}

MatroidOracle ExplicitMatroid(int n, std::vector<ElemSet> independent_sets) {
  if (n > kMaxValidationGroundSet) {
    throw SizeLimitError("explicit matroid: n=" + std::to_string(n) +
                         " exceeds the validation limit of " +
                         std::to_string(kMaxValidationGroundSet));
  }
  ValidationReport report = ValidateIndependenceFamily(n, independent_sets);
  if (!report.passed()) {
    throw std::invalid_argument("explicit matroid violates axioms: " +
                                report.first_violation);
  }
  return MatroidOracle(std::make_shared<ExplicitFamily>(
      n, RankTableFromFamily(n, ListedTable(n, independent_sets))));
}

ValidationReport ValidateIndependenceFamily(
    int n, const std::vector<ElemSet>& independent_sets) {
  if (n < 0 || n > kMaxValidationGroundSet) {
    throw SizeLimitError("validation limited to ground sets of at most " +
                         std::to_string(kMaxValidationGroundSet) +
                         " elements");
  }
  std::vector<bool> listed = ListedTable(n, independent_sets);
  std::vector<int> rank = RankTableFromFamily(n, listed);
  return CheckTables(n, listed, rank);
}

ValidationReport ValidateAxioms(const MatroidOracle& m) {
  const std::vector<ElementId> ids = m.ground_set().ToVector();
  const int g = static_cast<int>(ids.size());
  if (g > kMaxValidationGroundSet) {
    throw SizeLimitError("validation limited to ground sets of at most " +
                         std::to_string(kMaxValidationGroundSet) +
                         " elements, got " + std::to_string(g));
  }
  const std::uint32_t size = std::uint32_t{1} << g;
  std::vector<int> rank(size);
  std::vector<bool> indep(size);
  for (std::uint32_t mask = 0; mask < size; ++mask) {
    ElemSet s = m.EmptySet();
    for (int b = 0; b < g; ++b) {
      if ((mask >> b) & 1U) s.Insert(ids[b]);
    }
    rank[mask] = m.Rank(s);
    indep[mask] = m.IsIndependent(s);
  }
  return CheckTables(g, indep, rank);
}

}  // namespace ocrs
