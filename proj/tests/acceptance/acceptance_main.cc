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

// Acceptance suite. Prints one PASS/FAIL line per criterion.
//
//   ocrs_acceptance [--only N]... [--skip N]... [--threads K]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ocrs/analysis.h"
#include "ocrs/chain_builder.h"
#include "ocrs/experiment.h"
#include "ocrs/io.h"
#include "ocrs/matroid.h"
#include "ocrs/ocrs_engine.h"
#include "ocrs/stochastic.h"
#include "testing/corpus.h"

namespace ocrs {
namespace {

using ::ocrs::testing::AllSubsets;
using ::ocrs::testing::FromMask;
using ::ocrs::testing::RandomExplicitMatroid;
using ::ocrs::testing::RandomPolytopePoint;
using ::ocrs::testing::SmallCorpus;

constexpr double kEps = 0.05;
constexpr double kLambda = 0.5;

int g_threads = 0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

MarginalVector BasisIndicator(const MatroidOracle& m, double scale) {
  std::vector<double> x(m.universe_size(), 0.0);
  ElemSet basis = m.EmptySet();
  for (ElementId e : m.ground_set()) {
    basis.Insert(e);
    if (!m.IsIndependent(basis)) basis.Erase(e);
  }
  for (ElementId e : basis) x[e] = scale;
  return MarginalVector(x);
}

MarginalVector Uniform(int n, double v) {
  return MarginalVector(std::vector<double>(n, v));
}

// 1. Axioms and exhaustive submodularity on the corpus.
Outcome MatroidAxioms() {
  int checked = 0;
  for (const auto& [name, m] : SmallCorpus()) {
    const ValidationReport r = ValidateAxioms(m);
    if (!r.passed()) return {false, name + ": " + r.first_violation};
    const std::vector<ElemSet> subsets = AllSubsets(m.universe_size());
    for (const ElemSet& s : subsets) {
      if (m.Rank(s) > s.Size()) return {false, name + ": rank exceeds size"};
      for (const ElemSet& t : subsets) {
        if (m.Rank(s | t) + m.Rank(s & t) > m.Rank(s) + m.Rank(t)) {
          return {false, name + ": submodularity fails"};
        }
        if (s.IsSubsetOf(t) && m.Rank(s) > m.Rank(t)) {
          return {false, name + ": rank not monotone"};
        }
      }
    }
    ++checked;
  }
  return {true, Fmt("%d matroids, n <= 8", checked)};
}

// 2. Truncation distribution identities on the grid.
Outcome Truncation() {
  double worst_sum = 0.0, worst_rec = 0.0;
  for (double eps : {0.05, 0.04, 0.02}) {
    for (int rho : {3, 10, 100}) {
      const auto d = TruncationDistribution::Make(eps, rho);
      double total = 0.0;
      for (double p : d.pmf()) total += p;
      worst_sum = std::max(worst_sum, std::abs(total - 1.0));
      double cdf = d.pmf()[0];
      for (int h = 2; h <= d.eta(); ++h) {
        const double next = cdf + d.pmf()[h - 1];
        worst_rec = std::max(worst_rec, std::abs(next - (1 + eps) * cdf));
        cdf = next;
      }
      if (!(d.pmf()[0] <= std::pow(eps, 3) / std::log(rho))) {
        return {false, Fmt("Pr[h=1] bound fails at eps=%g rho=%d", eps, rho)};
      }
    }
  }
  const bool pass = worst_sum <= 1e-12 && worst_rec <= 1e-12;
  return {pass, Fmt("max |sum-1| = %.2e, max recurrence error = %.2e",
                    worst_sum, worst_rec)};
}

// 3. Conforming chains are well formed.
Outcome ChainShape() {
  struct Instance {
    std::string name;
    MatroidOracle m;
  };
  const std::vector<Instance> instances = {
      {"K4", CompleteGraphMatroid(4)}, {"U_{3,9}", UniformMatroid(9, 3)}};
  const double tau = kLambda + 4 * kEps;
  int runs = 0;
  for (const auto& [name, m] : instances) {
    const MarginalVector x =
        Uniform(m.universe_size(), kLambda * m.FullRank() / m.universe_size());
    for (int t = 0; t < 100; ++t) {
      RngStream rng(3, t);
      const ChainResult r = OcrsChain(m, x, tau, kEps, rng);
      const SpanningChain& c = r.chain;
      const int zeta = r.trace.zeta;
      if (!r.trace.conforming) return {false, name + ": non-conforming"};
      if (c[0] != m.ground_set() || c.length() != zeta + 1 ||
          !c[zeta + 1].Empty()) {
        return {false, name + ": endpoints wrong"};
      }
      for (int i = 1; i <= zeta + 1; ++i) {
        if (!c[i].IsSubsetOf(c[i - 1])) return {false, name + ": not nested"};
      }
      std::int64_t draws = 0;
      for (const LinkTrace& link : r.trace.links) {
        for (std::size_t h = 1; h < link.iterates.size(); ++h) {
          if (!link.iterates[h - 1].IsSubsetOf(link.iterates[h])) {
            return {false, name + ": A_h trace not monotone"};
          }
        }
        draws += std::int64_t{link.h_bar} * link.q;
      }
      if (draws != r.trace.draw_count ||
          r.trace.draw_count > r.trace.DrawBound()) {
        return {false, name + ": draw accounting"};
      }
      ++runs;
    }
  }
  return {true, Fmt("%d conforming chains", runs)};
}

// 4. C_zeta is empty with probability at least 1 - eps.
Outcome Spanning() {
  const MatroidOracle m = CompleteGraphMatroid(4);
  const MarginalVector x = BasisIndicator(m, kLambda);
  const SpanningReport r =
      VerifySpanning(m, x, kLambda, kEps, 200, 4, g_threads);
  const ChainTrace plan = PlanChain(m, kLambda + 4 * kEps, kEps);
  ChainOverrides smoke;
  smoke.q = std::max(1, plan.q / 10);
  smoke.eta = std::max(1, plan.eta / 10);
  smoke.zeta = std::max(1, plan.zeta / 10);
  const auto start = std::chrono::steady_clock::now();
  const SpanningReport s =
      VerifySpanning(m, x, kLambda, kEps, 200, 4, g_threads, smoke);
  const std::chrono::duration<double> smoke_time =
      std::chrono::steady_clock::now() - start;
  const bool pass = r.verdict.pass && r.verdict.conforming;
  return {pass,
          Fmt("fraction %.3f vs %.3f - %.3f; smoke (not gated) %.3f %s in "
              "%.1f s",
              r.verdict.measured, r.verdict.bound, r.verdict.tolerance,
              s.verdict.measured, s.verdict.pass ? "pass" : "fail",
              smoke_time.count())};
}

// 5. Expected rank of one link.
Outcome Progress() {
  const MatroidOracle m = CompleteGraphMatroid(4);
  const MarginalVector x = BasisIndicator(m, kLambda);
  const ProgressReport r = VerifyProgress(m, x, kLambda, kLambda + 4 * kEps,
                                          kEps, 1000, 5, g_threads);
  return {r.verdict.pass && r.verdict.conforming,
          Fmt("mean r(A) %.4f <= %.4f + %.4f", r.verdict.measured,
              r.verdict.bound, r.verdict.tolerance)};
}

// 6. Bad vs good after one link, plus a broken-builder calibration that must
// fail.
Outcome InLinkLoss() {
  const MatroidOracle m = UniformMatroid(4, 2);
  const InLinkLossReport r =
      VerifyInLinkLoss(m, Uniform(4, 0.25), 3, 0.54, kEps, 10000, 6, g_threads);
  const InLinkLossReport broken =
      VerifyInLinkLoss(UniformMatroid(2, 1), Uniform(2, 0.6), 3, 0.54, kEps,
                       1000, 6, g_threads, EmptyLinkBuilder());
  double worst_bad = 0.0;
  for (const auto& e : r.elements) worst_bad = std::max(worst_bad, e.pr_bad);
  const bool pass =
      r.verdict.pass && r.verdict.conforming && !broken.verdict.pass;
  return {pass, Fmt("worst excess %.2e (max Pr[bad] %.4f); calibration "
                    "builder %s",
                    r.verdict.measured, worst_bad,
                    broken.verdict.pass ? "PASSED (miscalibrated)"
                                        : "fails as required")};
}

// 7. T_alpha bullets under exact expectations.
Outcome TAlpha() {
  std::mt19937_64 gen(7);
  int q_checks = 0;
  double worst = -1.0;
  for (int i = 0; i < 50; ++i) {
    const int n = 3 + i % 6;
    const MatroidOracle m = RandomExplicitMatroid(gen, n);
    const MarginalVector x = RandomPolytopePoint(gen, m, 1.0);
    const std::uint32_t full = (1U << n) - 1;
    const ElemSet b = FromMask(n, gen() & full) & FromMask(n, gen() & full);
    const double alpha = std::uniform_real_distribution<double>(0.0, 0.9)(gen);
    const ExactTables tables(m, x);
    const TAlphaResult t = BruteForceTAlpha(tables, b, alpha);
    if (!b.IsSubsetOf(t.t)) return {false, "T does not contain B"};
    // First bullet recomputed on the oracle.
    const RealizationTable real(x, m.ground_set());
    const double gain = real.Expectation([&](const ElemSet& r) {
      const ElemSet base = b | r;
      return m.Rank(t.t | base) - m.Rank(base);
    });
    const double rhs = (1 - alpha) * (m.Rank(t.t | b) - m.Rank(b));
    if (gain > rhs + 1e-9 || !TAlphaFirstBullet(t).holds) {
      return {false, Fmt("first bullet fails on instance %d", i)};
    }
    worst = std::max(worst, gain - rhs);
    const ElemSet outside = m.ground_set() - t.t;
    for (int k = 0; k < 100; ++k) {
      const ElemSet q = outside & FromMask(n, gen() & full);
      const BulletCheck second = TAlphaSecondBullet(tables, t, q);
      if (!second.holds) {
        return {false, Fmt("second bullet fails on instance %d", i)};
      }
      worst = std::max(worst, second.lhs - second.rhs);
      ++q_checks;
    }
  }
  return {true, Fmt("50 instances, %d Q sets, worst lhs - rhs %.2e", q_checks,
                    worst)};
}

// 8. Selectability floor against the element-last adversary.
Outcome Selectability() {
  struct Instance {
    std::string name;
    MatroidOracle m;
  };
  const std::vector<Instance> instances = {{"U_{1,2}", UniformMatroid(2, 1)},
                                           {"K3", CompleteGraphMatroid(3)}};
  std::string detail;
  bool pass = true;
  for (const auto& [name, m] : instances) {
    const int n = m.universe_size();
    const MarginalVector x = Uniform(n, static_cast<double>(m.FullRank()) / n);
    const SelectabilityReport r = SelectabilityExperiment(
        m, x, kLambda, kEps, 10000, AdversaryKind::kElementLast, 8, g_threads);
    pass = pass && r.floor_pass && r.conforming;
    if (!detail.empty()) detail += "; ";
    detail += Fmt("%s min %.4f vs floor %.3f - %.4f (1/4-eps = %.2f, not "
                  "gated)",
                  name.c_str(), r.min_frequency, r.floor, r.tolerance,
                  r.headline);
  }
  return {pass, detail};
}

// 9. Exhaustive order search never beats element-last.
Outcome AdversarySoundness() {
  std::mt19937_64 gen(9);
  std::vector<MatroidOracle> ms;
  for (const auto& [name, m] : SmallCorpus()) {
    if (m.universe_size() <= 5) ms.push_back(m);
  }
  for (int i = 0; i < 10; ++i) ms.push_back(RandomExplicitMatroid(gen, 5));
  std::int64_t cases = 0;
  for (const MatroidOracle& m : ms) {
    const int n = m.universe_size();
    std::vector<SpanningChain> chains = {
        SpanningChain::Trivial(m.ground_set())};
    for (int k = 0; k < 4; ++k) {
      const ElemSet c1 = FromMask(n, gen() & ((1U << n) - 1));
      const ElemSet c2 = c1 & FromMask(n, gen() & ((1U << n) - 1));
      chains.push_back(SpanningChain({m.ground_set(), c1, c2, m.EmptySet()}));
    }
    for (const SpanningChain& chain : chains) {
      for (const ElemSet& actives : AllSubsets(n)) {
        for (ElementId target : actives) {
          const bool last = RunSelection(
              m, chain, actives, ElementLastOrder(actives, target))
                                .Contains(target);
          bool worst = true;
          ArrivalOrder order = actives.ToVector();
          do {
            worst = worst &&
                    RunSelection(m, chain, actives, order).Contains(target);
          } while (std::next_permutation(order.begin(), order.end()));
          const ArrivalOrder found = WorstCaseOrder(
              m, chain, actives, target, AdversaryKind::kExhaustiveWorst);
          const bool searched =
              RunSelection(m, chain, actives, found).Contains(target);
          if (worst != last || searched != last) {
            return {false, "element-last is not worst"};
          }
          ++cases;
        }
      }
    }
  }
  return {true, Fmt("%lld (chain, actives, target) cases",
                    static_cast<long long>(cases))};
}

// 10. Draw counts against ln(rho) (ln ln rho)^2.
Outcome ScalingAudit() {
  const SampleComplexityAudit a =
      RunScalingAudit({8, 64, 512}, kLambda, kEps, 10);
  std::string detail;
  for (const AuditRow& row : a.rows) {
    detail += Fmt("rho=%d draws=%lld ratio=%.4g; ", row.rho,
                  static_cast<long long>(row.draw_count), row.ratio);
  }
  detail += Fmt("band %.3f (max %.1f)", a.band, a.max_band);
  return {a.pass(), detail};
}

// 11. Reports are byte-identical across reruns and thread counts.
Outcome Determinism() {
  const std::vector<Json> configs = {
      Json::parse(R"({"schema_version":1,"mode":"ocrs",
        "matroid":{"family":"uniform","n":2,"k":1},"marginal":[0.25,0.25],
        "trials":2000,"seed":11})"),
      Json::parse(R"({"schema_version":1,"mode":"verify-spanning",
        "matroid":{"family":"graphic","complete":4},
        "marginal":{"generator":"basis-indicator-scaled"},
        "trials":20,"seed":12})"),
      Json::parse(R"({"schema_version":1,"mode":"verify-inlink",
        "matroid":{"family":"uniform","n":4,"k":2},
        "marginal":{"generator":"custom","values":[0.25,0.25,0.25,0.25]},
        "tau":0.54,"trials":300,"seed":13})"),
  };
  for (const Json& raw : configs) {
    Json threaded = raw;
    threaded["threads"] = 3;
    const std::string a = Run(ParseConfig(raw)).report.dump(2);
    const std::string b = Run(ParseConfig(raw)).report.dump(2);
    const std::string c = Run(ParseConfig(threaded)).report.dump(2);
    if (a != b || a != c) {
      return {false, "report differs for mode " + raw["mode"].get<std::string>()};
    }
  }
  return {true, Fmt("%zu configs x 3 runs (threads 1, 1, 3)", configs.size())};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace ocrs

int main(int argc, char** argv) {
  using namespace ocrs;
  std::set<int> only, skip;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if ((arg == "--only" || arg == "--skip" || arg == "--threads") &&
        i + 1 < argc) {
      const int v = std::atoi(argv[++i]);
      if (arg == "--only") only.insert(v);
      if (arg == "--skip") skip.insert(v);
      if (arg == "--threads") g_threads = v;
    } else {
      std::fprintf(stderr,
                   "usage: %s [--only N]... [--skip N]... [--threads K]\n",
                   argv[0]);
      return 64;
    }
  }
  const std::vector<Criterion> criteria = {
      {1, "matroid axioms", MatroidAxioms},
      {2, "truncation distribution", Truncation},
      {3, "chain well-formedness", ChainShape},
      {4, "chain spanning", Spanning},
      {5, "link progress", Progress},
      {6, "in-link loss", InLinkLoss},
      {7, "T_alpha bullets", TAlpha},
      {8, "selectability floor", Selectability},
      {9, "adversary soundness", AdversarySoundness},
      {10, "sample complexity scaling", ScalingAudit},
      {11, "determinism", Determinism},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    if (!only.empty() && !only.contains(c.id)) continue;
    if (skip.contains(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - start;
    if (!o.pass) ++failures;
    std::printf("%s  %2d  %-26s %s  [%.1f s]\n", o.pass ? "PASS" : "FAIL",
                c.id, c.name, o.detail.c_str(), elapsed.count());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
