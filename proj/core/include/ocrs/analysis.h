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

// Executable checks of the guarantees around the chain builder: good/bad
// classification, per-link loss, expected rank of a link, spanning and
// freeness rates, the T_alpha(B) extension, and the sample-count audit.
//
// Every Monte Carlo verdict compares a sample mean against its bound with a
// budget of z standard errors and reports the numbers it used.

#ifndef OCRS_ANALYSIS_H_
#define OCRS_ANALYSIS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ocrs/chain_builder.h"
#include "ocrs/elem_set.h"
#include "ocrs/matroid.h"
#include "ocrs/rng.h"
#include "ocrs/stochastic.h"

namespace ocrs {

enum class GoodBad { kGood, kBad, kMember };

std::string_view GoodBadName(GoodBad status);

struct GoodBadVerdict {
  ElementId element = 0;
  GoodBad status = GoodBad::kGood;
  // Pr[e in span(A + R(x))]; 1 for members.
  double probability = 1.0;
};

// (A, tau) classification of e by exact enumeration over D(x).
GoodBadVerdict ClassifyElementExact(const MatroidOracle& m,
                                    const MarginalVector& x, const ElemSet& a,
                                    double tau, ElementId e);
// The same with the probability estimated from `samples` draws.
GoodBadVerdict ClassifyElementMonteCarlo(const MatroidOracle& m,
                                         const MarginalVector& x,
                                         const ElemSet& a, double tau,
                                         ElementId e, int samples,
                                         RngStream& rng);

// Common fields of a statistical verdict.
struct Verdict {
  std::string check;
  bool pass = true;
  double measured = 0.0;
  double bound = 0.0;
  // Allowed excess of measured over (or under) the bound.
  double tolerance = 0.0;
  double z = 3.0;
  int trials = 0;
  std::uint64_t seed = 0;
  bool conforming = true;
  std::string detail;
};

// Builds one link from (M, x, params). Must be safe to call concurrently.
using LinkBuilder = std::function<ElemSet(
    const MatroidOracle&, const MarginalVector&, const LinkParams&,
    RngStream&)>;

LinkBuilder SampleLinkBuilder();
// Never adds an element; for calibrating the loss check.
LinkBuilder EmptyLinkBuilder();

struct InLinkElementStat {
  ElementId element = 0;
  double pr_bad = 0.0;
  double pr_good = 0.0;
  // Mean and standard error of 1[bad] - eps * 1[good].
  double excess = 0.0;
  double std_error = 0.0;
  bool pass = true;
};

struct InLinkLossReport {
  Verdict verdict;  // measured = worst excess - bound, over elements
  std::vector<InLinkElementStat> elements;
  int rho = 0;
  double link_threshold = 0.0;
  int q = 0;
  int eta = 0;
};

// Runs the link builder `trials` times with threshold (1 - eps) tau and
// checks, for every element, Pr[bad] <= eps Pr[good] + 2 eps^3 / ln(rho)
// within BonferroniZ(|N|) standard errors of the per-trial difference.
// Classification is exact (ground set of at most kMaxExactGroundSet).
// Requires rho >= 3, tau in (0, 1] and eps in (0, tau].
InLinkLossReport VerifyInLinkLoss(const MatroidOracle& m,
                                  const MarginalVector& x, int rho, double tau,
                                  double epsilon, int trials,
                                  std::uint64_t seed, int threads = 1,
                                  const LinkBuilder& builder = {},
                                  std::optional<int> q_override = {},
                                  std::optional<int> eta_override = {});

// (1 + lambda - (1 - 3 eps) tau) rank(M).
double ProgressBound(double lambda, double tau, double epsilon, int rank);

struct ProgressReport {
  Verdict verdict;  // measured = mean r(A)
  double std_error = 0.0;
  int rho = 0;
};

// Mean rank of SingleOcrsLink(M, x, rho, (1 - eps) tau, eps) over `trials`
// runs against ProgressBound + 3 standard errors. Requires x in lambda P_M
// (checked up to kMaxExactGroundSet elements), tau in (lambda, 1] and
// eps in (0, 1/20].
ProgressReport VerifyProgress(const MatroidOracle& m, const MarginalVector& x,
                              double lambda, double tau, double epsilon,
                              int trials, std::uint64_t seed, int threads = 1,
                              std::optional<int> q_override = {},
                              std::optional<int> eta_override = {});

struct SpanningReport {
  Verdict verdict;  // measured = fraction of chains with C_zeta = {}
  int empty_count = 0;
  double mean_nonempty_links = 0.0;
  std::int64_t draw_count = 0;
  std::int64_t draw_bound = 0;
};

// Fraction of OcrsChain(M, x, lambda + 4 eps, eps) runs whose link C_zeta is
// empty, against 1 - eps minus 3 standard errors of a proportion at 1 - eps.
// Requires eps in (0, 1/20], lambda in (0, 1 - 4 eps] and x in lambda P_M.
SpanningReport VerifySpanning(const MatroidOracle& m, const MarginalVector& x,
                              double lambda, double epsilon, int trials,
                              std::uint64_t seed, int threads = 1,
                              const ChainOverrides& overrides = {});

struct FreenessElementStat {
  ElementId element = 0;
  int outside_count = 0;    // chains with e not in C_zeta
  int free_count = 0;       // of those, freeness >= 1 - lambda - 4 eps
  double pr_outside = 0.0;  // outside_count / trials
  double conditional = 1.0;
  double bound = 0.0;  // 1 - eps - 2 eps / pr_outside
  double tolerance = 0.0;
  bool pass = true;
};

struct FreenessReport {
  Verdict verdict;  // measured = worst conditional - bound
  std::vector<FreenessElementStat> elements;
  double freeness_level = 0.0;  // 1 - lambda - 4 eps
};

// Per element, Pr[freeness >= 1 - lambda - 4 eps | e not in C_zeta] over
// chains from OcrsChain(M, x, lambda + 4 eps, eps), with exact freeness.
// Requires eps in (0, 1/20], lambda in (0, 1 - 4 eps] and x in lambda P_M.
FreenessReport VerifyFreenessLikely(const MatroidOracle& m,
                                    const MarginalVector& x, double lambda,
                                    double epsilon, int trials,
                                    std::uint64_t seed, int threads = 1,
                                    const ChainOverrides& overrides = {});

inline constexpr int kMaxTAlphaGroundSet = 12;

// Rank table over every subset of a small ground set together with all
// positive-probability realizations of R(x), in local bit masks (bit j is the
// j-th smallest ground element).
class ExactTables {
 public:
  // Throws SizeLimitError above kMaxTAlphaGroundSet elements.
  ExactTables(const MatroidOracle& m, const MarginalVector& x);

  int size() const { return static_cast<int>(ids_.size()); }
  const std::vector<ElementId>& ids() const { return ids_; }
  std::uint32_t full() const { return (std::uint32_t{1} << size()) - 1; }
  int Rank(std::uint32_t mask) const { return rank_[mask]; }
  std::uint32_t Span(std::uint32_t mask) const;
  std::uint32_t ToMask(const ElemSet& s) const;
  ElemSet ToSet(std::uint32_t mask) const;
  const std::vector<std::pair<std::uint32_t, double>>& realizations() const {
    return realizations_;
  }

 private:
  int universe_size_;
  std::vector<ElementId> ids_;
  std::vector<int> local_;
  std::vector<int> rank_;
  std::vector<std::pair<std::uint32_t, double>> realizations_;
};

// tau (1 - 2 eps).
inline double TAlphaFromTau(double tau, double epsilon) {
  return tau * (1.0 - 2.0 * epsilon);
}

struct TAlphaResult {
  ElemSet b;
  double alpha = 0.0;
  ElemSet t;
  double objective = 0.0;
  int rank_gain = 0;            // r(T | B)
  double expected_gain = 0.0;   // E[r(T | B + R)]
};

// argmax over B <= T' <= N of r(T' | B) - E[r(T' | B + R)] / (1 - alpha),
// ties within 1e-12 going to the smaller set and then the lexicographically
// smaller one. Requires alpha in [0, 1) and B within the ground set.
TAlphaResult BruteForceTAlpha(const ExactTables& tables, const ElemSet& b,
                              double alpha);
TAlphaResult BruteForceTAlpha(const MatroidOracle& m, const MarginalVector& x,
                              const ElemSet& b, double alpha);

struct BulletCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;  // lhs <= rhs + 1e-9
};

// E[r(T | B + R)] <= (1 - alpha) r(T | B).
BulletCheck TAlphaFirstBullet(const TAlphaResult& result);
// E[r(Q & span(T + R) | T)] <= alpha r(Q | T), for Q within N - T.
BulletCheck TAlphaSecondBullet(const ExactTables& tables,
                               const TAlphaResult& result, const ElemSet& q);

struct AuditRow {
  int rho = 0;
  int zeta = 0;
  int eta = 0;
  int q = 0;
  std::int64_t draw_count = 0;
  std::int64_t draw_bound = 0;  // zeta * eta * q
  double reference = 0.0;       // ln(rho) (ln ln rho)^2
  double ratio = 0.0;           // draw_count / reference
  bool within_bound = true;
  bool conforming = true;
};

struct SampleComplexityAudit {
  std::vector<AuditRow> rows;
  double band = 1.0;  // max ratio / min ratio
  double max_band = 4.0;
  bool all_within_bound = true;
  bool all_conforming = true;
  bool band_pass = true;

  bool pass() const { return all_within_bound && all_conforming && band_pass; }
};

AuditRow MakeAuditRow(const ChainTrace& trace);
SampleComplexityAudit AuditTraces(const std::vector<ChainTrace>& traces,
                                  double max_band = 4.0);

// One chain per rho on U_{rho, 2 rho} with x_e = lambda / 2 (so x is in
// lambda P_M), tau = lambda + 4 eps. Chain for rho uses RngStream(seed, i)
// for the i-th entry of rhos.
SampleComplexityAudit RunScalingAudit(const std::vector<int>& rhos,
                                      double lambda, double epsilon,
                                      std::uint64_t seed,
                                      const ChainOverrides& overrides = {});

}  // namespace ocrs

#endif  // OCRS_ANALYSIS_H_
