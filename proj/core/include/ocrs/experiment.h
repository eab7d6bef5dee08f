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

// Experiment configuration, marginal generation and mode dispatch.
//
// A report is a pure function of the configuration: the worker count and the
// output path are not echoed, and wall-clock time is left out unless asked
// for, so repeated runs produce byte-identical JSON.

#ifndef OCRS_EXPERIMENT_H_
#define OCRS_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ocrs/chain_builder.h"
#include "ocrs/io.h"
#include "ocrs/matroid.h"
#include "ocrs/ocrs_engine.h"
#include "ocrs/stochastic.h"

namespace ocrs {

inline constexpr int kSchemaVersion = 1;

// Any problem with the configuration or its derived inputs.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Mode {
  kChain,
  kOcrs,
  kVerifyInLink,
  kVerifyProgress,
  kVerifySpanning,
  kVerifyFreeness,
  kVerifyTAlpha,
  kAudit,
};

std::string_view ModeName(Mode mode);
std::optional<Mode> ParseMode(std::string_view name);

struct MarginalSpec {
  // "uniform-scaled", "basis-indicator-scaled" or "custom".
  std::string generator = "uniform-scaled";
  std::vector<double> values;  // custom only
  // Defaults to lambda, or to 1 in ocrs mode where the scheme scales by
  // lambda itself.
  std::optional<double> scale;
};

struct ExperimentConfig {
  int schema_version = kSchemaVersion;
  Json matroid;
  MarginalSpec marginal;
  double lambda = 0.5;
  double epsilon = 0.05;
  // Defaults to lambda + 4 eps.
  std::optional<double> tau;
  int trials = 100;
  std::uint64_t seed = 1;
  Mode mode = Mode::kChain;
  AdversaryKind adversary = AdversaryKind::kElementLast;
  ChainOverrides overrides;
  // verify-inlink: defaults to max(rank, 3).
  std::optional<int> rho;
  // verify-talpha: B, alpha (default tau (1 - 2 eps)), random Q count.
  std::vector<ElementId> b;
  std::optional<double> alpha;
  int q_sets = 100;
  // audit: ranks of the uniform matroids U_{rho, 2 rho}.
  std::vector<int> rhos = {8, 64, 512};
  std::string output;
  int threads = 1;
  bool record_wall_clock = false;

  double Tau() const { return tau.value_or(lambda + 4.0 * epsilon); }
  double MarginalScale() const;
};

// Throws ConfigError on unknown modes, wrong types or out-of-range values.
ExperimentConfig ParseConfig(const Json& j);
// Echo of every field that affects results.
Json ConfigToJson(const ExperimentConfig& config);

// x in scale * P_M for the generators; custom vectors are checked against
// scale * P_M when the ground set has at most kMaxExactGroundSet elements.
// uniform-scaled sets every coordinate to scale * min_S r(S) / |S| (closed
// forms for uniform, partition and laminar families beyond that size);
// basis-indicator-scaled puts scale on the greedy basis in id order.
MarginalVector GenerateMarginal(const MarginalSpec& spec,
                                const Json& descriptor, const MatroidOracle& m,
                                double scale);

struct RunOutcome {
  Json report;
  bool passed = true;
  // Selectability table for ocrs mode, empty otherwise.
  std::string csv;
};

// Dispatches on config.mode. Throws ConfigError for invalid inputs.
RunOutcome Run(const ExperimentConfig& config);

}  // namespace ocrs

#endif  // OCRS_EXPERIMENT_H_
