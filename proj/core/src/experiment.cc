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

#include "ocrs/experiment.h"

#include <algorithm>
#include <chrono>
#include <limits>
#include <set>
#include <string>
#include <utility>

#include "ocrs/analysis.h"
#include "ocrs/parallel.h"

namespace ocrs {
namespace {

constexpr Mode kAllModes[] = {
    Mode::kChain,          Mode::kOcrs,           Mode::kVerifyInLink,
    Mode::kVerifyProgress, Mode::kVerifySpanning, Mode::kVerifyFreeness,
    Mode::kVerifyTAlpha,   Mode::kAudit,
};

const std::set<std::string>& KnownKeys() {
  static const std::set<std::string> keys = {
      "schema_version", "mode",    "matroid",  "marginal", "lambda",
      "epsilon",        "tau",     "trials",   "seed",     "adversary",
      "overrides",      "rho",     "b",        "alpha",    "q_sets",
      "rhos",           "output",  "threads",  "record_wall_clock"};
  return keys;
}

double GetDouble(const Json& j, const char* key) {
  const Json& v = j.at(key);
  if (!v.is_number()) {
    throw ConfigError(std::string("\"") + key + "\" must be a number");
  }
  return v.get<double>();
}

int GetInt(const Json& j, const char* key) {
  const Json& v = j.at(key);
  if (!v.is_number_integer()) {
    throw ConfigError(std::string("\"") + key + "\" must be an integer");
  }
  return v.get<int>();
}

std::vector<int> GetIntList(const Json& j, const char* key) {
  const Json& v = j.at(key);
  if (!v.is_array()) {
    throw ConfigError(std::string("\"") + key + "\" must be an array");
  }
  std::vector<int> out;
  for (const Json& e : v) {
    if (!e.is_number_integer()) {
      throw ConfigError(std::string("\"") + key + "\" must hold integers");
    }
    out.push_back(e.get<int>());
  }
  return out;
}

std::string GetString(const Json& j, const char* key) {
  const Json& v = j.at(key);
  if (!v.is_string()) {
    throw ConfigError(std::string("\"") + key + "\" must be a string");
  }
  return v.get<std::string>();
}

MarginalSpec ParseMarginal(const Json& j) {
  MarginalSpec spec;
  if (j.is_array()) {
    spec.generator = "custom";
    for (const Json& v : j) {
      if (!v.is_number()) throw ConfigError("marginal values must be numbers");
      spec.values.push_back(v.get<double>());
    }
    return spec;
  }
  if (!j.is_object()) throw ConfigError("\"marginal\" must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key != "generator" && key != "values" && key != "scale") {
      throw ConfigError("unknown marginal field \"" + key + "\"");
    }
  }
  if (j.contains("generator")) spec.generator = GetString(j, "generator");
  if (spec.generator != "uniform-scaled" &&
      spec.generator != "basis-indicator-scaled" &&
      spec.generator != "custom") {
    throw ConfigError("unknown marginal generator \"" + spec.generator + "\"");
  }
  if (j.contains("values")) {
    if (spec.generator != "custom") {
      throw ConfigError("marginal values are only used by \"custom\"");
    }
    const Json& values = j.at("values");
    if (!values.is_array()) throw ConfigError("\"values\" must be an array");
    for (const Json& v : values) {
      if (!v.is_number()) throw ConfigError("marginal values must be numbers");
      spec.values.push_back(v.get<double>());
    }
  } else if (spec.generator == "custom") {
    throw ConfigError("custom marginal needs \"values\"");
  }
  if (j.contains("scale")) {
    spec.scale = GetDouble(j, "scale");
    if (!(*spec.scale >= 0.0 && *spec.scale <= 1.0)) {
      throw ConfigError("marginal scale must lie in [0, 1]");
    }
  }
  return spec;
}

ChainOverrides ParseOverrides(const Json& j) {
  if (!j.is_object()) throw ConfigError("\"overrides\" must be an object");
  ChainOverrides o;
  for (const auto& [key, value] : j.items()) {
    if (key != "q" && key != "eta" && key != "zeta") {
      throw ConfigError("unknown override \"" + key + "\"");
    }
    if (!value.is_number_integer() || value.get<int>() < 1) {
      throw ConfigError("override \"" + key + "\" must be a positive integer");
    }
  }
  if (j.contains("q")) o.q = j.at("q").get<int>();
  if (j.contains("eta")) o.eta = j.at("eta").get<int>();
  if (j.contains("zeta")) o.zeta = j.at("zeta").get<int>();
  return o;
}

Json OverridesToJson(const ChainOverrides& o) {
  Json j = Json::object();
  if (o.q) j["q"] = *o.q;
  if (o.eta) j["eta"] = *o.eta;
  if (o.zeta) j["zeta"] = *o.zeta;
  return j;
}

bool NeedsMatroid(Mode mode) { return mode != Mode::kAudit; }

double MinDensity(const MatroidOracle& m) {
  const std::vector<ElementId> ids = m.ground_set().ToVector();
  const int g = static_cast<int>(ids.size());
  double best = 1.0;
  ElemSet s = m.EmptySet();
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << g); ++mask) {
    s.Clear();
    for (int j = 0; j < g; ++j) {
      if ((mask >> j) & 1U) s.Insert(ids[j]);
    }
    best = std::min(best, static_cast<double>(m.Rank(s)) / s.Size());
  }
  return best;
}

// min_S r(S) / |S| from the descriptor alone; the laminar and partition
// polytopes are cut out by their capacity constraints.
double DescriptorDensity(const Json& d, const MatroidOracle& m) {
  const std::string family = d.at("family").get<std::string>();
  if (family == "uniform") {
    const int n = m.universe_size();
    return n == 0 ? 1.0
                  : static_cast<double>(m.FullRank()) / static_cast<double>(n);
  }
  if (family == "partition" || family == "laminar") {
    const Json& sets = d.at(family == "partition" ? "blocks" : "sets");
    const Json& caps = d.at("capacities");
    double best = 1.0;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (sets[i].empty()) continue;
      best = std::min(best, caps[i].get<double>() /
                                static_cast<double>(sets[i].size()));
    }
    return best;
  }
  throw ConfigError("uniform-scaled marginal for a " + family +
                    " matroid needs at most " +
                    std::to_string(kMaxExactGroundSet) + " elements");
}

Json BaseReport(const ExperimentConfig& config) {
  return Json{{"schema_version", kSchemaVersion},
              {"mode", std::string(ModeName(config.mode))},
              {"seed", config.seed},
              {"config", ConfigToJson(config)}};
}

RunOutcome RunChain(const ExperimentConfig& c, const MatroidOracle& m,
                    const MarginalVector& x) {
  const double tau = c.Tau();
  const ChainTrace plan = PlanChain(m, tau, c.epsilon, c.overrides);
  std::vector<ChainResult> results(c.trials);
  ParallelFor(c.trials, c.threads, [&](std::int64_t t) {
    RngStream rng(c.seed, static_cast<std::uint64_t>(t));
    results[t] = OcrsChain(m, x, tau, c.epsilon, rng, c.overrides);
  });
  Json sizes = Json::array();
  int empty_last = 0;
  bool within = true;
  std::int64_t draws = 0;
  for (const ChainResult& r : results) {
    Json row = Json::array();
    for (const ElemSet& link : r.chain.links()) row.push_back(link.Size());
    sizes.push_back(std::move(row));
    if (r.chain[r.trace.zeta].Empty()) ++empty_last;
    within = within && r.trace.draw_count <= r.trace.DrawBound();
    draws += r.trace.draw_count;
  }
  RunOutcome out;
  out.passed = within;
  out.report = BaseReport(c);
  out.report["conforming"] = plan.conforming;
  out.report["result"] = Json{
      {"tau", tau},
      {"rho", plan.rho},
      {"zeta", plan.zeta},
      {"eta", plan.eta},
      {"q", plan.q},
      {"threshold", plan.threshold},
      {"last_link_empty_rate", static_cast<double>(empty_last) / c.trials},
      {"draw_count", draws},
      {"draw_bound", plan.DrawBound() * c.trials},
      {"all_within_bound", within},
      {"link_sizes", std::move(sizes)},
      {"example_chain", ToJson(results.front().chain)},
      {"example_trace", ToJson(results.front().trace)}};
  return out;
}

RunOutcome RunOcrs(const ExperimentConfig& c, const MatroidOracle& m,
                   const MarginalVector& x) {
  const SelectabilityReport r =
      SelectabilityExperiment(m, x, c.lambda, c.epsilon, c.trials,
                              c.adversary, c.seed, c.threads, c.overrides);
  RunOutcome out;
  out.passed = r.floor_pass;
  out.report = BaseReport(c);
  out.report["conforming"] = r.conforming;
  out.report["result"] = ToJson(r);
  out.csv = SelectabilityCsv(r);
  return out;
}

RunOutcome FromVerdict(const ExperimentConfig& c, const Verdict& v,
                       Json result) {
  RunOutcome out;
  out.passed = v.pass;
  out.report = BaseReport(c);
  out.report["conforming"] = v.conforming;
  out.report["result"] = std::move(result);
  return out;
}

RunOutcome RunTAlpha(const ExperimentConfig& c, const MatroidOracle& m,
                     const MarginalVector& x) {
  const ExactTables tables(m, x);
  ElemSet b = m.EmptySet();
  for (ElementId e : c.b) {
    if (e < 0 || e >= m.universe_size()) {
      throw ConfigError("B element " + std::to_string(e) + " out of range");
    }
    b.Insert(e);
  }
  const double alpha = c.alpha.value_or(TAlphaFromTau(c.Tau(), c.epsilon));
  const TAlphaResult result = BruteForceTAlpha(tables, b, alpha);
  const BulletCheck first = TAlphaFirstBullet(result);

  const ElemSet outside = m.ground_set() - result.t;
  RngStream rng(c.seed, 0);
  int holds = 0;
  double worst_slack = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < c.q_sets; ++k) {
    ElemSet q = m.EmptySet();
    for (ElementId e : outside) {
      if (rng.Bernoulli(0.5)) q.Insert(e);
    }
    const BulletCheck second = TAlphaSecondBullet(tables, result, q);
    if (second.holds) ++holds;
    worst_slack = std::max(worst_slack, second.lhs - second.rhs);
  }
  RunOutcome out;
  out.passed = first.holds && holds == c.q_sets;
  out.report = BaseReport(c);
  out.report["conforming"] = true;
  out.report["result"] = Json{
      {"t_alpha", ToJson(result)},
      {"first_bullet", ToJson(first)},
      {"second_bullet",
       Json{{"q_sets", c.q_sets},
            {"holds", holds},
            {"worst_excess", c.q_sets > 0 ? Json(worst_slack) : Json(nullptr)}}},
      {"pass", out.passed}};
  return out;
}

RunOutcome Dispatch(const ExperimentConfig& c) {
  if (c.mode == Mode::kAudit) {
    const SampleComplexityAudit audit =
        RunScalingAudit(c.rhos, c.lambda, c.epsilon, c.seed, c.overrides);
    RunOutcome out;
    out.passed = audit.pass();
    out.report = BaseReport(c);
    out.report["conforming"] = audit.all_conforming;
    out.report["result"] = ToJson(audit);
    return out;
  }

  const MatroidOracle m = MatroidFromJson(c.matroid);
  const MarginalVector x =
      GenerateMarginal(c.marginal, c.matroid, m, c.MarginalScale());
  RunOutcome out;
  switch (c.mode) {
    case Mode::kChain:
      out = RunChain(c, m, x);
      break;
    case Mode::kOcrs:
      out = RunOcrs(c, m, x);
      break;
    case Mode::kVerifyInLink: {
      const int rho = c.rho.value_or(std::max(m.FullRank(), 3));
      const InLinkLossReport r =
          VerifyInLinkLoss(m, x, rho, c.Tau(), c.epsilon, c.trials, c.seed,
                           c.threads, {}, c.overrides.q, c.overrides.eta);
      out = FromVerdict(c, r.verdict, ToJson(r));
      break;
    }
    case Mode::kVerifyProgress: {
      const ProgressReport r =
          VerifyProgress(m, x, c.lambda, c.Tau(), c.epsilon, c.trials, c.seed,
                         c.threads, c.overrides.q, c.overrides.eta);
      out = FromVerdict(c, r.verdict, ToJson(r));
      break;
    }
    case Mode::kVerifySpanning: {
      const SpanningReport r = VerifySpanning(m, x, c.lambda, c.epsilon,
                                              c.trials, c.seed, c.threads,
                                              c.overrides);
      out = FromVerdict(c, r.verdict, ToJson(r));
      break;
    }
    case Mode::kVerifyFreeness: {
      const FreenessReport r = VerifyFreenessLikely(
          m, x, c.lambda, c.epsilon, c.trials, c.seed, c.threads, c.overrides);
      out = FromVerdict(c, r.verdict, ToJson(r));
      break;
    }
    case Mode::kVerifyTAlpha:
      out = RunTAlpha(c, m, x);
      break;
    case Mode::kAudit:
      break;
  }
  out.report["matroid"] = m.Describe();
  out.report["x"] = ToJson(x);
  out.report["pass"] = out.passed;
  return out;
}

}  // namespace

std::string_view ModeName(Mode mode) {
  switch (mode) {
    case Mode::kChain:
      return "chain";
    case Mode::kOcrs:
      return "ocrs";
    case Mode::kVerifyInLink:
      return "verify-inlink";
    case Mode::kVerifyProgress:
      return "verify-progress";
    case Mode::kVerifySpanning:
      return "verify-spanning";
    case Mode::kVerifyFreeness:
      return "verify-freeness";
    case Mode::kVerifyTAlpha:
      return "verify-talpha";
    case Mode::kAudit:
      return "audit";
  }
  return "unknown";
}

std::optional<Mode> ParseMode(std::string_view name) {
  for (Mode mode : kAllModes) {
    if (ModeName(mode) == name) return mode;
  }
  return std::nullopt;
}

double ExperimentConfig::MarginalScale() const {
  if (marginal.scale) return *marginal.scale;
  return mode == Mode::kOcrs ? 1.0 : lambda;
}

ExperimentConfig ParseConfig(const Json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!KnownKeys().contains(key)) {
      throw ConfigError("unknown config field \"" + key + "\"");
    }
  }
  ExperimentConfig c;
  try {
    if (!j.contains("schema_version")) {
      throw ConfigError("missing \"schema_version\"");
    }
    c.schema_version = GetInt(j, "schema_version");
    if (c.schema_version != kSchemaVersion) {
      throw ConfigError("unsupported schema_version " +
                        std::to_string(c.schema_version));
    }
    if (!j.contains("mode")) throw ConfigError("missing \"mode\"");
    const std::string mode = GetString(j, "mode");
    const auto parsed = ParseMode(mode);
    if (!parsed) throw ConfigError("unknown mode \"" + mode + "\"");
    c.mode = *parsed;

    if (j.contains("matroid")) {
      c.matroid = j.at("matroid");
    } else if (NeedsMatroid(c.mode)) {
      throw ConfigError("missing \"matroid\"");
    }
    if (j.contains("marginal")) c.marginal = ParseMarginal(j.at("marginal"));
    if (j.contains("lambda")) c.lambda = GetDouble(j, "lambda");
    if (j.contains("epsilon")) c.epsilon = GetDouble(j, "epsilon");
    if (j.contains("tau")) c.tau = GetDouble(j, "tau");
    if (j.contains("trials")) c.trials = GetInt(j, "trials");
    if (j.contains("seed")) {
      const Json& s = j.at("seed");
      if (!s.is_number_unsigned() &&
          !(s.is_number_integer() && s.get<std::int64_t>() >= 0)) {
        throw ConfigError("\"seed\" must be a non-negative integer");
      }
      c.seed = s.get<std::uint64_t>();
    }
    if (j.contains("adversary")) {
      const std::string name = GetString(j, "adversary");
      const auto kind = ParseAdversary(name);
      if (!kind) throw ConfigError("unknown adversary \"" + name + "\"");
      c.adversary = *kind;
    }
    if (j.contains("overrides")) c.overrides = ParseOverrides(j.at("overrides"));
    if (j.contains("rho")) c.rho = GetInt(j, "rho");
    if (j.contains("b")) c.b = GetIntList(j, "b");
    if (j.contains("alpha")) c.alpha = GetDouble(j, "alpha");
    if (j.contains("q_sets")) c.q_sets = GetInt(j, "q_sets");
    if (j.contains("rhos")) c.rhos = GetIntList(j, "rhos");
    if (j.contains("output")) c.output = GetString(j, "output");
    if (j.contains("threads")) c.threads = GetInt(j, "threads");
    if (j.contains("record_wall_clock")) {
      if (!j.at("record_wall_clock").is_boolean()) {
        throw ConfigError("\"record_wall_clock\" must be a boolean");
      }
      c.record_wall_clock = j.at("record_wall_clock").get<bool>();
    }
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }

  if (c.trials < 1) throw ConfigError("\"trials\" must be at least 1");
  if (c.q_sets < 0) throw ConfigError("\"q_sets\" must be non-negative");
  if (!(c.epsilon > 0.0 && c.epsilon < 1.0)) {
    throw ConfigError("\"epsilon\" must lie in (0, 1)");
  }
  if (!(c.lambda > 0.0 && c.lambda <= 1.0)) {
    throw ConfigError("\"lambda\" must lie in (0, 1]");
  }
  if (c.mode != Mode::kVerifyTAlpha && c.mode != Mode::kVerifyInLink &&
      c.lambda > 1.0 - 4.0 * c.epsilon) {
    throw ConfigError("\"lambda\" must not exceed 1 - 4 epsilon");
  }
  return c;
}

Json ConfigToJson(const ExperimentConfig& c) {
  Json marginal{{"generator", c.marginal.generator},
                {"scale", c.MarginalScale()}};
  if (c.marginal.generator == "custom") marginal["values"] = c.marginal.values;
  Json j{{"schema_version", c.schema_version},
         {"mode", std::string(ModeName(c.mode))},
         {"marginal", std::move(marginal)},
         {"lambda", c.lambda},
         {"epsilon", c.epsilon},
         {"tau", c.Tau()},
         {"trials", c.trials},
         {"seed", c.seed},
         {"adversary", std::string(AdversaryName(c.adversary))},
         {"overrides", OverridesToJson(c.overrides)}};
  if (!c.matroid.is_null()) j["matroid"] = c.matroid;
  if (c.mode == Mode::kVerifyInLink && c.rho) j["rho"] = *c.rho;
  if (c.mode == Mode::kVerifyTAlpha) {
    j["b"] = c.b;
    if (c.alpha) j["alpha"] = *c.alpha;
    j["q_sets"] = c.q_sets;
  }
  if (c.mode == Mode::kAudit) j["rhos"] = c.rhos;
  return j;
}

MarginalVector GenerateMarginal(const MarginalSpec& spec,
                                const Json& descriptor, const MatroidOracle& m,
                                double scale) {
  const int n = m.universe_size();
  const bool small = m.ground_set().Size() <= kMaxExactGroundSet;
  if (spec.generator == "custom") {
    if (static_cast<int>(spec.values.size()) != n) {
      throw ConfigError("custom marginal has " +
                        std::to_string(spec.values.size()) +
                        " entries for a ground set of " + std::to_string(n));
    }
    if (!small) {
      throw ConfigError("custom marginals need at most " +
                        std::to_string(kMaxExactGroundSet) +
                        " elements for the polytope check");
    }
    MarginalVector x;
    try {
      x = MarginalVector(spec.values);
    } catch (const std::domain_error& e) {
      throw ConfigError(e.what());
    }
    if (!InScaledPolytope(m, x, scale)) {
      throw ConfigError("custom marginal is not in " + std::to_string(scale) +
                        " * P_M");
    }
    return x;
  }
  std::vector<double> values(n, 0.0);
  if (spec.generator == "basis-indicator-scaled") {
    ElemSet basis = m.EmptySet();
    for (ElementId e : m.ground_set()) {
      basis.Insert(e);
      if (!m.IsIndependent(basis)) basis.Erase(e);
    }
    for (ElementId e : basis) values[e] = scale;
    return MarginalVector(std::move(values));
  }
  if (spec.generator == "uniform-scaled") {
    const double density =
        small ? MinDensity(m) : DescriptorDensity(descriptor, m);
    for (ElementId e : m.ground_set()) values[e] = scale * density;
    return MarginalVector(std::move(values));
  }
  throw ConfigError("unknown marginal generator \"" + spec.generator + "\"");
}

RunOutcome Run(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  RunOutcome out;
  try {
    out = Dispatch(config);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  } catch (const std::length_error& e) {
    throw ConfigError(e.what());
  }
  if (config.mode == Mode::kAudit) out.report["pass"] = out.passed;
  if (config.record_wall_clock) {
    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - start;
    out.report["wall_clock_seconds"] = elapsed.count();
  }
  return out;
}

}  // namespace ocrs
