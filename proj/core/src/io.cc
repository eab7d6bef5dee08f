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

#include "ocrs/io.h"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ocrs {
namespace {

const Json& Field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw std::invalid_argument(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

int IntField(const Json& j, const char* key) {
  const Json& v = Field(j, key);
  if (!v.is_number_integer()) {
    throw std::invalid_argument(std::string("field \"") + key +
                                "\" must be an integer");
  }
  return v.get<int>();
}

std::vector<int> IntList(const Json& j, const char* what) {
  if (!j.is_array()) {
    throw std::invalid_argument(std::string(what) + " must be an array");
  }
  std::vector<int> out;
  for (const Json& v : j) {
    if (!v.is_number_integer()) {
      throw std::invalid_argument(std::string(what) +
                                  " must hold integers only");
    }
    out.push_back(v.get<int>());
  }
  return out;
}

std::vector<std::vector<int>> IntLists(const Json& j, const char* what) {
  if (!j.is_array()) {
    throw std::invalid_argument(std::string(what) + " must be an array");
  }
  std::vector<std::vector<int>> out;
  for (const Json& v : j) out.push_back(IntList(v, what));
  return out;
}

// Infinite or NaN doubles have no JSON form; they are written as null.
Json Number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

MatroidOracle MatroidFromJson(const Json& d) {
  const Json& family_field = Field(d, "family");
  if (!family_field.is_string()) {
    throw std::invalid_argument("\"family\" must be a string");
  }
  const std::string family = family_field.get<std::string>();
  if (family == "uniform") {
    return UniformMatroid(IntField(d, "n"), IntField(d, "k"));
  }
  if (family == "partition") {
    auto blocks = IntLists(Field(d, "blocks"), "blocks");
    int n = 0;
    if (d.contains("n")) {
      n = IntField(d, "n");
    } else {
      for (const auto& b : blocks) n += static_cast<int>(b.size());
    }
    return PartitionMatroid(n, std::move(blocks),
                            IntList(Field(d, "capacities"), "capacities"));
  }
  if (family == "graphic") {
    if (d.contains("complete")) return CompleteGraphMatroid(IntField(d, "complete"));
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : IntLists(Field(d, "edges"), "edges")) {
      if (e.size() != 2) {
        throw std::invalid_argument("each edge must list two endpoints");
      }
      edges.emplace_back(e[0], e[1]);
    }
    return GraphicMatroid(IntField(d, "vertices"), std::move(edges));
  }
  if (family == "laminar") {
    return LaminarMatroid(IntField(d, "n"),
                          IntLists(Field(d, "sets"), "sets"),
                          IntList(Field(d, "capacities"), "capacities"));
  }
  if (family == "explicit") {
    const int n = IntField(d, "n");
    std::vector<ElemSet> sets;
    for (const Json& s : Field(d, "independent_sets")) {
      sets.push_back(ElemSetFromJson(s, n));
    }
    return ExplicitMatroid(n, std::move(sets));
  }
  throw std::invalid_argument("unknown matroid family \"" + family + "\"");
}

Json ToJson(const ElemSet& s) { return Json(s.ToVector()); }

ElemSet ElemSetFromJson(const Json& j, int n) {
  ElemSet s(n);
  for (int e : IntList(j, "element set")) {
    if (e < 0 || e >= n) {
      throw std::invalid_argument("element " + std::to_string(e) +
                                  " outside [0, " + std::to_string(n) + ")");
    }
    if (s.Contains(e)) {
      throw std::invalid_argument("duplicate element " + std::to_string(e));
    }
    s.Insert(e);
  }
  return s;
}

Json ToJson(const MarginalVector& x) { return Json(x.values()); }

MarginalVector MarginalFromJson(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("x must be an array");
  std::vector<double> values;
  for (const Json& v : j) {
    if (!v.is_number()) throw std::invalid_argument("x must hold numbers");
    values.push_back(v.get<double>());
  }
  try {
    return MarginalVector(std::move(values));
  } catch (const std::domain_error& e) {
    throw std::invalid_argument(e.what());
  }
}

Json ToJson(const SpanningChain& chain) {
  Json out = Json::array();
  for (const ElemSet& link : chain.links()) out.push_back(ToJson(link));
  return out;
}

SpanningChain ChainFromJson(const Json& j, int n) {
  if (!j.is_array()) throw std::invalid_argument("chain must be an array");
  std::vector<ElemSet> links;
  for (const Json& link : j) links.push_back(ElemSetFromJson(link, n));
  return SpanningChain(std::move(links));
}

Json ToJson(const LinkTrace& trace) {
  return Json{{"h_bar", trace.h_bar},
              {"q", trace.q},
              {"draw_count", trace.draw_count},
              {"size", trace.iterates.empty() ? 0 : trace.iterates.back().Size()}};
}

Json ToJson(const ChainTrace& trace) {
  Json links = Json::array();
  for (const LinkTrace& l : trace.links) links.push_back(ToJson(l));
  return Json{{"rho", trace.rho},
              {"zeta", trace.zeta},
              {"eta", trace.eta},
              {"q", trace.q},
              {"threshold", trace.threshold},
              {"conforming", trace.conforming},
              {"draw_count", trace.draw_count},
              {"draw_bound", trace.DrawBound()},
              {"links", std::move(links)}};
}

Json ToJson(const Verdict& v) {
  return Json{{"check", v.check},
              {"pass", v.pass},
              {"measured", Number(v.measured)},
              {"bound", Number(v.bound)},
              {"tolerance", Number(v.tolerance)},
              {"z", v.z},
              {"trials", v.trials},
              {"seed", v.seed},
              {"conforming", v.conforming},
              {"detail", v.detail}};
}

Json ToJson(const InLinkLossReport& r) {
  Json elements = Json::array();
  for (const InLinkElementStat& s : r.elements) {
    elements.push_back(Json{{"element", s.element},
                            {"pr_bad", s.pr_bad},
                            {"pr_good", s.pr_good},
                            {"excess", s.excess},
                            {"std_error", s.std_error},
                            {"pass", s.pass}});
  }
  return Json{{"verdict", ToJson(r.verdict)},
              {"rho", r.rho},
              {"link_threshold", r.link_threshold},
              {"q", r.q},
              {"eta", r.eta},
              {"elements", std::move(elements)}};
}

Json ToJson(const ProgressReport& r) {
  return Json{{"verdict", ToJson(r.verdict)},
              {"std_error", r.std_error},
              {"rho", r.rho}};
}

Json ToJson(const SpanningReport& r) {
  return Json{{"verdict", ToJson(r.verdict)},
              {"empty_count", r.empty_count},
              {"mean_nonempty_links", r.mean_nonempty_links},
              {"draw_count", r.draw_count},
              {"draw_bound", r.draw_bound}};
}

Json ToJson(const FreenessReport& r) {
  Json elements = Json::array();
  for (const FreenessElementStat& s : r.elements) {
    elements.push_back(Json{{"element", s.element},
                            {"outside_count", s.outside_count},
                            {"free_count", s.free_count},
                            {"pr_outside", s.pr_outside},
                            {"conditional", s.conditional},
                            {"bound", Number(s.bound)},
                            {"tolerance", s.tolerance},
                            {"pass", s.pass}});
  }
  return Json{{"verdict", ToJson(r.verdict)},
              {"freeness_level", r.freeness_level},
              {"elements", std::move(elements)}};
}

Json ToJson(const TAlphaResult& r) {
  return Json{{"b", ToJson(r.b)},
              {"alpha", r.alpha},
              {"t", ToJson(r.t)},
              {"objective", r.objective},
              {"rank_gain", r.rank_gain},
              {"expected_gain", r.expected_gain}};
}

Json ToJson(const BulletCheck& b) {
  return Json{{"lhs", b.lhs}, {"rhs", b.rhs}, {"holds", b.holds}};
}

Json ToJson(const SampleComplexityAudit& a) {
  Json rows = Json::array();
  for (const AuditRow& row : a.rows) {
    rows.push_back(Json{{"rho", row.rho},
                        {"zeta", row.zeta},
                        {"eta", row.eta},
                        {"q", row.q},
                        {"draw_count", row.draw_count},
                        {"draw_bound", row.draw_bound},
                        {"reference", row.reference},
                        {"ratio", row.ratio},
                        {"within_bound", row.within_bound},
                        {"conforming", row.conforming}});
  }
  return Json{{"rows", std::move(rows)},
              {"band", Number(a.band)},
              {"max_band", a.max_band},
              {"all_within_bound", a.all_within_bound},
              {"all_conforming", a.all_conforming},
              {"band_pass", a.band_pass},
              {"pass", a.pass()}};
}

Json ToJson(const SelectabilityReport& r) {
  Json elements = Json::array();
  for (const ElementSelectability& e : r.elements) {
    elements.push_back(Json{{"element", e.element},
                            {"activations", e.activations},
                            {"selections", e.selections},
                            {"frequency", e.frequency},
                            {"ci_low", e.ci.low},
                            {"ci_high", e.ci.high}});
  }
  return Json{{"lambda", r.lambda},
              {"epsilon", r.epsilon},
              {"chain_tau", r.chain_tau},
              {"adversary", std::string(AdversaryName(r.adversary))},
              {"trials", r.trials},
              {"seed", r.seed},
              {"elements", std::move(elements)},
              {"min_element", r.min_element},
              {"min_frequency", r.min_frequency},
              {"floor", r.floor},
              {"tolerance", r.tolerance},
              {"floor_pass", r.floor_pass},
              {"headline", r.headline},
              {"last_link_empty_rate", r.last_link_empty_rate},
              {"mean_chain_length", r.mean_chain_length},
              {"draw_count", r.draw_count},
              {"draw_bound", r.draw_bound},
              {"conforming", r.conforming}};
}

std::string SelectabilityCsv(const SelectabilityReport& r) {
  std::ostringstream out;
  out.precision(17);
  out << "element_id,activations,selections,frequency,ci_low,ci_high\n";
  for (const ElementSelectability& e : r.elements) {
    out << e.element << ',' << e.activations << ',' << e.selections << ','
        << e.frequency << ',' << e.ci.low << ',' << e.ci.high << '\n';
  }
  return out.str();
}

}  // namespace ocrs
