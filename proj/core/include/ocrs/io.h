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

// JSON and CSV forms of the library's values. Field names match the files in
// schema/.

#ifndef OCRS_IO_H_
#define OCRS_IO_H_

#include <string>

#include <nlohmann/json.hpp>

#include "ocrs/analysis.h"
#include "ocrs/chain_builder.h"
#include "ocrs/elem_set.h"
#include "ocrs/matroid.h"
#include "ocrs/ocrs_engine.h"
#include "ocrs/stochastic.h"

namespace ocrs {

using Json = nlohmann::json;

// Builds a matroid from a descriptor such as {"family": "uniform", "n": 4,
// "k": 2}. Throws std::invalid_argument on malformed descriptors.
MatroidOracle MatroidFromJson(const Json& descriptor);

// Sorted array of element ids.
Json ToJson(const ElemSet& s);
// Throws std::invalid_argument on ids outside [0, n) or duplicates.
ElemSet ElemSetFromJson(const Json& j, int n);

Json ToJson(const MarginalVector& x);
MarginalVector MarginalFromJson(const Json& j);

// Array of links, outermost first.
Json ToJson(const SpanningChain& chain);
SpanningChain ChainFromJson(const Json& j, int n);

Json ToJson(const LinkTrace& trace);
Json ToJson(const ChainTrace& trace);

Json ToJson(const Verdict& v);
Json ToJson(const InLinkLossReport& r);
Json ToJson(const ProgressReport& r);
Json ToJson(const SpanningReport& r);
Json ToJson(const FreenessReport& r);
Json ToJson(const TAlphaResult& r);
Json ToJson(const BulletCheck& b);
Json ToJson(const SampleComplexityAudit& a);
Json ToJson(const SelectabilityReport& r);

// element_id,activations,selections,frequency,ci_low,ci_high
std::string SelectabilityCsv(const SelectabilityReport& r);

}  // namespace ocrs

#endif  // OCRS_IO_H_
