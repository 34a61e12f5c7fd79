// Copyright 2026 The wfsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// JSON and text rendering shared by the CLI.

#include <optional>
#include <string>

#include <json.hpp>

#include "wfsim/measure.hpp"
#include "wfsim/scenario.hpp"
#include "wfsim/verify.hpp"

namespace wfsim::report {

inline constexpr const char* kToolName = "wfsim";
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kRngName = "mt19937_64+splitmix64";

/// "p/q" when |x - p/q| < kExactTol for some q <= max_den (smallest q wins).
std::optional<std::string> exact_rational(double x, int max_den = 64);

/// 12 significant digits, plus " (p/q)" when exact_rational matches.
std::string format_probability(double p);

nlohmann::json to_json(const OutcomeDistribution& dist);
nlohmann::json to_json(const Histogram& h);
nlohmann::json to_json(const scenario::PropertyReport& r);
nlohmann::json to_json(const scenario::ParadoxTrace& t);
nlohmann::json to_json(const verify::CheckResult& c);
nlohmann::json commutators_json(const scenario::Observables& o);

}  // namespace wfsim::report
