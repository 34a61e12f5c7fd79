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

#include "wfsim/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace wfsim::report {

std::optional<std::string> exact_rational(double x, int max_den) {
  for (int q = 1; q <= max_den; ++q) {
    const double p = std::round(x * q);
    if (std::abs(x - p / q) < kExactTol) {
      if (q == 1) return std::to_string(static_cast<long long>(p));
      return std::to_string(static_cast<long long>(p)) + "/" + std::to_string(q);
    }
  }
  return std::nullopt;
}

std::string format_probability(double p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", p);
  std::string out(buf);
  if (const auto exact = exact_rational(p)) out += " (" + *exact + ")";
  return out;
}

nlohmann::json to_json(const OutcomeDistribution& dist) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : dist.entries) {
    const auto exact = exact_rational(e.probability);
    out.push_back({{"label", e.label},
                   {"probability", e.probability},
                   {"exact", exact ? nlohmann::json(*exact) : nlohmann::json(nullptr)},
                   {"reachable", e.reachable}});
  }
  return out;
}

nlohmann::json to_json(const Histogram& h) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [label, count] : h.counts) out.push_back({{"label", label}, {"count", count}});
  return out;
}

nlohmann::json to_json(const scenario::PropertyReport& r) {
  return {{"property", to_string(r.property)},
          {"context", to_string(r.setting)},
          {"amplitude_magnitude", r.amplitude_magnitude ? nlohmann::json(*r.amplitude_magnitude) : nlohmann::json(nullptr)},
          {"status", to_string(r.status)},
          {"holds", r.holds()}};
}

nlohmann::json to_json(const scenario::ParadoxTrace& t) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : t.steps)
    steps.push_back({{"property", to_string(s.property)}, {"inference", s.inference}, {"status", to_string(s.status)}});
  return {{"context", to_string(t.context)},
          {"steps", steps},
          {"chain_complete", t.chain_complete},
          {"a_ok_label", t.a_ok_label},
          {"p_a_ok", t.p_a_ok},
          {"contradiction", t.contradiction}};
}

nlohmann::json to_json(const verify::CheckResult& c) {
  return {{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}};
}

nlohmann::json commutators_json(const scenario::Observables& o) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : o.commutators) out.push_back({{"pair", c.name}, {"frobenius_norm", c.frobenius_norm}});
  return out;
}

}  // namespace wfsim::report
