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

#include "wfsim/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "wfsim/measure.hpp"
#include "wfsim/report.hpp"

namespace wfsim::verify {

using scenario::ContextId;
using scenario::PropertyId;
using scenario::PropertyStatus;
using scenario::Setting;

PropertyStatus expected_status(PropertyId p, Setting s) {
  if (p == PropertyId::p3) {
    if (s == Setting::pre_wigner) throw std::invalid_argument("P3 is undefined before Wigner's context is chosen");
    return s == Setting::context1 ? PropertyStatus::holds : PropertyStatus::violated;
  }
  return s == Setting::context1 ? PropertyStatus::unverifiable : PropertyStatus::holds;
}

namespace {

std::string describe(const scenario::PropertyReport& r) {
  std::string out = to_string(r.status);
  if (r.amplitude_magnitude) out += ", magnitude " + report::format_probability(*r.amplitude_magnitude);
  return out;
}

CheckResult table_check(std::string name, const OutcomeDistribution& dist,
                        const std::vector<std::pair<std::string, double>>& expected) {
  double worst = 0.0;
  bool labels_ok = dist.entries.size() == expected.size();
  for (std::size_t k = 0; labels_ok && k < expected.size(); ++k) {
    labels_ok = dist.entries[k].label == expected[k].first;
    worst = std::max(worst, std::abs(dist.entries[k].probability - expected[k].second));
  }
  const double total_err = std::abs(dist.total() - 1.0);
  std::string detail;
  for (const auto& e : dist.entries) detail += e.label + "=" + report::format_probability(e.probability) + "  ";
  detail += "max |diff| " + report::format_probability(worst);
  return {std::move(name), labels_ok && worst < kExactTol && total_err < kExactTol, detail};
}

double max_diff(const OutcomeDistribution& a, const OutcomeDistribution& b) {
  if (a.entries.size() != b.entries.size()) return INFINITY;
  double worst = 0.0;
  for (std::size_t k = 0; k < a.entries.size(); ++k) {
    if (a.entries[k].label != b.entries[k].label) return INFINITY;
    worst = std::max(worst, std::abs(a.entries[k].probability - b.entries[k].probability));
  }
  return worst;
}

}  // namespace

std::vector<CheckResult> properties(PropertyId p, std::optional<Setting> setting) {
  std::vector<Setting> settings;
  if (setting) {
    settings.push_back(*setting);
  } else {
    if (p != PropertyId::p3) settings.push_back(Setting::pre_wigner);
    settings.push_back(Setting::context1);
    settings.push_back(Setting::context2);
  }
  std::vector<CheckResult> out;
  for (Setting s : settings) {
    const auto r = scenario::check_property(p, s);
    const PropertyStatus expected = expected_status(p, s);
    bool passed = r.status == expected;
    std::string detail = describe(r);
    if (expected == PropertyStatus::violated) {
      // The one expected violation: P3 in context 2 carries weight 1/3.
      passed = passed && r.amplitude_magnitude && std::abs(*r.amplitude_magnitude - 1.0 / 3.0) < kExactTol;
      detail += " (expected violation)";
    }
    out.push_back({to_string(p) + " " + to_string(s), passed, detail});
  }
  return out;
}

std::vector<CheckResult> commutators() {
  const auto o = scenario::observables();
  std::vector<CheckResult> out;
  for (std::size_t k = 0; k < 2; ++k) {
    const auto& c = o.commutators[k];
    out.push_back({c.name + " = 0", c.frobenius_norm < kExactTol,
                   "frobenius norm " + report::format_probability(c.frobenius_norm)});
  }
  const auto& c23 = o.commutators[2];
  const bool anti_hermitian = (c23.value + c23.value.adjoint()).frobenius_norm() < kExactTol;
  out.push_back({c23.name + " != 0", c23.frobenius_norm > 0.1 && anti_hermitian,
                 "frobenius norm " + report::format_probability(c23.frobenius_norm) +
                     (anti_hermitian ? ", anti-Hermitian" : ", NOT anti-Hermitian")});
  const bool projectors = o.o1.is_projector() && o.o2.is_projector() && o.o3.is_projector();
  out.push_back({"O1, O2, O3 are projectors", projectors, projectors ? "P^2 = P, P = P^dagger" : "failed"});
  return out;
}

MemoryEquivalenceStats memory_equivalence_stats(int trials, std::uint64_t seed) {
  Rng rng(seed);
  MemoryEquivalenceStats stats{trials, 0.0};
  for (int t = 0; t < trials; ++t) {
    MemoryRegister reg;
    reg.pointer_basis = {qubit::l(), qubit::r()};
    const JointState joint = entangle_with_memory(random_qubit(rng), reg);
    const auto cmp = effective_collapse_check(joint, random_qubit_basis(rng));
    stats.max_abs_diff = std::max(stats.max_abs_diff, cmp.max_abs_diff);
  }
  return stats;
}

std::vector<CheckResult> memory_equivalence(int trials, std::uint64_t seed) {
  const auto stats = memory_equivalence_stats(trials, seed);
  char buf[96];
  std::snprintf(buf, sizeof buf, "%d trials, max |p_entangled - p_mixture| = %.3g", stats.trials, stats.max_abs_diff);
  return {{"memory equivalence", stats.trials >= 1 && stats.max_abs_diff < kExactTol, buf}};
}

std::vector<CheckResult> contexts() {
  std::vector<CheckResult> out;
  const auto ctx1 = scenario::context_distribution(ContextId::context1);
  const auto ctx2 = scenario::context_distribution(ContextId::context2);
  out.push_back(table_check("context1 outcome table", ctx1,
                            {{"D,fail", 3.0 / 4.0}, {"D,ok", 1.0 / 12.0}, {"A,fail", 1.0 / 12.0}, {"A,ok", 1.0 / 12.0}}));
  out.push_back(table_check(
      "context2 outcome table", ctx2,
      {{"D,fail'", 5.0 / 12.0}, {"D,ok'", 5.0 / 12.0}, {"A,fail'", 1.0 / 12.0}, {"A,ok'", 1.0 / 12.0}}));

  const double pipe = max_diff(scenario::context1_detector_distribution(), ctx1);
  out.push_back({"context1 detector pipeline = ok/fail projection", pipe < kExactTol,
                 "max |diff| " + report::format_probability(pipe)});
  for (ContextId c : {ContextId::context1, ContextId::context2}) {
    const double d = max_diff(scenario::circuit_distribution(c), scenario::context_distribution(c));
    out.push_back({"built-in " + to_string(c) + " circuit = context table", d < kExactTol,
                   "max |diff| " + report::format_probability(d)});
  }
  for (ContextId c : {ContextId::context1, ContextId::context2}) {
    const auto t = scenario::paradox_trace(c);
    std::string detail;
    for (const auto& s : t.steps) detail += to_string(s.property) + " " + to_string(s.status) + ", ";
    detail += "P(" + t.a_ok_label + ") = " + report::format_probability(t.p_a_ok);
    out.push_back({"paradox conjunction false in " + to_string(c), !t.chain_complete && !t.contradiction, detail});
  }
  return out;
}

std::vector<CheckResult> all(int trials, std::uint64_t seed) {
  std::vector<CheckResult> out;
  auto append = [&out](std::vector<CheckResult> more) {
    out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  };
  for (PropertyId p : {PropertyId::p1, PropertyId::p2, PropertyId::p3}) append(properties(p));
  append(commutators());
  append(memory_equivalence(trials, seed));
  append(contexts());
  return out;
}

}  // namespace wfsim::verify
