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

// Checks behind `wfsim verify`. Each check encodes its expected outcome,
// including expected violations (P3 in context 2 passes when it fails).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wfsim/scenario.hpp"

namespace wfsim::verify {

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

/// Expected status of a property in a setting.
scenario::PropertyStatus expected_status(scenario::PropertyId p, scenario::Setting s);

/// One check per setting (all applicable settings when `setting` is empty).
/// Throws std::invalid_argument for P3 before Wigner's context.
std::vector<CheckResult> properties(scenario::PropertyId p, std::optional<scenario::Setting> setting = std::nullopt);

std::vector<CheckResult> commutators();

struct MemoryEquivalenceStats {
  int trials;
  double max_abs_diff;
};

/// Random (c0, c1) and random probe bases drawn from Rng(seed).
MemoryEquivalenceStats memory_equivalence_stats(int trials, std::uint64_t seed);
std::vector<CheckResult> memory_equivalence(int trials, std::uint64_t seed);

/// Outcome tables, pipeline equivalence and paradox conjunction.
std::vector<CheckResult> contexts();

std::vector<CheckResult> all(int trials, std::uint64_t seed);

}  // namespace wfsim::verify
