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

// Projective measurement, seeded sampling and the two-qubit memory model.

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "wfsim/qstate.hpp"

namespace wfsim {

struct BasisElement {
  std::string label;
  /// Ket over the measured factors, dimension 2^factors.size().
  Eigen::VectorXcd ket;
};

/// Thrown when a state has weight outside the span of a measurement basis.
class IncompleteBasisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Ordered orthonormal kets over a subset of the photon factors. Factors not
/// listed are left untouched; each outcome projector is |k><k| (x) I_rest.
/// The kets may span only part of the measured space; the basis is complete
/// over that span.
class MeasurementBasis {
 public:
  /// Throws std::invalid_argument on empty input, bad ket dimension, repeated
  /// labels or kets that are not orthonormal within `tol`.
  MeasurementBasis(std::vector<Factor> factors, std::vector<BasisElement> elements, double tol = kInputTol);

  /// Kets over all three factors.
  static MeasurementBasis from_states(std::vector<std::pair<std::string, PhotonState>> elements,
                                      double tol = kInputTol);

  const std::vector<Factor>& factors() const { return factors_; }
  const std::vector<BasisElement>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }

  /// Projector of outcome k embedded in the photon space.
  Operator projector(std::size_t k) const;
  /// Sum of all outcome projectors.
  Operator support_projector() const;
  /// True when the kets span the whole measured space.
  bool spans_measured_factors() const { return elements_.size() == (std::size_t{1} << factors_.size()); }

 private:
  std::vector<Factor> factors_;
  std::vector<BasisElement> elements_;
  std::vector<Operator> projectors_;
};

struct Outcome {
  std::string label;
  double probability = 0.0;
  /// Normalized projection; zero vector when unreachable.
  PhotonState post_state;
  bool reachable = false;
};

struct OutcomeDistribution {
  std::vector<Outcome> entries;

  double total() const;
  /// Throws std::out_of_range for an unknown label.
  const Outcome& at(const std::string& label) const;
};

/// Born rule. Throws std::invalid_argument when `s` is not normalized within
/// kInputTol and IncompleteBasisError when more than kInputTol of its weight
/// lies outside the basis span. Probabilities below kExactTol clamp to 0 and
/// are flagged unreachable.
OutcomeDistribution born_probabilities(const PhotonState& s, const MeasurementBasis& basis);

/// Seedable, splittable generator: std::mt19937_64 seeded through SplitMix64,
/// 53-bit uniform doubles. The sequence for a given seed is stable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  /// Independent stream derived from this generator's seed.
  Rng split(std::uint64_t stream) const;
  /// Uniform in [0, 1).
  double uniform();
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Haar-random normalized qubit.
Qubit random_qubit(Rng& rng);
/// Haar-random orthonormal pair.
std::array<Qubit, 2> random_qubit_basis(Rng& rng);

struct Histogram {
  std::vector<std::pair<std::string, std::uint64_t>> counts;

  std::uint64_t total() const;
  std::uint64_t count(const std::string& label) const;
  friend bool operator==(const Histogram&, const Histogram&) = default;
};

/// Inverse-CDF sampling in outcome order with a single stream. Throws
/// std::invalid_argument when shots < 1.
Histogram sample(const OutcomeDistribution& dist, std::int64_t shots, std::uint64_t seed);

/// Splits shots over `streams` threads, stream i using Rng(seed).split(i).
/// Deterministic for fixed (seed, streams) but differs from sample().
Histogram sample_parallel(const OutcomeDistribution& dist, std::int64_t shots, std::uint64_t seed,
                          unsigned streams);

/// System qubit S recorded by memory qubit M in a pointer basis of S.
struct MemoryRegister {
  Factor system_factor = Factor::path;
  Factor memory_factor = Factor::shape;
  std::array<Qubit, 2> pointer_basis = {qubit::l(), qubit::r()};

  /// Throws std::invalid_argument when factors coincide or the pointer kets
  /// are not orthonormal within kExactTol.
  void validate() const;
};

/// S (x) M amplitudes, index 2*s + m in the computational basis of both.
using JointState = Eigen::Vector4cd;

/// c0 |p0>_S|0>_M + c1 |p1>_S|1>_M. Throws std::invalid_argument when
/// |c0|^2 + |c1|^2 differs from 1 by more than kInputTol.
JointState entangle_with_memory(const Qubit& coefficients, const MemoryRegister& reg);

/// Joint state as a density matrix over (system_factor, memory_factor).
DensityMatrix joint_density(const JointState& joint, const MemoryRegister& reg);

struct CollapseComparison {
  std::array<double, 2> p_entangled{};
  std::array<double, 2> p_mixture{};
  double max_abs_diff = 0.0;
};

/// Statistics of a probe measurement on S, computed from the joint state and
/// from the mixture obtained by collapsing on each memory record.
/// Requires the memory to be untouched since entangle_with_memory.
CollapseComparison effective_collapse_check(const JointState& joint, const std::array<Qubit, 2>& probe_basis);

}  // namespace wfsim
