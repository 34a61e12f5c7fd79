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

// The single-photon extended Wigner's-friend interferometer.
//
// Friend F-bar records the path (l/r) in the wavepacket shape; friend F's
// record is the polarization itself, so F's measurement leaves the photon
// unchanged. Wigner then measures either with the second mode shaper in arm
// r (context 1: memory erased, ok/fail over path (x) shape) or without it
// (context 2: memory kept, ok'/fail' over path only).
//
// The erasing shaper sits in arm r, the arm whose shape the first shaper
// flipped; a shaper in arm l would not remove the which-path record.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "wfsim/circuit.hpp"
#include "wfsim/measure.hpp"
#include "wfsim/qstate.hpp"

namespace wfsim::scenario {

enum class ContextId { context1, context2 };
/// Where a property is evaluated; pre-Wigner is the state leaving the labs.
enum class Setting { pre_wigner, context1, context2 };
enum class PropertyId { p1, p2, p3 };
enum class PropertyStatus { holds, violated, unverifiable };

std::string to_string(ContextId c);
std::string to_string(Setting s);
std::string to_string(PropertyId p);
std::string to_string(PropertyStatus s);
Setting setting_of(ContextId c);

struct Context {
  ContextId id;
  Circuit pipeline;
  MeasurementBasis wigner_basis;
};

/// |D, r, 2>
PhotonState source_state();
/// Source after the 1/3-transmission beam splitter.
PhotonState build_psi0();
/// Which-path shaper (arm r, 2->1) then the 45 degree rotator in arm r.
PhotonState evolve_to_psi2(const PhotonState& psi0);
/// evolve_to_psi2(build_psi0())
PhotonState psi2();

/// Two labelled orthonormal polarization kets.
struct PolBasis {
  std::array<std::string, 2> labels;
  std::array<Qubit, 2> kets;
  static PolBasis hv();
  static PolBasis da();
};

struct CorrelationEntry {
  Path path;
  std::string pol_outcome;
  double probability;
};

/// Path detection with a polarizing beam splitter in each output arm;
/// shape is not observed.
std::vector<CorrelationEntry> correlation_table(const PhotonState& psi2, const PolBasis& arm_r,
                                                const PolBasis& arm_l);
double correlation(const std::vector<CorrelationEntry>& table, Path path, const std::string& pol_outcome);

/// Context 1: {D,A} x {fail, ok} with fail/ok = (|r,1> +- |l,2>)/sqrt(2),
/// over all three factors. Context 2: {D,A} x {fail', ok'} with
/// fail'/ok' = (|r> +- |l>)/sqrt(2) over (pol, path); shape untouched.
/// Outcome order: (D,fail), (D,ok), (A,fail), (A,ok).
MeasurementBasis wigner_basis(ContextId ctx);

/// Built-in element pipeline, identical to circuits/context{1,2}.wfc.
Circuit context_circuit(ContextId ctx);
Context make_context(ContextId ctx);

struct LabelledAmplitude {
  std::string label;
  Complex amplitude;
};

/// Psi_2 together with its coordinates in the context's description. For
/// context 2 the coordinates resolve the untouched shape: "D,fail',1" etc.
struct ContextState {
  ContextId id;
  PhotonState state;
  std::vector<LabelledAmplitude> amplitudes;
};

ContextState context_state(ContextId ctx);

/// Born rule on Psi_2 in wigner_basis(ctx).
OutcomeDistribution context_distribution(ContextId ctx);

/// Lowers and runs context_circuit(ctx).
OutcomeDistribution circuit_distribution(ContextId ctx);

/// Context 1 through explicit elements: second shaper, balanced beam
/// splitter, then D/A detection on each output port (port r -> fail,
/// port l -> ok).
OutcomeDistribution context1_detector_distribution();

struct PropertyReport {
  PropertyId property;
  Setting setting;
  /// Probability weight of the forbidden event; empty when the property
  /// cannot be checked in this setting.
  std::optional<double> amplitude_magnitude;
  PropertyStatus status;

  bool holds() const { return status == PropertyStatus::holds; }
};

/// P1: |<H,r,1|Psi_2>|^2, P2: |<A,l,2|Psi_2>|^2, P3: ||P_{V,ok} Psi||^2 in
/// context 1 or ||P_{V,ok'} Psi'||^2 in context 2. P1/P2 are unverifiable in
/// context 1, where the which-path record is erased. Throws
/// std::invalid_argument for P3 before Wigner's context is chosen.
PropertyReport check_property(PropertyId p, Setting s);

struct CommutatorEntry {
  std::string name;
  Operator value;
  double frobenius_norm;
};

struct Observables {
  Operator o1;  // |H,r,1><H,r,1|
  Operator o2;  // |A,l,2><A,l,2|
  Operator o3;  // |V,ok><V,ok|
  std::array<CommutatorEntry, 3> commutators;  // [O1,O2], [O1,O3], [O2,O3]
};

Observables observables();

struct ParadoxStep {
  PropertyId property;
  std::string inference;
  PropertyStatus status;
};

struct ParadoxTrace {
  ContextId context;
  std::vector<ParadoxStep> steps;
  /// True only if every step is licensed, i.e. all three properties hold.
  bool chain_complete;
  /// Probability of (A,ok) in context 1 or (A,ok') in context 2.
  std::string a_ok_label;
  double p_a_ok;
  /// The chain would forbid (A,ok) while it has nonzero probability.
  bool contradiction;
};

ParadoxTrace paradox_trace(ContextId ctx);

}  // namespace wfsim::scenario
