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

#include "wfsim/scenario.hpp"

#include <cmath>
#include <stdexcept>

#include "wfsim/optics.hpp"

namespace wfsim::scenario {

std::string to_string(ContextId c) { return c == ContextId::context1 ? "context1" : "context2"; }

std::string to_string(Setting s) {
  switch (s) {
    case Setting::pre_wigner:
      return "pre-wigner";
    case Setting::context1:
      return "context1";
    case Setting::context2:
      return "context2";
  }
  return "?";
}

std::string to_string(PropertyId p) {
  switch (p) {
    case PropertyId::p1:
      return "P1";
    case PropertyId::p2:
      return "P2";
    case PropertyId::p3:
      return "P3";
  }
  return "?";
}

std::string to_string(PropertyStatus s) {
  switch (s) {
    case PropertyStatus::holds:
      return "holds";
    case PropertyStatus::violated:
      return "violated";
    case PropertyStatus::unverifiable:
      return "unverifiable";
  }
  return "?";
}

Setting setting_of(ContextId c) { return c == ContextId::context1 ? Setting::context1 : Setting::context2; }

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Eigen::VectorXcd kron(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  Eigen::VectorXcd out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

// (|r,1> +- |l,2>)/sqrt(2) with polarization `pol`.
PhotonState okfail_ket(const Qubit& pol, double sign) {
  return superpose({{kInvSqrt2, product(pol, qubit::r(), qubit::shape1())},
                    {sign * kInvSqrt2, product(pol, qubit::l(), qubit::shape2())}});
}

Qubit fail_prime() { return kInvSqrt2 * (qubit::r() + qubit::l()); }
Qubit ok_prime() { return kInvSqrt2 * (qubit::r() - qubit::l()); }

PropertyStatus status_of(double weight) { return weight < kExactTol ? PropertyStatus::holds : PropertyStatus::violated; }

}  // namespace

PhotonState source_state() { return product(qubit::D(), qubit::r(), qubit::shape2()); }

PhotonState build_psi0() { return apply(beam_splitter(1.0 / 3.0), source_state()); }

PhotonState evolve_to_psi2(const PhotonState& psi0) {
  if (!psi0.is_normalized(kInputTol)) throw std::invalid_argument("evolve_to_psi2: state is not normalized");
  const PhotonState psi1 = apply(mode_shaper(Path::r, ShapeMap::two_to_one), psi0);
  return apply(pol_rotator(Path::r, 45.0), psi1);
}

PhotonState psi2() { return evolve_to_psi2(build_psi0()); }

PolBasis PolBasis::hv() { return {{"H", "V"}, {qubit::H(), qubit::V()}}; }
PolBasis PolBasis::da() { return {{"D", "A"}, {qubit::D(), qubit::A()}}; }

std::vector<CorrelationEntry> correlation_table(const PhotonState& psi2, const PolBasis& arm_r,
                                                const PolBasis& arm_l) {
  std::vector<BasisElement> elements;
  for (std::size_t k = 0; k < 2; ++k) elements.push_back({"r," + arm_r.labels[k], kron(arm_r.kets[k], qubit::r())});
  for (std::size_t k = 0; k < 2; ++k) elements.push_back({"l," + arm_l.labels[k], kron(arm_l.kets[k], qubit::l())});
  const MeasurementBasis basis({Factor::pol, Factor::path}, std::move(elements));
  const OutcomeDistribution dist = born_probabilities(psi2, basis);

  std::vector<CorrelationEntry> table;
  for (std::size_t k = 0; k < 4; ++k) {
    const Path path = k < 2 ? Path::r : Path::l;
    const auto& labels = k < 2 ? arm_r.labels : arm_l.labels;
    table.push_back({path, labels[k % 2], dist.entries[k].probability});
  }
  return table;
}

double correlation(const std::vector<CorrelationEntry>& table, Path path, const std::string& pol_outcome) {
  for (const auto& e : table)
    if (e.path == path && e.pol_outcome == pol_outcome) return e.probability;
  throw std::out_of_range("no correlation entry for " + to_string(path) + "," + pol_outcome);
}

MeasurementBasis wigner_basis(ContextId ctx) {
  const std::pair<const char*, Qubit> pols[] = {{"D", qubit::D()}, {"A", qubit::A()}};
  if (ctx == ContextId::context1) {
    std::vector<std::pair<std::string, PhotonState>> elements;
    for (const auto& [name, pol] : pols) {
      elements.emplace_back(std::string(name) + ",fail", okfail_ket(pol, +1.0));
      elements.emplace_back(std::string(name) + ",ok", okfail_ket(pol, -1.0));
    }
    return MeasurementBasis::from_states(std::move(elements), kExactTol);
  }
  std::vector<BasisElement> elements;
  for (const auto& [name, pol] : pols) {
    elements.push_back({std::string(name) + ",fail'", kron(pol, fail_prime())});
    elements.push_back({std::string(name) + ",ok'", kron(pol, ok_prime())});
  }
  return MeasurementBasis({Factor::pol, Factor::path}, std::move(elements), kExactTol);
}

Circuit context_circuit(ContextId ctx) {
  Circuit c;
  c.source = {PolValue::D, Path::r, Shape::two};
  c.elements.emplace_back(BeamSplitterSpec{Number::rational(1, 3)});
  c.elements.emplace_back(ModeShaperSpec{Path::r, ShapeMap::two_to_one});
  c.elements.emplace_back(PolRotatorSpec{Path::r, Number::decimal(45.0)});
  if (ctx == ContextId::context1) {
    c.elements.emplace_back(ModeShaperSpec{Path::r, ShapeMap::one_to_two});
    c.measurement = NamedBasis::da_okfail;
  } else {
    c.measurement = NamedBasis::da_okfail_prime;
  }
  return c;
}

Context make_context(ContextId ctx) { return {ctx, context_circuit(ctx), wigner_basis(ctx)}; }

ContextState context_state(ContextId ctx) {
  ContextState out{ctx, psi2(), {}};
  const MeasurementBasis basis = wigner_basis(ctx);
  for (const auto& e : basis.elements()) {
    if (ctx == ContextId::context1) {
      out.amplitudes.push_back({e.label, e.ket.dot(out.state.amplitudes())});
      continue;
    }
    for (const auto& [shape_name, shape] : {std::pair{"1", qubit::shape1()}, std::pair{"2", qubit::shape2()}}) {
      const Eigen::VectorXcd full = kron(e.ket, shape);
      out.amplitudes.push_back({e.label + "," + shape_name, full.dot(out.state.amplitudes())});
    }
  }
  return out;
}

OutcomeDistribution context_distribution(ContextId ctx) { return born_probabilities(psi2(), wigner_basis(ctx)); }

OutcomeDistribution circuit_distribution(ContextId ctx) { return run(lower(context_circuit(ctx))); }

OutcomeDistribution context1_detector_distribution() {
  const PhotonState erased = apply(mode_shaper(Path::r, ShapeMap::one_to_two), psi2());
  const PhotonState at_ports = apply(beam_splitter(0.5), erased);
  std::vector<BasisElement> detectors;
  const std::pair<const char*, Qubit> pols[] = {{"D", qubit::D()}, {"A", qubit::A()}};
  for (const auto& [name, pol] : pols) {
    detectors.push_back({std::string(name) + ",fail", kron(pol, qubit::r())});
    detectors.push_back({std::string(name) + ",ok", kron(pol, qubit::l())});
  }
  return born_probabilities(at_ports, MeasurementBasis({Factor::pol, Factor::path}, std::move(detectors)));
}

PropertyReport check_property(PropertyId p, Setting s) {
  PropertyReport report{p, s, std::nullopt, PropertyStatus::unverifiable};
  const PhotonState state = psi2();
  if (p == PropertyId::p1 || p == PropertyId::p2) {
    if (s == Setting::context1) return report;
    const PhotonState forbidden = p == PropertyId::p1 ? ket({Pol::H, Path::r, Shape::one})
                                                      : product(qubit::A(), qubit::l(), qubit::shape2());
    const double weight = std::norm(inner(forbidden, state));
    report.amplitude_magnitude = weight;
    report.status = status_of(weight);
    return report;
  }
  if (s == Setting::pre_wigner) throw std::invalid_argument("P3 is undefined before Wigner's context is chosen");
  double weight = 0.0;
  if (s == Setting::context1) {
    weight = std::norm(inner(okfail_ket(qubit::V(), -1.0), state));
  } else {
    const MeasurementBasis v_ok({Factor::pol, Factor::path}, {{"V,ok'", kron(qubit::V(), ok_prime())}}, kExactTol);
    weight = (v_ok.projector(0) * state).squared_norm();
  }
  report.amplitude_magnitude = weight;
  report.status = status_of(weight);
  return report;
}

Observables observables() {
  Observables o;
  o.o1 = Operator::projector_onto(ket({Pol::H, Path::r, Shape::one}));
  o.o2 = Operator::projector_onto(product(qubit::A(), qubit::l(), qubit::shape2()));
  o.o3 = Operator::projector_onto(okfail_ket(qubit::V(), -1.0));
  auto entry = [](std::string name, const Operator& a, const Operator& b) {
    Operator c = commutator(a, b);
    const double norm = c.frobenius_norm();
    return CommutatorEntry{std::move(name), std::move(c), norm};
  };
  o.commutators = {entry("[O1,O2]", o.o1, o.o2), entry("[O1,O3]", o.o1, o.o3), entry("[O2,O3]", o.o2, o.o3)};
  return o;
}

ParadoxTrace paradox_trace(ContextId ctx) {
  const Setting s = setting_of(ctx);
  ParadoxTrace t;
  t.context = ctx;
  t.steps = {
      {PropertyId::p2, "A is excluded in arm l, so (A,ok) requires arm r", check_property(PropertyId::p2, s).status},
      {PropertyId::p1, "arm r excludes H, so the photon is V", check_property(PropertyId::p1, s).status},
      {PropertyId::p3, "V excludes the ok port, so (A,ok) is forbidden", check_property(PropertyId::p3, s).status},
  };
  t.chain_complete = true;
  for (const auto& step : t.steps) t.chain_complete = t.chain_complete && step.status == PropertyStatus::holds;
  t.a_ok_label = ctx == ContextId::context1 ? "A,ok" : "A,ok'";
  t.p_a_ok = context_distribution(ctx).at(t.a_ok_label).probability;
  t.contradiction = t.chain_complete && t.p_a_ok > kExactTol;
  return t;
}

}  // namespace wfsim::scenario
