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

#include <cmath>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "wfsim/scenario.hpp"

namespace wfsim::scenario {
namespace {

PhotonState from_oracle(const oracle::Vec& v) {
  Vector8 a;
  for (int i = 0; i < 8; ++i) a(i) = v[static_cast<std::size_t>(i)];
  return PhotonState(a);
}

// <pol, path, shape | psi> with pol and path given as (H,V) and (l,r) vectors.
oracle::C oracle_amplitude(const oracle::Vec& psi, std::array<oracle::C, 2> pol, std::array<oracle::C, 2> path, int shape) {
  oracle::C amp = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      amp += std::conj(pol[a] * path[b]) * psi[oracle::idx(a ? 'V' : 'H', b ? 'r' : 'l', shape)];
  return amp;
}

double amplitude_of(const ContextState& s, const std::string& label) {
  for (const auto& a : s.amplitudes)
    if (a.label == label) {
      EXPECT_LT(std::abs(a.amplitude.imag()), kExactTol) << label;
      return a.amplitude.real();
    }
  ADD_FAILURE() << "no amplitude " << label;
  return 0.0;
}

TEST(Psi0, MatchesClosedForm) {
  const PhotonState psi0 = build_psi0();
  EXPECT_NEAR(psi0.norm(), 1.0, kExactTol);
  EXPECT_TRUE(psi0.approx_equal(from_oracle(oracle::psi0())));
  EXPECT_NEAR(std::abs(inner(product(qubit::D(), qubit::r(), qubit::shape2()), psi0) - 1.0 / std::sqrt(3.0)), 0.0,
              kExactTol);
  EXPECT_NEAR(std::abs(inner(product(qubit::D(), qubit::l(), qubit::shape2()), psi0) - std::sqrt(2.0 / 3.0)), 0.0,
              kExactTol);
}

TEST(Psi2, MatchesClosedFormAndForbiddenAmplitudesVanish) {
  const PhotonState s = psi2();
  EXPECT_TRUE(s.approx_equal(from_oracle(oracle::psi2())));
  EXPECT_NEAR(std::abs(inner(ket({Pol::V, Path::r, Shape::one}), s) - 1.0 / std::sqrt(3.0)), 0.0, kExactTol);
  EXPECT_LT(std::abs(inner(ket({Pol::H, Path::r, Shape::one}), s)), kExactTol);
  EXPECT_LT(std::abs(inner(product(qubit::A(), qubit::l(), qubit::shape2()), s)), kExactTol);
  EXPECT_THROW(evolve_to_psi2(PhotonState()), std::invalid_argument);
}

TEST(CorrelationTable, FriendsReadouts) {
  const auto t = correlation_table(psi2(), PolBasis::hv(), PolBasis::da());
  EXPECT_NEAR(correlation(t, Path::r, "V"), 1.0 / 3.0, kExactTol);
  EXPECT_NEAR(correlation(t, Path::r, "H"), 0.0, kExactTol);
  EXPECT_NEAR(correlation(t, Path::l, "D"), 2.0 / 3.0, kExactTol);
  EXPECT_NEAR(correlation(t, Path::l, "A"), 0.0, kExactTol);
  double total = 0.0;
  for (const auto& e : t) total += e.probability;
  EXPECT_NEAR(total, 1.0, kExactTol);
  EXPECT_THROW(correlation(t, Path::r, "D"), std::out_of_range);
}

TEST(CorrelationTable, ConjugateBasesShowNoCorrelation) {
  const auto t = correlation_table(psi2(), PolBasis::da(), PolBasis::hv());
  EXPECT_NEAR(correlation(t, Path::r, "D"), 1.0 / 6.0, kExactTol);
  EXPECT_NEAR(correlation(t, Path::r, "A"), 1.0 / 6.0, kExactTol);
  EXPECT_NEAR(correlation(t, Path::l, "H"), 1.0 / 3.0, kExactTol);
  EXPECT_NEAR(correlation(t, Path::l, "V"), 1.0 / 3.0, kExactTol);
}

TEST(CorrelationTable, AgreesWithAnalyticPropertyChecks) {
  const auto t = correlation_table(psi2(), PolBasis::hv(), PolBasis::da());
  EXPECT_NEAR(correlation(t, Path::r, "H"), *check_property(PropertyId::p1, Setting::pre_wigner).amplitude_magnitude,
              kExactTol);
  EXPECT_NEAR(correlation(t, Path::l, "A"), *check_property(PropertyId::p2, Setting::pre_wigner).amplitude_magnitude,
              kExactTol);
}

TEST(WignerBasis, ContextOneOkFail) {
  const MeasurementBasis b = wigner_basis(ContextId::context1);
  ASSERT_EQ(b.size(), 4u);
  EXPECT_EQ(b.factors().size(), 3u);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      EXPECT_NEAR(std::abs(b.elements()[i].ket.dot(b.elements()[j].ket) - (i == j ? 1.0 : 0.0)), 0.0, kExactTol);
  const Eigen::VectorXcd d_r_1 = product(qubit::D(), qubit::r(), qubit::shape1()).amplitudes();
  EXPECT_NEAR(std::abs(b.elements()[0].ket.dot(d_r_1) - 1.0 / std::sqrt(2.0)), 0.0, kExactTol);
  EXPECT_EQ(b.elements()[0].label, "D,fail");
  const Eigen::VectorXcd d_l_2 = product(qubit::D(), qubit::l(), qubit::shape2()).amplitudes();
  EXPECT_NEAR(std::abs(b.elements()[1].ket.dot(d_l_2) + 1.0 / std::sqrt(2.0)), 0.0, kExactTol);
}

TEST(WignerBasis, ContextTwoActsOnPathOnly) {
  const MeasurementBasis b = wigner_basis(ContextId::context2);
  EXPECT_EQ(b.factors(), (std::vector<Factor>{Factor::pol, Factor::path}));
  ASSERT_EQ(b.size(), 4u);
  EXPECT_EQ(b.elements()[1].label, "D,ok'");
  Eigen::VectorXcd d_l(4);
  d_l << qubit::D()(0) * qubit::l()(0), qubit::D()(0) * qubit::l()(1), qubit::D()(1) * qubit::l()(0),
      qubit::D()(1) * qubit::l()(1);
  EXPECT_NEAR(std::abs(d_l.dot(b.elements()[1].ket) + 1.0 / std::sqrt(2.0)), 0.0, kExactTol);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      EXPECT_NEAR(std::abs(b.elements()[i].ket.dot(b.elements()[j].ket) - (i == j ? 1.0 : 0.0)), 0.0, kExactTol);
}

TEST(ContextState, ContextOneAmplitudes) {
  const ContextState s = context_state(ContextId::context1);
  const double n = std::sqrt(12.0);
  EXPECT_NEAR(amplitude_of(s, "D,fail"), 3.0 / n, kExactTol);
  EXPECT_NEAR(amplitude_of(s, "D,ok"), -1.0 / n, kExactTol);
  EXPECT_NEAR(amplitude_of(s, "A,fail"), -1.0 / n, kExactTol);
  EXPECT_NEAR(amplitude_of(s, "A,ok"), -1.0 / n, kExactTol);
  EXPECT_LT(std::abs(inner(superpose({{1.0 / std::sqrt(2.0), ket({Pol::V, Path::r, Shape::one})},
                                      {-1.0 / std::sqrt(2.0), ket({Pol::V, Path::l, Shape::two})}}),
                           s.state)),
            kExactTol);
}

TEST(ContextState, ContextTwoAmplitudesMatchOracle) {
  const ContextState s = context_state(ContextId::context2);
  const oracle::Vec psi = oracle::psi2();
  const struct {
    const char* label;
    std::array<oracle::C, 2> pol;
    std::array<oracle::C, 2> path;
    double scaled[2];  // times sqrt(12), shapes 1 and 2
  } rows[] = {
      {"D,fail'", oracle::kD, oracle::kFailPrime, {1.0, 2.0}},
      {"D,ok'", oracle::kD, oracle::kOkPrime, {1.0, -2.0}},
      {"A,fail'", oracle::kA, oracle::kFailPrime, {-1.0, 0.0}},
      {"A,ok'", oracle::kA, oracle::kOkPrime, {-1.0, 0.0}},
  };
  double norm = 0.0;
  for (const auto& row : rows) {
    for (int shape = 1; shape <= 2; ++shape) {
      const std::string label = std::string(row.label) + "," + std::to_string(shape);
      const oracle::C expected = oracle_amplitude(psi, row.pol, row.path, shape);
      const double got = amplitude_of(s, label);
      EXPECT_NEAR(got, expected.real(), kExactTol) << label;
      EXPECT_NEAR(got, row.scaled[shape - 1] / std::sqrt(12.0), kExactTol) << label;
      norm += got * got;
    }
  }
  EXPECT_NEAR(norm, 1.0, kExactTol);
}

TEST(ContextState, ContextTwoVOkPrimeWeight) {
  double weight = 0.0;
  for (int shape = 1; shape <= 2; ++shape)
    weight += std::norm(oracle_amplitude(oracle::psi2(), oracle::kV, oracle::kOkPrime, shape));
  EXPECT_NEAR(weight, 1.0 / 3.0, kExactTol);
  EXPECT_NEAR(*check_property(PropertyId::p3, Setting::context2).amplitude_magnitude, weight, kExactTol);
}

TEST(Distributions, ContextTables) {
  const auto c1 = context_distribution(ContextId::context1);
  EXPECT_NEAR(c1.at("D,fail").probability, 0.75, kExactTol);
  EXPECT_NEAR(c1.at("D,ok").probability, 1.0 / 12.0, kExactTol);
  EXPECT_NEAR(c1.at("A,fail").probability, 1.0 / 12.0, kExactTol);
  EXPECT_NEAR(c1.at("A,ok").probability, 1.0 / 12.0, kExactTol);
  const auto c2 = context_distribution(ContextId::context2);
  EXPECT_NEAR(c2.at("D,fail'").probability, 5.0 / 12.0, kExactTol);
  EXPECT_NEAR(c2.at("D,ok'").probability, 5.0 / 12.0, kExactTol);
  EXPECT_NEAR(c2.at("A,fail'").probability, 1.0 / 12.0, kExactTol);
  EXPECT_NEAR(c2.at("A,ok'").probability, 1.0 / 12.0, kExactTol);
  EXPECT_NEAR(c2.total(), 1.0, kExactTol);
}

TEST(Distributions, ElementPipelineEqualsBasisChange) {
  const auto direct = context_distribution(ContextId::context1);
  const auto detectors = context1_detector_distribution();
  const auto circuit = circuit_distribution(ContextId::context1);
  ASSERT_EQ(direct.entries.size(), detectors.entries.size());
  for (std::size_t k = 0; k < direct.entries.size(); ++k) {
    EXPECT_EQ(direct.entries[k].label, detectors.entries[k].label);
    EXPECT_NEAR(direct.entries[k].probability, detectors.entries[k].probability, kExactTol);
    EXPECT_NEAR(direct.entries[k].probability, circuit.entries[k].probability, kExactTol);
  }
  const auto direct2 = context_distribution(ContextId::context2);
  const auto circuit2 = circuit_distribution(ContextId::context2);
  for (std::size_t k = 0; k < direct2.entries.size(); ++k)
    EXPECT_NEAR(direct2.entries[k].probability, circuit2.entries[k].probability, kExactTol);
}

TEST(MakeContext, PipelinesDifferBySecondShaper) {
  const Context c1 = make_context(ContextId::context1);
  const Context c2 = make_context(ContextId::context2);
  ASSERT_EQ(c1.pipeline.elements.size(), 4u);
  ASSERT_EQ(c2.pipeline.elements.size(), 3u);
  const auto& shaper = std::get<ModeShaperSpec>(c1.pipeline.elements[3]);
  EXPECT_EQ(shaper.arm, Path::r);
  EXPECT_EQ(shaper.map, ShapeMap::one_to_two);
  EXPECT_EQ(c1.wigner_basis.factors().size(), 3u);
  EXPECT_EQ(c2.wigner_basis.factors().size(), 2u);
}

TEST(Properties, PerSetting) {
  const auto p1_pre = check_property(PropertyId::p1, Setting::pre_wigner);
  EXPECT_EQ(p1_pre.status, PropertyStatus::holds);
  ASSERT_TRUE(p1_pre.amplitude_magnitude);
  EXPECT_LT(*p1_pre.amplitude_magnitude, kExactTol);
  EXPECT_TRUE(check_property(PropertyId::p2, Setting::pre_wigner).holds());
  EXPECT_TRUE(check_property(PropertyId::p1, Setting::context2).holds());
  EXPECT_TRUE(check_property(PropertyId::p2, Setting::context2).holds());

  for (auto p : {PropertyId::p1, PropertyId::p2}) {
    const auto r = check_property(p, Setting::context1);
    EXPECT_EQ(r.status, PropertyStatus::unverifiable);
    EXPECT_FALSE(r.amplitude_magnitude);
    EXPECT_FALSE(r.holds());
  }

  const auto p3_c1 = check_property(PropertyId::p3, Setting::context1);
  EXPECT_TRUE(p3_c1.holds());
  EXPECT_LT(*p3_c1.amplitude_magnitude, kExactTol);
  const auto p3_c2 = check_property(PropertyId::p3, Setting::context2);
  EXPECT_EQ(p3_c2.status, PropertyStatus::violated);
  EXPECT_NEAR(*p3_c2.amplitude_magnitude, 1.0 / 3.0, kExactTol);
  EXPECT_THROW(check_property(PropertyId::p3, Setting::pre_wigner), std::invalid_argument);
}

TEST(Properties, HoldsIffMagnitudeBelowTolerance) {
  for (auto p : {PropertyId::p1, PropertyId::p2, PropertyId::p3})
    for (auto s : {Setting::pre_wigner, Setting::context1, Setting::context2}) {
      if (p == PropertyId::p3 && s == Setting::pre_wigner) continue;
      const auto r = check_property(p, s);
      if (r.amplitude_magnitude) EXPECT_EQ(r.holds(), *r.amplitude_magnitude < kExactTol);
    }
}

TEST(Observables, ProjectorsAndCommutators) {
  const Observables o = observables();
  EXPECT_TRUE(o.o1.is_projector());
  EXPECT_TRUE(o.o2.is_projector());
  EXPECT_TRUE(o.o3.is_projector());
  EXPECT_EQ(o.commutators[0].name, "[O1,O2]");
  EXPECT_EQ(o.commutators[2].name, "[O2,O3]");
  EXPECT_LT(o.commutators[0].frobenius_norm, kExactTol);
  EXPECT_LT(o.commutators[1].frobenius_norm, kExactTol);
  EXPECT_GT(o.commutators[2].frobenius_norm, 0.1);
  int nonzero = 0;
  for (const auto& c : o.commutators) nonzero += c.frobenius_norm > kExactTol;
  EXPECT_EQ(nonzero, 1);
}

TEST(Observables, NonCommutingPairMatchesOracle) {
  const oracle::Vec a = oracle::anti('l', 2);
  const oracle::Vec b = oracle::okfail(oracle::kV, -1.0);
  const oracle::Mat pa = oracle::outer(a, a);
  const oracle::Mat pb = oracle::outer(b, b);
  const oracle::Mat comm = oracle::sub(oracle::matmul(pa, pb), oracle::matmul(pb, pa));
  EXPECT_NEAR(std::abs(oracle::dot(a, b)), 0.5, kExactTol);

  const Observables o = observables();
  const Operator& got = o.commutators[2].value;
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      EXPECT_NEAR(std::abs(got(i, j) - comm[i][j]), 0.0, kExactTol);
      EXPECT_NEAR(std::abs(comm[i][j] + std::conj(comm[j][i])), 0.0, kExactTol);
    }
  EXPECT_NEAR(o.commutators[2].frobenius_norm, oracle::frobenius(comm), kExactTol);
  EXPECT_NEAR(oracle::frobenius(comm), std::sqrt(3.0 / 8.0), kExactTol);

  // Closed form: half the antisymmetrized outer product.
  const oracle::Mat ab = oracle::outer(a, b);
  const oracle::Mat ba = oracle::outer(b, a);
  const double sign = oracle::dot(a, b).real() > 0 ? 1.0 : -1.0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) EXPECT_NEAR(std::abs(comm[i][j] - 0.5 * sign * (ab[i][j] - ba[i][j])), 0.0, kExactTol);
}

TEST(ParadoxTrace, ContextOne) {
  const ParadoxTrace t = paradox_trace(ContextId::context1);
  ASSERT_EQ(t.steps.size(), 3u);
  for (const auto& step : t.steps) {
    if (step.property == PropertyId::p3)
      EXPECT_EQ(step.status, PropertyStatus::holds);
    else
      EXPECT_EQ(step.status, PropertyStatus::unverifiable);
    EXPECT_FALSE(step.inference.empty());
  }
  EXPECT_FALSE(t.chain_complete);
  EXPECT_FALSE(t.contradiction);
  EXPECT_EQ(t.a_ok_label, "A,ok");
  EXPECT_NEAR(t.p_a_ok, 1.0 / 12.0, kExactTol);
}

TEST(ParadoxTrace, ContextTwo) {
  const ParadoxTrace t = paradox_trace(ContextId::context2);
  for (const auto& step : t.steps)
    EXPECT_EQ(step.status, step.property == PropertyId::p3 ? PropertyStatus::violated : PropertyStatus::holds);
  EXPECT_FALSE(t.chain_complete);
  EXPECT_EQ(t.a_ok_label, "A,ok'");
  EXPECT_NEAR(t.p_a_ok, 1.0 / 12.0, kExactTol);
}

TEST(ParadoxTrace, NoContextLicensesAllThreeProperties) {
  for (const auto ctx : {ContextId::context1, ContextId::context2}) {
    const Setting s = setting_of(ctx);
    const bool all = check_property(PropertyId::p1, s).holds() && check_property(PropertyId::p2, s).holds() &&
                     check_property(PropertyId::p3, s).holds();
    EXPECT_FALSE(all) << to_string(ctx);
    EXPECT_FALSE(paradox_trace(ctx).chain_complete);
  }
}

}  // namespace
}  // namespace wfsim::scenario
