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

#include "wfsim/measure.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <unordered_set>

namespace wfsim {

namespace {

int bit_of(const BasisLabel& b, Factor f) {
  switch (f) {
    case Factor::pol:
      return static_cast<int>(b.pol);
    case Factor::path:
      return static_cast<int>(b.path);
    case Factor::shape:
      return static_cast<int>(b.shape);
  }
  return 0;
}

// Index of a photon basis state restricted to `factors`, in listed order.
std::size_t sub_index(const BasisLabel& b, const std::vector<Factor>& factors) {
  std::size_t k = 0;
  for (Factor f : factors) k = (k << 1) | static_cast<std::size_t>(bit_of(b, f));
  return k;
}

bool rest_matches(const BasisLabel& a, const BasisLabel& b, const std::vector<Factor>& factors) {
  for (Factor f : kAllFactors)
    if (std::find(factors.begin(), factors.end(), f) == factors.end() && bit_of(a, f) != bit_of(b, f)) return false;
  return true;
}

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

MeasurementBasis::MeasurementBasis(std::vector<Factor> factors, std::vector<BasisElement> elements, double tol)
    : factors_(std::move(factors)), elements_(std::move(elements)) {
  if (factors_.empty() || factors_.size() > kAllFactors.size())
    throw std::invalid_argument("measurement basis needs 1 to 3 factors");
  for (std::size_t i = 0; i < factors_.size(); ++i)
    for (std::size_t j = i + 1; j < factors_.size(); ++j)
      if (factors_[i] == factors_[j]) throw std::invalid_argument("repeated factor " + to_string(factors_[i]));
  if (elements_.empty()) throw std::invalid_argument("measurement basis has no elements");

  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << factors_.size());
  std::unordered_set<std::string> labels;
  for (const auto& e : elements_) {
    if (e.ket.size() != dim) throw std::invalid_argument("ket '" + e.label + "' has the wrong dimension");
    if (!labels.insert(e.label).second) throw std::invalid_argument("duplicate outcome label '" + e.label + "'");
  }
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    for (std::size_t j = i; j < elements_.size(); ++j) {
      const Complex g = elements_[i].ket.dot(elements_[j].ket);
      const Complex expected = (i == j) ? 1.0 : 0.0;
      if (std::abs(g - expected) > tol)
        throw std::invalid_argument("kets '" + elements_[i].label + "' and '" + elements_[j].label +
                                    "' are not orthonormal");
    }
  }

  projectors_.reserve(elements_.size());
  for (const auto& e : elements_) {
    Matrix8 m = Matrix8::Zero();
    for (std::size_t i = 0; i < kPhotonDim; ++i) {
      const auto bi = BasisLabel::from_index(i);
      for (std::size_t j = 0; j < kPhotonDim; ++j) {
        const auto bj = BasisLabel::from_index(j);
        if (!rest_matches(bi, bj, factors_)) continue;
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            e.ket(static_cast<Eigen::Index>(sub_index(bi, factors_))) *
            std::conj(e.ket(static_cast<Eigen::Index>(sub_index(bj, factors_))));
      }
    }
    projectors_.emplace_back(m);
  }
}

MeasurementBasis MeasurementBasis::from_states(std::vector<std::pair<std::string, PhotonState>> elements,
                                               double tol) {
  std::vector<BasisElement> out;
  out.reserve(elements.size());
  for (auto& [label, state] : elements) out.push_back({std::move(label), state.amplitudes()});
  return MeasurementBasis({kAllFactors.begin(), kAllFactors.end()}, std::move(out), tol);
}

Operator MeasurementBasis::projector(std::size_t k) const { return projectors_.at(k); }

Operator MeasurementBasis::support_projector() const {
  Operator total;
  for (const auto& p : projectors_) total = total + p;
  return total;
}

double OutcomeDistribution::total() const {
  double t = 0.0;
  for (const auto& e : entries) t += e.probability;
  return t;
}

const Outcome& OutcomeDistribution::at(const std::string& label) const {
  for (const auto& e : entries)
    if (e.label == label) return e;
  throw std::out_of_range("no outcome labelled '" + label + "'");
}

OutcomeDistribution born_probabilities(const PhotonState& s, const MeasurementBasis& basis) {
  if (!s.is_normalized(kInputTol)) throw std::invalid_argument("born_probabilities: state is not normalized");
  OutcomeDistribution dist;
  dist.entries.reserve(basis.size());
  double captured = 0.0;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const PhotonState projected = basis.projector(k) * s;
    double p = projected.squared_norm();
    captured += p;
    Outcome o;
    o.label = basis.elements()[k].label;
    if (p < kExactTol) {
      p = 0.0;
    } else {
      o.post_state = PhotonState(projected.amplitudes() / std::sqrt(p));
      o.reachable = true;
    }
    o.probability = p;
    dist.entries.push_back(std::move(o));
  }
  if (std::abs(captured - s.squared_norm()) > kInputTol)
    throw IncompleteBasisError("state has weight " + std::to_string(s.squared_norm() - captured) +
                               " outside the measurement basis");
  return dist;
}

Rng::Rng(std::uint64_t seed) : seed_(seed) {
  std::uint64_t x = seed;
  engine_.seed(splitmix64(x));
}

Rng Rng::split(std::uint64_t stream) const {
  std::uint64_t x = seed_ ^ (0xD1B54A32D192ED03ULL * (stream + 1));
  return Rng(splitmix64(x));
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

Qubit random_qubit(Rng& rng) {
  // Four Box-Muller normals give a Haar-distributed direction.
  auto normal_pair = [&rng]() {
    const double u1 = 1.0 - rng.uniform();
    const double u2 = rng.uniform();
    const double rad = std::sqrt(-2.0 * std::log(u1));
    return Complex(rad * std::cos(2.0 * std::numbers::pi * u2), rad * std::sin(2.0 * std::numbers::pi * u2));
  };
  Qubit q(normal_pair(), normal_pair());
  return q / q.norm();
}

std::array<Qubit, 2> random_qubit_basis(Rng& rng) {
  const Qubit a = random_qubit(rng);
  return {a, Qubit(-std::conj(a(1)), std::conj(a(0)))};
}

std::uint64_t Histogram::total() const {
  std::uint64_t t = 0;
  for (const auto& [label, c] : counts) t += c;
  return t;
}

std::uint64_t Histogram::count(const std::string& label) const {
  for (const auto& [l, c] : counts)
    if (l == label) return c;
  throw std::out_of_range("no histogram bin '" + label + "'");
}

namespace {

Histogram sample_stream(const OutcomeDistribution& dist, std::uint64_t shots, Rng rng) {
  std::vector<double> cdf;
  cdf.reserve(dist.entries.size());
  double acc = 0.0;
  for (const auto& e : dist.entries) cdf.push_back(acc += e.probability);

  // The last reachable outcome absorbs rounding at the top of the CDF.
  std::size_t last = 0;
  for (std::size_t k = 0; k < dist.entries.size(); ++k)
    if (dist.entries[k].probability > 0.0) last = k;

  std::vector<std::uint64_t> counts(dist.entries.size(), 0);
  for (std::uint64_t n = 0; n < shots; ++n) {
    const double u = rng.uniform() * acc;
    auto k = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    ++counts[std::min(k, last)];
  }
  Histogram h;
  for (std::size_t k = 0; k < counts.size(); ++k) h.counts.emplace_back(dist.entries[k].label, counts[k]);
  return h;
}

}  // namespace

Histogram sample(const OutcomeDistribution& dist, std::int64_t shots, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("sample: shots must be at least 1");
  if (dist.entries.empty()) throw std::invalid_argument("sample: empty distribution");
  return sample_stream(dist, static_cast<std::uint64_t>(shots), Rng(seed));
}

Histogram sample_parallel(const OutcomeDistribution& dist, std::int64_t shots, std::uint64_t seed,
                          unsigned streams) {
  if (shots < 1) throw std::invalid_argument("sample: shots must be at least 1");
  if (dist.entries.empty()) throw std::invalid_argument("sample: empty distribution");
  if (streams == 0) throw std::invalid_argument("sample: need at least one stream");
  const Rng root(seed);
  const auto total = static_cast<std::uint64_t>(shots);
  std::vector<std::future<Histogram>> parts;
  for (unsigned i = 0; i < streams; ++i) {
    const std::uint64_t share = total / streams + (i < total % streams ? 1 : 0);
    if (share == 0) continue;
    parts.push_back(std::async(std::launch::async, sample_stream, std::cref(dist), share, root.split(i)));
  }
  Histogram merged;
  for (const auto& e : dist.entries) merged.counts.emplace_back(e.label, 0);
  for (auto& f : parts) {
    const Histogram h = f.get();
    for (std::size_t k = 0; k < h.counts.size(); ++k) merged.counts[k].second += h.counts[k].second;
  }
  return merged;
}

void MemoryRegister::validate() const {
  if (system_factor == memory_factor) throw std::invalid_argument("system and memory must be different factors");
  const auto& [p0, p1] = pointer_basis;
  if (std::abs(p0.squaredNorm() - 1.0) > kExactTol || std::abs(p1.squaredNorm() - 1.0) > kExactTol ||
      std::abs(p0.dot(p1)) > kExactTol)
    throw std::invalid_argument("pointer basis is not orthonormal");
}

JointState entangle_with_memory(const Qubit& coefficients, const MemoryRegister& reg) {
  reg.validate();
  if (std::abs(coefficients.squaredNorm() - 1.0) > kInputTol)
    throw std::invalid_argument("entangle_with_memory: system state is not normalized");
  JointState joint = JointState::Zero();
  for (int k = 0; k < 2; ++k)
    for (int s = 0; s < 2; ++s) joint(2 * s + k) += coefficients(k) * reg.pointer_basis[static_cast<std::size_t>(k)](s);
  return joint;
}

DensityMatrix joint_density(const JointState& joint, const MemoryRegister& reg) {
  reg.validate();
  const Eigen::VectorXcd v = joint;
  return density_from_pure({reg.system_factor, reg.memory_factor}, v);
}

CollapseComparison effective_collapse_check(const JointState& joint, const std::array<Qubit, 2>& probe_basis) {
  CollapseComparison out;

  // Entangled description: <Psi| (|a><a| (x) I_M) |Psi>.
  for (std::size_t a = 0; a < 2; ++a) {
    const Eigen::Matrix2cd pa = probe_basis[a] * probe_basis[a].adjoint();
    Eigen::Matrix4cd lifted = Eigen::Matrix4cd::Zero();
    for (int s = 0; s < 2; ++s)
      for (int t = 0; t < 2; ++t)
        for (int m = 0; m < 2; ++m) lifted(2 * s + m, 2 * t + m) = pa(s, t);
    out.p_entangled[a] = joint.dot(lifted * joint).real();
  }

  // Mixture: collapse on each memory record k, rho_S = sum_k |c_k|^2 |p_k><p_k|.
  Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
  for (int k = 0; k < 2; ++k) {
    const Qubit conditional(joint(k), joint(2 + k));
    const double weight = conditional.squaredNorm();
    if (weight < kExactTol * kExactTol) continue;
    const Qubit pointer = conditional / std::sqrt(weight);
    rho += weight * pointer * pointer.adjoint();
  }
  for (std::size_t a = 0; a < 2; ++a) out.p_mixture[a] = probe_basis[a].dot(rho * probe_basis[a]).real();

  for (std::size_t a = 0; a < 2; ++a)
    out.max_abs_diff = std::max(out.max_abs_diff, std::abs(out.p_entangled[a] - out.p_mixture[a]));
  return out;
}

}  // namespace wfsim
