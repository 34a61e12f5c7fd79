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

#include "wfsim/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wfsim {

std::string to_string(Pol p) { return p == Pol::H ? "H" : "V"; }
std::string to_string(Path p) { return p == Path::l ? "l" : "r"; }
std::string to_string(Shape s) { return s == Shape::one ? "1" : "2"; }

std::string to_string(Factor f) {
  switch (f) {
    case Factor::pol:
      return "pol";
    case Factor::path:
      return "path";
    case Factor::shape:
      return "shape";
  }
  return "?";
}

std::string to_string(const BasisLabel& label) {
  return to_string(label.pol) + "," + to_string(label.path) + "," + to_string(label.shape);
}

namespace qubit {
namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}
Qubit H() { return Qubit(1.0, 0.0); }
Qubit V() { return Qubit(0.0, 1.0); }
Qubit D() { return Qubit(kInvSqrt2, kInvSqrt2); }
Qubit A() { return Qubit(kInvSqrt2, -kInvSqrt2); }
Qubit l() { return Qubit(1.0, 0.0); }
Qubit r() { return Qubit(0.0, 1.0); }
Qubit shape1() { return Qubit(1.0, 0.0); }
Qubit shape2() { return Qubit(0.0, 1.0); }
}  // namespace qubit

bool PhotonState::is_normalized(double tol) const { return std::abs(squared_norm() - 1.0) <= tol; }

PhotonState PhotonState::normalized() const {
  const double n = norm();
  if (n == 0.0) throw std::domain_error("cannot normalize the zero state");
  return PhotonState(amplitudes_ / n);
}

PhotonState& PhotonState::operator+=(const PhotonState& other) {
  amplitudes_ += other.amplitudes_;
  return *this;
}

bool PhotonState::approx_equal(const PhotonState& other, double tol) const {
  return (amplitudes_ - other.amplitudes_).cwiseAbs().maxCoeff() <= tol;
}

PhotonState ket(const BasisLabel& label) {
  Vector8 v = Vector8::Zero();
  v(static_cast<Eigen::Index>(label.index())) = 1.0;
  return PhotonState(v);
}

PhotonState product(const Qubit& pol, const Qubit& path, const Qubit& shape) {
  Vector8 v;
  for (std::size_t i = 0; i < kPhotonDim; ++i) {
    const auto b = BasisLabel::from_index(i);
    v(static_cast<Eigen::Index>(i)) = pol(static_cast<int>(b.pol)) * path(static_cast<int>(b.path)) *
                                      shape(static_cast<int>(b.shape));
  }
  return PhotonState(v);
}

PhotonState superpose(std::span<const std::pair<Complex, PhotonState>> terms) {
  if (terms.empty()) throw std::invalid_argument("superpose: empty term list");
  PhotonState out;
  for (const auto& [c, s] : terms) out += c * s;
  return out;
}

PhotonState superpose(std::initializer_list<std::pair<Complex, PhotonState>> terms) {
  return superpose(std::span<const std::pair<Complex, PhotonState>>(terms.begin(), terms.size()));
}

Complex inner(const PhotonState& a, const PhotonState& b) { return a.amplitudes().dot(b.amplitudes()); }

Operator Operator::outer(const PhotonState& a, const PhotonState& b) {
  return Operator(a.amplitudes() * b.amplitudes().adjoint());
}

Operator Operator::projector_onto(const PhotonState& s) { return outer(s, s); }

bool Operator::is_unitary(double tol) const {
  return ((matrix_.adjoint() * matrix_) - Matrix8::Identity()).cwiseAbs().maxCoeff() <= tol;
}

bool Operator::is_hermitian(double tol) const {
  return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool Operator::is_projector(double tol) const {
  return is_hermitian(tol) && ((matrix_ * matrix_) - matrix_).cwiseAbs().maxCoeff() <= tol;
}

bool Operator::approx_equal(const Operator& other, double tol) const {
  return (matrix_ - other.matrix_).cwiseAbs().maxCoeff() <= tol;
}

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

namespace {

void check_factor_list(const std::vector<Factor>& factors) {
  if (factors.empty() || factors.size() > kAllFactors.size())
    throw std::invalid_argument("density matrix needs 1 to 3 factors");
  for (std::size_t i = 0; i < factors.size(); ++i)
    for (std::size_t j = i + 1; j < factors.size(); ++j)
      if (factors[i] == factors[j]) throw std::invalid_argument("repeated factor " + to_string(factors[i]));
}

}  // namespace

DensityMatrix::DensityMatrix(std::vector<Factor> factors, Eigen::MatrixXcd matrix)
    : factors_(std::move(factors)), matrix_(std::move(matrix)) {
  check_factor_list(factors_);
  const Eigen::Index dim = Eigen::Index{1} << factors_.size();
  if (matrix_.rows() != dim || matrix_.cols() != dim)
    throw std::invalid_argument("density matrix dimension does not match its factors");
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kExactTol)
    throw std::invalid_argument("density matrix is not Hermitian");
  if (std::abs(matrix_.trace() - Complex(1.0)) > kExactTol)
    throw std::invalid_argument("density matrix trace is not 1");
  if (eigenvalues().minCoeff() < -kExactTol) throw std::invalid_argument("density matrix has a negative eigenvalue");
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

DensityMatrix density_from_pure(const PhotonState& s) {
  if (!s.is_normalized(kInputTol)) throw std::invalid_argument("density_from_pure: state is not normalized");
  const Eigen::VectorXcd v = s.amplitudes();
  return DensityMatrix({kAllFactors.begin(), kAllFactors.end()}, v * v.adjoint());
}

DensityMatrix density_from_pure(std::vector<Factor> factors, const Eigen::VectorXcd& v) {
  if (std::abs(v.squaredNorm() - 1.0) > kInputTol)
    throw std::invalid_argument("density_from_pure: state is not normalized");
  return DensityMatrix(std::move(factors), v * v.adjoint());
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const Factor> keep) {
  const auto& factors = rho.factors();
  const std::size_t n = factors.size();
  if (keep.empty()) throw std::invalid_argument("partial_trace: nothing to keep");
  if (keep.size() >= n) throw std::invalid_argument("partial_trace: keep must be a strict subset");

  // Bit position (from the most significant end) of each factor of rho.
  std::vector<bool> kept(n, false);
  for (Factor f : keep) {
    const auto it = std::find(factors.begin(), factors.end(), f);
    if (it == factors.end()) throw std::invalid_argument("partial_trace: factor " + to_string(f) + " not present");
    const auto pos = static_cast<std::size_t>(it - factors.begin());
    if (kept[pos]) throw std::invalid_argument("partial_trace: repeated factor " + to_string(f));
    kept[pos] = true;
  }

  std::vector<Factor> kept_factors;
  for (std::size_t i = 0; i < n; ++i)
    if (kept[i]) kept_factors.push_back(factors[i]);

  // Split a full index into (kept index, traced index), preserving order.
  auto split = [&](std::size_t full) {
    std::size_t k = 0, t = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t bit = (full >> (n - 1 - i)) & 1;
      if (kept[i])
        k = (k << 1) | bit;
      else
        t = (t << 1) | bit;
    }
    return std::pair{k, t};
  };

  const auto full_dim = static_cast<std::size_t>(rho.dim());
  const auto kept_dim = std::size_t{1} << kept_factors.size();
  Eigen::MatrixXcd reduced = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(kept_dim),
                                                    static_cast<Eigen::Index>(kept_dim));
  for (std::size_t i = 0; i < full_dim; ++i) {
    const auto [ki, ti] = split(i);
    for (std::size_t j = 0; j < full_dim; ++j) {
      const auto [kj, tj] = split(j);
      if (ti == tj)
        reduced(static_cast<Eigen::Index>(ki), static_cast<Eigen::Index>(kj)) +=
            rho.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return DensityMatrix(std::move(kept_factors), std::move(reduced));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<Factor> keep) {
  return partial_trace(rho, std::span<const Factor>(keep.begin(), keep.size()));
}

}  // namespace wfsim
