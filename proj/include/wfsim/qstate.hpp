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

// Hilbert-space arithmetic for a single photon carrying three qubits:
// polarization (H/V), interferometer path (l/r) and wavepacket shape (1/2).
// Basis index = 4*pol + 2*path + shape.

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace wfsim {

using Complex = std::complex<double>;

/// Absolute tolerance for analytic identities.
inline constexpr double kExactTol = 1e-12;
/// Absolute tolerance applied to user-supplied inputs.
inline constexpr double kInputTol = 1e-9;

inline constexpr std::size_t kPhotonDim = 8;

enum class Pol { H = 0, V = 1 };
enum class Path { l = 0, r = 1 };
enum class Shape { one = 0, two = 1 };

/// The three two-level degrees of freedom of the photon, most significant first.
enum class Factor { pol = 0, path = 1, shape = 2 };

inline constexpr std::array<Factor, 3> kAllFactors = {Factor::pol, Factor::path, Factor::shape};

std::string to_string(Pol p);
std::string to_string(Path p);
std::string to_string(Shape s);
std::string to_string(Factor f);

struct BasisLabel {
  Pol pol = Pol::H;
  Path path = Path::l;
  Shape shape = Shape::one;

  constexpr std::size_t index() const {
    return 4 * static_cast<std::size_t>(pol) + 2 * static_cast<std::size_t>(path) +
           static_cast<std::size_t>(shape);
  }
  static constexpr BasisLabel from_index(std::size_t i) {
    return {static_cast<Pol>((i >> 2) & 1), static_cast<Path>((i >> 1) & 1), static_cast<Shape>(i & 1)};
  }
  friend constexpr bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

/// "H,r,1" style rendering.
std::string to_string(const BasisLabel& label);

using Qubit = Eigen::Vector2cd;
using Vector8 = Eigen::Matrix<Complex, 8, 1>;
using Matrix8 = Eigen::Matrix<Complex, 8, 8>;

/// Single-qubit kets used throughout the scenario.
namespace qubit {
Qubit H();
Qubit V();
Qubit D();  // (H + V)/sqrt(2)
Qubit A();  // (H - V)/sqrt(2)
Qubit l();
Qubit r();
Qubit shape1();
Qubit shape2();
}  // namespace qubit

/// Pure state of the photon. Value type; not necessarily normalized.
class PhotonState {
 public:
  PhotonState() : amplitudes_(Vector8::Zero()) {}
  explicit PhotonState(const Vector8& amplitudes) : amplitudes_(amplitudes) {}

  const Vector8& amplitudes() const { return amplitudes_; }
  Complex operator[](const BasisLabel& label) const { return amplitudes_(static_cast<Eigen::Index>(label.index())); }
  Complex amplitude(std::size_t index) const { return amplitudes_(static_cast<Eigen::Index>(index)); }

  double norm() const { return amplitudes_.norm(); }
  double squared_norm() const { return amplitudes_.squaredNorm(); }
  bool is_normalized(double tol = kExactTol) const;
  /// Throws std::domain_error for the zero vector.
  PhotonState normalized() const;

  PhotonState& operator+=(const PhotonState& other);
  friend PhotonState operator+(PhotonState a, const PhotonState& b) { return a += b; }
  friend PhotonState operator-(const PhotonState& a, const PhotonState& b) {
    return PhotonState(a.amplitudes_ - b.amplitudes_);
  }
  friend PhotonState operator*(Complex c, const PhotonState& s) { return PhotonState(c * s.amplitudes_); }

  /// Entrywise comparison.
  bool approx_equal(const PhotonState& other, double tol = kExactTol) const;

 private:
  Vector8 amplitudes_;
};

/// Computational basis state with amplitude 1 at `label`.
PhotonState ket(const BasisLabel& label);

/// Tensor product pol (x) path (x) shape of three single-qubit kets.
PhotonState product(const Qubit& pol, const Qubit& path, const Qubit& shape);

/// Unnormalized linear combination. Throws std::invalid_argument on an empty list.
PhotonState superpose(std::span<const std::pair<Complex, PhotonState>> terms);
PhotonState superpose(std::initializer_list<std::pair<Complex, PhotonState>> terms);

/// <a|b>, conjugate-linear in `a`.
Complex inner(const PhotonState& a, const PhotonState& b);

/// Linear map on the 8-dimensional photon space.
class Operator {
 public:
  Operator() : matrix_(Matrix8::Zero()) {}
  explicit Operator(const Matrix8& matrix) : matrix_(matrix) {}

  static Operator identity() { return Operator(Matrix8::Identity()); }
  static Operator zero() { return Operator(); }
  /// |a><b|
  static Operator outer(const PhotonState& a, const PhotonState& b);
  /// |s><s| for normalized s.
  static Operator projector_onto(const PhotonState& s);

  const Matrix8& matrix() const { return matrix_; }
  Complex operator()(std::size_t row, std::size_t col) const {
    return matrix_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  }

  Operator adjoint() const { return Operator(matrix_.adjoint()); }
  double frobenius_norm() const { return matrix_.norm(); }

  bool is_unitary(double tol = kExactTol) const;
  bool is_hermitian(double tol = kExactTol) const;
  bool is_projector(double tol = kExactTol) const;
  bool approx_equal(const Operator& other, double tol = kExactTol) const;

  PhotonState operator*(const PhotonState& s) const { return PhotonState(matrix_ * s.amplitudes()); }
  friend Operator operator*(const Operator& a, const Operator& b) { return Operator(a.matrix_ * b.matrix_); }
  friend Operator operator+(const Operator& a, const Operator& b) { return Operator(a.matrix_ + b.matrix_); }
  friend Operator operator-(const Operator& a, const Operator& b) { return Operator(a.matrix_ - b.matrix_); }
  friend Operator operator*(Complex c, const Operator& a) { return Operator(c * a.matrix_); }

 private:
  Matrix8 matrix_;
};

/// ab - ba
Operator commutator(const Operator& a, const Operator& b);

/// Density matrix over an ordered list of distinct photon factors; the first
/// listed factor is the most significant index bit.
class DensityMatrix {
 public:
  /// Validates hermiticity, unit trace and positivity (tolerance kExactTol).
  /// Throws std::invalid_argument on failure.
  DensityMatrix(std::vector<Factor> factors, Eigen::MatrixXcd matrix);

  const std::vector<Factor>& factors() const { return factors_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  Complex trace() const { return matrix_.trace(); }
  /// Ascending eigenvalues.
  Eigen::VectorXd eigenvalues() const;

 private:
  std::vector<Factor> factors_;
  Eigen::MatrixXcd matrix_;
};

/// |s><s| over the full photon space. Throws std::invalid_argument if `s` is
/// not normalized within kInputTol.
DensityMatrix density_from_pure(const PhotonState& s);

/// |v><v| over the listed factors (v has dimension 2^factors.size()).
DensityMatrix density_from_pure(std::vector<Factor> factors, const Eigen::VectorXcd& v);

/// Traces out every factor of `rho` not listed in `keep`. The result keeps the
/// factor order of `rho`. Throws std::invalid_argument unless `keep` is a
/// nonempty strict subset of rho.factors() without repeats.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const Factor> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<Factor> keep);

}  // namespace wfsim
