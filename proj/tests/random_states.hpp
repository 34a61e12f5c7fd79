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

// Seeded generators for property-style tests.

#include <random>
#include <vector>

#include "wfsim/qstate.hpp"

namespace testgen {

inline wfsim::Complex gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return {n(rng), n(rng)};
}

inline wfsim::PhotonState random_state(std::mt19937_64& rng) {
  wfsim::Vector8 v;
  for (int i = 0; i < 8; ++i) v(i) = gaussian(rng);
  return wfsim::PhotonState(v / v.norm());
}

inline Eigen::VectorXcd random_vector(std::mt19937_64& rng, Eigen::Index dim) {
  Eigen::VectorXcd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = gaussian(rng);
  return v / v.norm();
}

// Random unitary from the QR decomposition of a Ginibre matrix.
inline wfsim::Operator random_unitary(std::mt19937_64& rng) {
  wfsim::Matrix8 g;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) g(i, j) = gaussian(rng);
  Eigen::HouseholderQR<wfsim::Matrix8> qr(g);
  return wfsim::Operator(qr.householderQ() * wfsim::Matrix8::Identity());
}

// Convex mixture of `terms` random pure states over `dim` dimensions.
inline Eigen::MatrixXcd random_density(std::mt19937_64& rng, Eigen::Index dim, int terms) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> w(static_cast<std::size_t>(terms));
  double total = 0.0;
  for (auto& x : w) total += (x = u(rng));
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  for (int t = 0; t < terms; ++t) {
    const Eigen::VectorXcd v = random_vector(rng, dim);
    rho += (w[static_cast<std::size_t>(t)] / total) * v * v.adjoint();
  }
  return 0.5 * (rho + rho.adjoint());
}

}  // namespace testgen
