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

#include "wfsim/optics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

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

// Embeds a 2x2 block on `target`, restricted to basis rows/cols where
// `active` holds; identity elsewhere.
template <typename Pred>
Operator embed(Factor target, const Eigen::Matrix2cd& u, Pred active) {
  Matrix8 m = Matrix8::Zero();
  for (std::size_t i = 0; i < kPhotonDim; ++i) {
    const auto bi = BasisLabel::from_index(i);
    for (std::size_t j = 0; j < kPhotonDim; ++j) {
      const auto bj = BasisLabel::from_index(j);
      bool others_match = true;
      for (Factor f : kAllFactors)
        if (f != target && bit_of(bi, f) != bit_of(bj, f)) others_match = false;
      if (!others_match) continue;
      const auto row = static_cast<Eigen::Index>(i);
      const auto col = static_cast<Eigen::Index>(j);
      if (active(bj))
        m(row, col) = u(bit_of(bi, target), bit_of(bj, target));
      else
        m(row, col) = (i == j) ? 1.0 : 0.0;
    }
  }
  return Operator(m);
}

}  // namespace

void validate(const ElementSpec& spec) {
  std::visit(
      [](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, BeamSplitterSpec>) {
          const double t = e.transmission.value();
          if (!(t >= 0.0 && t <= 1.0))
            throw std::out_of_range("transmission " + e.transmission.to_string() + " outside [0, 1]");
        } else if constexpr (std::is_same_v<T, PolRotatorSpec>) {
          const double a = e.angle_degrees.value();
          if (!(a > -180.0 && a <= 180.0))
            throw std::out_of_range("angle " + e.angle_degrees.to_string() + " outside (-180, 180]");
        }
      },
      spec);
}

Operator to_operator(const ElementSpec& spec) {
  validate(spec);
  return std::visit(
      [](const auto& e) -> Operator {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, BeamSplitterSpec>)
          return beam_splitter(e.transmission.value());
        else if constexpr (std::is_same_v<T, ModeShaperSpec>)
          return mode_shaper(e.arm, e.map);
        else
          return pol_rotator(e.arm, e.angle_degrees.value());
      },
      spec);
}

Eigen::Matrix2cd beam_splitter_block(double transmission) {
  const double t = std::sqrt(transmission);
  const double rfl = std::sqrt(1.0 - transmission);
  Eigen::Matrix2cd b;
  // rows/cols: l, r
  b << -t, rfl,
       rfl, t;
  return b;
}

Operator on_factor(Factor factor, const Eigen::Matrix2cd& u) {
  return embed(factor, u, [](const BasisLabel&) { return true; });
}

Operator conditioned_on_path(Path arm, Factor target, const Eigen::Matrix2cd& u) {
  if (target == Factor::path) throw std::invalid_argument("path cannot condition itself");
  return embed(target, u, [arm](const BasisLabel& b) { return b.path == arm; });
}

Operator beam_splitter(double transmission) {
  if (!(transmission >= 0.0 && transmission <= 1.0))
    throw std::out_of_range("beam splitter transmission outside [0, 1]");
  return on_factor(Factor::path, beam_splitter_block(transmission));
}

Operator mode_shaper(Path arm, ShapeMap /*map*/) {
  Eigen::Matrix2cd swap;
  swap << 0.0, 1.0,
          1.0, 0.0;
  return conditioned_on_path(arm, Factor::shape, swap);
}

Operator pol_rotator(Path arm, double angle_degrees) {
  const double theta = angle_degrees * std::numbers::pi / 180.0;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Eigen::Matrix2cd rot;
  // rows/cols: H, V
  rot << c, -s,
         s, c;
  return conditioned_on_path(arm, Factor::pol, rot);
}

PhotonState apply(const Operator& op, const PhotonState& s) {
  if (!op.is_unitary(kInputTol)) throw std::invalid_argument("apply: operator is not unitary");
  return op * s;
}

Operator compose(std::span<const Operator> ops) {
  if (ops.empty()) throw std::invalid_argument("compose: empty operator list");
  Operator total = ops.front();
  for (std::size_t i = 1; i < ops.size(); ++i) total = ops[i] * total;
  return total;
}

Operator compose(std::initializer_list<Operator> ops) {
  return compose(std::span<const Operator>(ops.begin(), ops.size()));
}

}  // namespace wfsim
