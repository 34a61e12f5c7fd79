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

// Unitaries for the optical elements of the interferometer.
//
// Conventions:
//  * Beam splitter (path only, real orthogonal):
//      |r> -> sqrt(T)|r> + sqrt(1-T)|l>,   |l> -> sqrt(1-T)|r> - sqrt(T)|l>
//    Self-inverse; all scenario amplitudes stay real.
//  * Mode shaper: full swap of shape 1 <-> 2 on one arm. The nominal
//    direction (1->2 or 2->1) is descriptive only; the swap realizes both.
//  * Polarization rotator on one arm: |H> -> cos|H> + sin|V>,
//    |V> -> -sin|H> + cos|V>. R(45 deg)|D> = |V>.

#include <span>
#include <variant>
#include <vector>

#include "wfsim/number.hpp"
#include "wfsim/qstate.hpp"

namespace wfsim {

enum class ShapeMap { one_to_two, two_to_one };

struct BeamSplitterSpec {
  Number transmission;
  friend bool operator==(const BeamSplitterSpec&, const BeamSplitterSpec&) = default;
};

struct ModeShaperSpec {
  Path arm = Path::r;
  ShapeMap map = ShapeMap::two_to_one;
  friend bool operator==(const ModeShaperSpec&, const ModeShaperSpec&) = default;
};

struct PolRotatorSpec {
  Path arm = Path::r;
  Number angle_degrees;
  friend bool operator==(const PolRotatorSpec&, const PolRotatorSpec&) = default;
};

using ElementSpec = std::variant<BeamSplitterSpec, ModeShaperSpec, PolRotatorSpec>;

/// Throws std::out_of_range when transmission is outside [0, 1] or the angle
/// is outside (-180, 180].
void validate(const ElementSpec& spec);

Operator to_operator(const ElementSpec& spec);

/// 2x2 path block in (l, r) order.
Eigen::Matrix2cd beam_splitter_block(double transmission);

/// Acts on `factor` with `u`, identity on the other two factors.
Operator on_factor(Factor factor, const Eigen::Matrix2cd& u);

/// Acts on `target` with `u` when the path equals `arm`, identity otherwise.
Operator conditioned_on_path(Path arm, Factor target, const Eigen::Matrix2cd& u);

/// Throws std::out_of_range unless 0 <= transmission <= 1.
Operator beam_splitter(double transmission);
Operator mode_shaper(Path arm, ShapeMap map = ShapeMap::two_to_one);
Operator pol_rotator(Path arm, double angle_degrees);

/// Matrix-vector product. Throws std::invalid_argument when `op` is not
/// unitary within kInputTol.
PhotonState apply(const Operator& op, const PhotonState& s);

/// Product with the first listed element applied first. Throws
/// std::invalid_argument on an empty list.
Operator compose(std::span<const Operator> ops);
Operator compose(std::initializer_list<Operator> ops);

}  // namespace wfsim
