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

// Line-oriented text format (.wfc) for single-photon interferometer circuits.
//
//   # comment
//   source pol=D path=r shape=2
//   bs T=1/3
//   shaper arm=r map=2-1
//   rot arm=r angle=45
//   measure da-okfail
//
// Exactly one `source` line, then element lines, then one `measure` line.
// `measure` names a built-in basis (hv-path, da-okfail, da-okfail-prime) or
// introduces inline kets:
//
//   measure kets on=pol,path
//   ket plus = sqrt(1/2)*|H,r> + sqrt(1/2)*|V,r>
//   ket minus = sqrt(1/2)*|H,r> - sqrt(1/2)*|V,r>
//
// Coefficients are products of numbers, sqrt(number) and i. Ket slots follow
// the `on=` order; pol accepts H/V/D/A, path l/r, shape 1/2. Comments are
// not preserved by format(). Columns are 1-based byte offsets.

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wfsim/measure.hpp"
#include "wfsim/number.hpp"
#include "wfsim/optics.hpp"
#include "wfsim/qstate.hpp"

namespace wfsim {

enum class PolValue { H, V, D, A };

struct SourceSpec {
  PolValue pol = PolValue::H;
  Path path = Path::l;
  Shape shape = Shape::one;
  friend bool operator==(const SourceSpec&, const SourceSpec&) = default;
};

enum class NamedBasis { hv_path, da_okfail, da_okfail_prime };

struct CoefFactor {
  enum class Kind { number, sqrt, imag };
  Kind kind = Kind::number;
  Number value;  // unused for imag
  friend bool operator==(const CoefFactor&, const CoefFactor&) = default;
};

struct KetTerm {
  bool negative = false;
  std::vector<CoefFactor> coefficient;  // empty means 1
  std::vector<char> slots;              // one per measured factor
  friend bool operator==(const KetTerm&, const KetTerm&) = default;
};

struct InlineKet {
  std::string label;
  std::vector<KetTerm> terms;
  friend bool operator==(const InlineKet&, const InlineKet&) = default;
};

struct InlineBasis {
  std::vector<Factor> factors;
  std::vector<InlineKet> kets;
  friend bool operator==(const InlineBasis&, const InlineBasis&) = default;
};

using MeasureSpec = std::variant<NamedBasis, InlineBasis>;

struct Circuit {
  SourceSpec source;
  std::vector<ElementSpec> elements;
  MeasureSpec measurement = NamedBasis::hv_path;
  friend bool operator==(const Circuit&, const Circuit&) = default;
};

enum class ParseErrorKind { lex, syntax, semantic };

std::string to_string(ParseErrorKind kind);

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, int line, int column, std::string message);

  ParseErrorKind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  ParseErrorKind kind_;
  int line_;
  int column_;
  std::string message_;
};

/// Parses and validates a circuit. Throws ParseError.
Circuit parse(std::string_view text);

/// Canonical text, LF line endings. parse(format(c)) == c.
std::string format(const Circuit& c);

std::string to_string(NamedBasis b);
std::string to_string(PolValue p);

/// Built-in bases over (pol, path), shape untouched. The da-okfail bases are
/// the detector ports behind a balanced beam splitter and polarizing beam
/// splitters: port r reads "fail", port l reads "ok".
MeasurementBasis named_basis(NamedBasis b);

/// Kets of an inline basis. Throws std::invalid_argument when they are not
/// orthonormal.
MeasurementBasis build_inline_basis(const InlineBasis& b);

PhotonState source_state(const SourceSpec& s);

struct LoweredCircuit {
  PhotonState source;
  std::vector<Operator> operators;
  MeasurementBasis basis;
};

/// Total on circuits returned by parse().
LoweredCircuit lower(const Circuit& c);

/// compose(operators) applied to the source, then measured. With no
/// elements the source is measured directly.
OutcomeDistribution run(const LoweredCircuit& lowered);

}  // namespace wfsim
