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

#include "wfsim/circuit.hpp"

#include <cctype>
#include <cmath>
#include <optional>
#include <sstream>

namespace wfsim {

std::string to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::lex:
      return "lex";
    case ParseErrorKind::syntax:
      return "syntax";
    case ParseErrorKind::semantic:
      return "semantic";
  }
  return "?";
}

ParseError::ParseError(ParseErrorKind kind, int line, int column, std::string message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + to_string(kind) +
                         " error: " + message),
      kind_(kind),
      line_(line),
      column_(column),
      message_(std::move(message)) {}

std::string to_string(NamedBasis b) {
  switch (b) {
    case NamedBasis::hv_path:
      return "hv-path";
    case NamedBasis::da_okfail:
      return "da-okfail";
    case NamedBasis::da_okfail_prime:
      return "da-okfail-prime";
  }
  return "?";
}

std::string to_string(PolValue p) {
  switch (p) {
    case PolValue::H:
      return "H";
    case PolValue::V:
      return "V";
    case PolValue::D:
      return "D";
    case PolValue::A:
      return "A";
  }
  return "?";
}

namespace {

Qubit pol_qubit(PolValue p) {
  switch (p) {
    case PolValue::H:
      return qubit::H();
    case PolValue::V:
      return qubit::V();
    case PolValue::D:
      return qubit::D();
    case PolValue::A:
      return qubit::A();
  }
  return qubit::H();
}

std::optional<PolValue> pol_from(std::string_view s) {
  if (s == "H") return PolValue::H;
  if (s == "V") return PolValue::V;
  if (s == "D") return PolValue::D;
  if (s == "A") return PolValue::A;
  return std::nullopt;
}

std::optional<Path> path_from(std::string_view s) {
  if (s == "l") return Path::l;
  if (s == "r") return Path::r;
  return std::nullopt;
}

std::optional<Shape> shape_from(std::string_view s) {
  if (s == "1") return Shape::one;
  if (s == "2") return Shape::two;
  return std::nullopt;
}

std::optional<Factor> factor_from(std::string_view s) {
  if (s == "pol") return Factor::pol;
  if (s == "path") return Factor::path;
  if (s == "shape") return Factor::shape;
  return std::nullopt;
}

// Single-qubit ket for a slot character of `factor`, or nullopt.
std::optional<Qubit> slot_qubit(Factor factor, char c) {
  const std::string_view s(&c, 1);
  switch (factor) {
    case Factor::pol:
      if (auto p = pol_from(s)) return pol_qubit(*p);
      break;
    case Factor::path:
      if (auto p = path_from(s)) return *p == Path::l ? qubit::l() : qubit::r();
      break;
    case Factor::shape:
      if (auto p = shape_from(s)) return *p == Shape::one ? qubit::shape1() : qubit::shape2();
      break;
  }
  return std::nullopt;
}

Eigen::VectorXcd kron(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  Eigen::VectorXcd out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Complex coefficient_value(const KetTerm& t) {
  Complex c = t.negative ? -1.0 : 1.0;
  for (const auto& f : t.coefficient) {
    switch (f.kind) {
      case CoefFactor::Kind::number:
        c *= f.value.value();
        break;
      case CoefFactor::Kind::sqrt:
        c *= std::sqrt(f.value.value());
        break;
      case CoefFactor::Kind::imag:
        c *= Complex(0.0, 1.0);
        break;
    }
  }
  return c;
}

Eigen::VectorXcd inline_ket_vector(const std::vector<Factor>& factors, const InlineKet& k) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << factors.size());
  for (const auto& t : k.terms) {
    Eigen::VectorXcd prod = Eigen::VectorXcd::Ones(1);
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const auto q = slot_qubit(factors[i], t.slots.at(i));
      if (!q) throw std::invalid_argument("invalid slot '" + std::string(1, t.slots[i]) + "'");
      prod = kron(prod, *q);
    }
    v += coefficient_value(t) * prod;
  }
  return v;
}

std::string format_coefficient(const KetTerm& t) {
  std::string out;
  for (std::size_t i = 0; i < t.coefficient.size(); ++i) {
    if (i) out += "*";
    const auto& f = t.coefficient[i];
    switch (f.kind) {
      case CoefFactor::Kind::number:
        out += f.value.to_string();
        break;
      case CoefFactor::Kind::sqrt:
        out += "sqrt(" + f.value.to_string() + ")";
        break;
      case CoefFactor::Kind::imag:
        out += "i";
        break;
    }
  }
  if (!out.empty()) out += "*";
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

struct Field {
  std::string_view text;
  int column;  // 1-based
};

class LineParser {
 public:
  LineParser(std::string_view line, int line_no) : line_(line), line_no_(line_no) {}

  [[noreturn]] void fail(ParseErrorKind kind, int column, const std::string& msg) const {
    throw ParseError(kind, line_no_, column, msg);
  }

  std::vector<Field> fields() const {
    std::vector<Field> out;
    std::size_t i = 0;
    while (i < line_.size()) {
      while (i < line_.size() && is_space(line_[i])) ++i;
      if (i >= line_.size()) break;
      const std::size_t start = i;
      while (i < line_.size() && !is_space(line_[i])) ++i;
      out.push_back({line_.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return out;
  }

  static bool is_space(char c) { return c == ' ' || c == '\t'; }

 protected:
  std::string_view line_;
  int line_no_;
};

struct KeyValue {
  std::string_view key;
  std::string_view value;
  int column;        // of the key
  int value_column;  // of the value
};

// Cursor over the right-hand side of a `ket` line.
class KetExprParser : LineParser {
 public:
  KetExprParser(std::string_view line, int line_no, std::size_t pos, std::size_t nslots)
      : LineParser(line, line_no), pos_(pos), nslots_(nslots) {}

  std::vector<KetTerm> parse() {
    std::vector<KetTerm> terms;
    skip_ws();
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = get() == '-';
      skip_ws();
    }
    terms.push_back(term(negative));
    for (;;) {
      skip_ws();
      if (at_end()) break;
      const char c = peek();
      if (c != '+' && c != '-') fail(ParseErrorKind::syntax, col(), std::string("expected '+' or '-' between terms"));
      get();
      skip_ws();
      terms.push_back(term(c == '-'));
    }
    return terms;
  }

 private:
  std::size_t pos_;
  std::size_t nslots_;

  bool at_end() const { return pos_ >= line_.size(); }
  char peek() const { return at_end() ? '\0' : line_[pos_]; }
  char get() { return line_[pos_++]; }
  int col() const { return static_cast<int>(std::min(pos_, line_.size() ? line_.size() - 1 : 0)) + 1; }
  void skip_ws() {
    while (!at_end() && is_space(peek())) ++pos_;
  }

  static bool number_char(char c) {
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '/' || c == 'e' || c == 'E';
  }

  Number number() {
    const std::size_t start = pos_;
    while (!at_end()) {
      const char c = peek();
      if (number_char(c)) {
        ++pos_;
      } else if ((c == '+' || c == '-') && pos_ > start && (line_[pos_ - 1] == 'e' || line_[pos_ - 1] == 'E')) {
        ++pos_;
      } else {
        break;
      }
    }
    const auto text = line_.substr(start, pos_ - start);
    const int column = static_cast<int>(start) + 1;
    if (text.empty()) fail(ParseErrorKind::syntax, column, "expected a number");
    const auto n = Number::parse(text);
    if (!n) fail(ParseErrorKind::lex, column, "unparseable number '" + std::string(text) + "'");
    return *n;
  }

  CoefFactor factor() {
    const int column = col();
    if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') return {CoefFactor::Kind::number, number()};
    if (line_.substr(pos_, 4) == "sqrt") {
      pos_ += 4;
      skip_ws();
      if (peek() != '(') fail(ParseErrorKind::syntax, col(), "expected '(' after sqrt");
      get();
      skip_ws();
      const int num_col = col();
      const Number n = number();
      if (n.value() < 0.0) fail(ParseErrorKind::semantic, num_col, "sqrt of a negative number");
      skip_ws();
      if (peek() != ')') fail(ParseErrorKind::syntax, col(), "expected ')'");
      get();
      return {CoefFactor::Kind::sqrt, n};
    }
    if (peek() == 'i') {
      get();
      return {CoefFactor::Kind::imag, Number{}};
    }
    if (at_end()) fail(ParseErrorKind::syntax, column, "expected a coefficient or ket");
    if (std::isalpha(static_cast<unsigned char>(peek()))) fail(ParseErrorKind::syntax, column, "unknown coefficient");
    fail(ParseErrorKind::lex, column, std::string("unexpected character '") + peek() + "'");
  }

  KetTerm term(bool negative) {
    KetTerm t;
    t.negative = negative;
    while (peek() != '|') {
      t.coefficient.push_back(factor());
      skip_ws();
      if (peek() == '*') {
        get();
        skip_ws();
      } else if (peek() != '|') {
        fail(ParseErrorKind::syntax, col(), "expected '*' or '|'");
      }
    }
    const int ket_col = col();
    get();  // '|'
    const std::size_t close = line_.find('>', pos_);
    if (close == std::string_view::npos) fail(ParseErrorKind::syntax, ket_col, "unterminated ket, expected '>'");
    std::string_view inside = line_.substr(pos_, close - pos_);
    std::size_t slot_pos = pos_;
    pos_ = close + 1;

    while (true) {
      const std::size_t comma = inside.find(',');
      std::string_view slot = inside.substr(0, comma);
      std::size_t lead = 0;
      while (lead < slot.size() && is_space(slot[lead])) ++lead;
      std::size_t len = slot.size();
      while (len > lead && is_space(slot[len - 1])) --len;
      const int slot_col = static_cast<int>(slot_pos + lead) + 1;
      if (len - lead != 1) fail(ParseErrorKind::syntax, len > lead ? slot_col : ket_col, "ket slots are single characters");
      t.slots.push_back(slot[lead]);
      if (comma == std::string_view::npos) break;
      inside.remove_prefix(comma + 1);
      slot_pos += comma + 1;
    }
    if (t.slots.size() != nslots_)
      fail(ParseErrorKind::semantic, ket_col,
           "ket has " + std::to_string(t.slots.size()) + " slots, basis measures " + std::to_string(nslots_));
    return t;
  }
};

class CircuitParser {
 public:
  explicit CircuitParser(std::string_view text) : text_(text) {}

  Circuit parse() {
    if (text_.substr(0, 3) == "\xEF\xBB\xBF") text_.remove_prefix(3);
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text_.size()) {
      const std::size_t nl = text_.find('\n', pos);
      std::string_view line = text_.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      handle_line(line, line_no);
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
    const int last_line = std::max(1, line_no);
    if (!have_source_) throw ParseError(ParseErrorKind::semantic, last_line, 1, "missing 'source' line");
    if (!have_measure_) throw ParseError(ParseErrorKind::semantic, last_line, 1, "missing 'measure' line");
    if (auto* inl = std::get_if<InlineBasis>(&circuit_.measurement)) {
      if (inl->kets.empty()) throw ParseError(ParseErrorKind::semantic, measure_line_, 1, "inline basis has no kets");
      for (std::size_t n = 1; n <= inl->kets.size(); ++n) {
        InlineBasis prefix{inl->factors, {inl->kets.begin(), inl->kets.begin() + static_cast<std::ptrdiff_t>(n)}};
        try {
          build_inline_basis(prefix);
        } catch (const std::invalid_argument& e) {
          throw ParseError(ParseErrorKind::semantic, ket_lines_[n - 1], ket_label_cols_[n - 1], e.what());
        }
      }
    }
    return circuit_;
  }

 private:
  std::string_view text_;
  Circuit circuit_;
  bool have_source_ = false;
  bool have_measure_ = false;
  int measure_line_ = 0;
  std::vector<int> ket_lines_;
  std::vector<int> ket_label_cols_;

  static std::vector<KeyValue> key_values(const LineParser& lp, const std::vector<Field>& fields,
                                          std::initializer_list<std::string_view> allowed) {
    std::vector<KeyValue> out;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      const auto& f = fields[i];
      const auto eq = f.text.find('=');
      if (eq == std::string_view::npos || eq == 0)
        lp.fail(ParseErrorKind::syntax, f.column, "expected key=value, got '" + std::string(f.text) + "'");
      const auto key = f.text.substr(0, eq);
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
        lp.fail(ParseErrorKind::syntax, f.column, "unknown parameter '" + std::string(key) + "'");
      for (const auto& kv : out)
        if (kv.key == key) lp.fail(ParseErrorKind::syntax, f.column, "duplicate parameter '" + std::string(key) + "'");
      out.push_back({key, f.text.substr(eq + 1), f.column, f.column + static_cast<int>(eq) + 1});
    }
    for (auto key : allowed) {
      bool found = false;
      for (const auto& kv : out) found = found || kv.key == key;
      if (!found) lp.fail(ParseErrorKind::syntax, fields[0].column, "missing parameter '" + std::string(key) + "'");
    }
    return out;
  }

  static const KeyValue& get(const std::vector<KeyValue>& kvs, std::string_view key) {
    for (const auto& kv : kvs)
      if (kv.key == key) return kv;
    throw std::logic_error("missing key");
  }

  static Number number_value(const LineParser& lp, const KeyValue& kv) {
    const auto n = Number::parse(kv.value);
    if (!n) lp.fail(ParseErrorKind::lex, kv.column, "unparseable number '" + std::string(kv.value) + "'");
    return *n;
  }

  template <typename T, typename F>
  static T enum_value(const LineParser& lp, const KeyValue& kv, F from, const char* expected) {
    const auto v = from(kv.value);
    if (!v)
      lp.fail(ParseErrorKind::semantic, kv.column,
              "invalid " + std::string(kv.key) + " '" + std::string(kv.value) + "', expected " + expected);
    return *v;
  }

  void require_element_position(const LineParser& lp, const Field& kw) const {
    if (!have_source_) lp.fail(ParseErrorKind::syntax, kw.column, "element before 'source'");
    if (have_measure_) lp.fail(ParseErrorKind::syntax, kw.column, "element after 'measure'");
  }

  void handle_line(std::string_view line, int line_no) {
    const LineParser lp(line, line_no);
    const auto fields = lp.fields();
    if (fields.empty()) return;
    const auto& kw = fields[0];

    if (kw.text == "source") {
      if (have_source_) lp.fail(ParseErrorKind::semantic, kw.column, "duplicate 'source' line");
      if (have_measure_ || !circuit_.elements.empty())
        lp.fail(ParseErrorKind::syntax, kw.column, "'source' must be the first statement");
      const auto kvs = key_values(lp, fields, {"pol", "path", "shape"});
      circuit_.source.pol = enum_value<PolValue>(lp, get(kvs, "pol"), pol_from, "H, V, D or A");
      circuit_.source.path = enum_value<Path>(lp, get(kvs, "path"), path_from, "l or r");
      circuit_.source.shape = enum_value<Shape>(lp, get(kvs, "shape"), shape_from, "1 or 2");
      have_source_ = true;
    } else if (kw.text == "bs") {
      require_element_position(lp, kw);
      const auto kvs = key_values(lp, fields, {"T"});
      const auto& t = get(kvs, "T");
      BeamSplitterSpec spec{number_value(lp, t)};
      check_range(lp, t, spec);
      circuit_.elements.emplace_back(spec);
    } else if (kw.text == "shaper") {
      require_element_position(lp, kw);
      const auto kvs = key_values(lp, fields, {"arm", "map"});
      ModeShaperSpec spec;
      spec.arm = enum_value<Path>(lp, get(kvs, "arm"), path_from, "l or r");
      spec.map = enum_value<ShapeMap>(
          lp, get(kvs, "map"),
          [](std::string_view s) -> std::optional<ShapeMap> {
            if (s == "1-2") return ShapeMap::one_to_two;
            if (s == "2-1") return ShapeMap::two_to_one;
            return std::nullopt;
          },
          "1-2 or 2-1");
      circuit_.elements.emplace_back(spec);
    } else if (kw.text == "rot") {
      require_element_position(lp, kw);
      const auto kvs = key_values(lp, fields, {"arm", "angle"});
      PolRotatorSpec spec;
      spec.arm = enum_value<Path>(lp, get(kvs, "arm"), path_from, "l or r");
      const auto& a = get(kvs, "angle");
      spec.angle_degrees = number_value(lp, a);
      check_range(lp, a, spec);
      circuit_.elements.emplace_back(spec);
    } else if (kw.text == "measure") {
      if (have_measure_) lp.fail(ParseErrorKind::semantic, kw.column, "duplicate 'measure' line");
      if (!have_source_) lp.fail(ParseErrorKind::syntax, kw.column, "'measure' before 'source'");
      if (fields.size() < 2) lp.fail(ParseErrorKind::syntax, kw.column, "'measure' needs a basis name");
      const auto& name = fields[1];
      if (name.text == "kets") {
        if (fields.size() != 3) lp.fail(ParseErrorKind::syntax, kw.column, "expected 'measure kets on=<factors>'");
        const auto kvs = key_values(lp, {fields[0], fields[2]}, {"on"});
        circuit_.measurement = InlineBasis{parse_factor_list(lp, get(kvs, "on")), {}};
      } else {
        if (fields.size() != 2)
          lp.fail(ParseErrorKind::syntax, fields[2].column, "unexpected '" + std::string(fields[2].text) + "'");
        if (name.text == "hv-path")
          circuit_.measurement = NamedBasis::hv_path;
        else if (name.text == "da-okfail")
          circuit_.measurement = NamedBasis::da_okfail;
        else if (name.text == "da-okfail-prime")
          circuit_.measurement = NamedBasis::da_okfail_prime;
        else
          lp.fail(ParseErrorKind::syntax, name.column, "unknown basis '" + std::string(name.text) + "'");
      }
      have_measure_ = true;
      measure_line_ = line_no;
    } else if (kw.text == "ket") {
      auto* inl = std::get_if<InlineBasis>(&circuit_.measurement);
      if (!have_measure_ || !inl) lp.fail(ParseErrorKind::syntax, kw.column, "'ket' outside 'measure kets'");
      parse_ket(line, line_no, kw, *inl);
    } else {
      lp.fail(ParseErrorKind::syntax, kw.column, "unknown keyword '" + std::string(kw.text) + "'");
    }
  }

  template <typename Spec>
  static void check_range(const LineParser& lp, const KeyValue& kv, const Spec& spec) {
    try {
      validate(ElementSpec{spec});
    } catch (const std::out_of_range& e) {
      lp.fail(ParseErrorKind::semantic, kv.column, e.what());
    }
  }

  static std::vector<Factor> parse_factor_list(const LineParser& lp, const KeyValue& kv) {
    std::vector<Factor> out;
    std::string_view rest = kv.value;
    int column = kv.value_column;
    while (true) {
      const auto comma = rest.find(',');
      const auto name = rest.substr(0, comma);
      const auto f = factor_from(name);
      if (!f) lp.fail(ParseErrorKind::semantic, column, "unknown factor '" + std::string(name) + "'");
      if (std::find(out.begin(), out.end(), *f) != out.end())
        lp.fail(ParseErrorKind::semantic, column, "repeated factor '" + std::string(name) + "'");
      out.push_back(*f);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
      column += static_cast<int>(comma) + 1;
    }
    return out;
  }

  void parse_ket(std::string_view line, int line_no, const Field& kw, InlineBasis& basis) {
    const LineParser lp(line, line_no);
    std::size_t pos = static_cast<std::size_t>(kw.column - 1) + kw.text.size();
    while (pos < line.size() && LineParser::is_space(line[pos])) ++pos;
    const std::size_t label_start = pos;
    while (pos < line.size() && !LineParser::is_space(line[pos]) && line[pos] != '=') ++pos;
    const int label_col = static_cast<int>(label_start) + 1;
    if (pos == label_start) lp.fail(ParseErrorKind::syntax, kw.column, "'ket' needs a label");
    InlineKet k;
    k.label = std::string(line.substr(label_start, pos - label_start));
    for (const auto& other : basis.kets)
      if (other.label == k.label) lp.fail(ParseErrorKind::semantic, label_col, "duplicate ket label '" + k.label + "'");
    while (pos < line.size() && LineParser::is_space(line[pos])) ++pos;
    if (pos >= line.size() || line[pos] != '=')
      lp.fail(ParseErrorKind::syntax, static_cast<int>(std::min(pos, line.size() - 1)) + 1, "expected '='");
    ++pos;
    KetExprParser expr(line, line_no, pos, basis.factors.size());
    k.terms = expr.parse();
    for (const auto& t : k.terms)
      for (std::size_t i = 0; i < t.slots.size(); ++i)
        if (!slot_qubit(basis.factors[i], t.slots[i]))
          lp.fail(ParseErrorKind::semantic, label_col,
                  "invalid " + to_string(basis.factors[i]) + " value '" + std::string(1, t.slots[i]) + "'");
    basis.kets.push_back(std::move(k));
    ket_lines_.push_back(line_no);
    ket_label_cols_.push_back(label_col);
  }
};

}  // namespace

Circuit parse(std::string_view text) { return CircuitParser(text).parse(); }

std::string format(const Circuit& c) {
  std::ostringstream out;
  out << "source pol=" << to_string(c.source.pol) << " path=" << to_string(c.source.path)
      << " shape=" << to_string(c.source.shape) << "\n";
  for (const auto& e : c.elements) {
    std::visit(
        [&out](const auto& spec) {
          using T = std::decay_t<decltype(spec)>;
          if constexpr (std::is_same_v<T, BeamSplitterSpec>) {
            out << "bs T=" << spec.transmission.to_string() << "\n";
          } else if constexpr (std::is_same_v<T, ModeShaperSpec>) {
            out << "shaper arm=" << to_string(spec.arm)
                << " map=" << (spec.map == ShapeMap::one_to_two ? "1-2" : "2-1") << "\n";
          } else {
            out << "rot arm=" << to_string(spec.arm) << " angle=" << spec.angle_degrees.to_string() << "\n";
          }
        },
        e);
  }
  if (const auto* named = std::get_if<NamedBasis>(&c.measurement)) {
    out << "measure " << to_string(*named) << "\n";
  } else {
    const auto& inl = std::get<InlineBasis>(c.measurement);
    out << "measure kets on=";
    for (std::size_t i = 0; i < inl.factors.size(); ++i) out << (i ? "," : "") << to_string(inl.factors[i]);
    out << "\n";
    for (const auto& k : inl.kets) {
      out << "ket " << k.label << " =";
      for (std::size_t i = 0; i < k.terms.size(); ++i) {
        const auto& t = k.terms[i];
        if (i == 0)
          out << (t.negative ? " -" : " ");
        else
          out << (t.negative ? " - " : " + ");
        out << format_coefficient(t) << "|";
        for (std::size_t s = 0; s < t.slots.size(); ++s) out << (s ? "," : "") << t.slots[s];
        out << ">";
      }
      out << "\n";
    }
  }
  return out.str();
}

MeasurementBasis named_basis(NamedBasis b) {
  std::vector<BasisElement> elements;
  if (b == NamedBasis::hv_path) {
    const std::pair<const char*, Qubit> pols[] = {{"H", qubit::H()}, {"V", qubit::V()}};
    const std::pair<const char*, Qubit> paths[] = {{"l", qubit::l()}, {"r", qubit::r()}};
    for (const auto& [pn, pq] : pols)
      for (const auto& [an, aq] : paths) elements.push_back({std::string(pn) + "," + an, kron(pq, aq)});
  } else {
    // Detector ports behind the balanced beam splitter, pulled back to the
    // path basis in front of it: port k sees B^dagger |k>.
    const Eigen::Matrix2cd bs = beam_splitter_block(0.5);
    const Qubit fail_port = bs.adjoint() * qubit::r();
    const Qubit ok_port = bs.adjoint() * qubit::l();
    const std::string suffix = b == NamedBasis::da_okfail_prime ? "'" : "";
    const std::pair<const char*, Qubit> pols[] = {{"D", qubit::D()}, {"A", qubit::A()}};
    for (const auto& [pn, pq] : pols) {
      elements.push_back({std::string(pn) + ",fail" + suffix, kron(pq, fail_port)});
      elements.push_back({std::string(pn) + ",ok" + suffix, kron(pq, ok_port)});
    }
  }
  return MeasurementBasis({Factor::pol, Factor::path}, std::move(elements));
}

MeasurementBasis build_inline_basis(const InlineBasis& b) {
  std::vector<BasisElement> elements;
  for (const auto& k : b.kets) elements.push_back({k.label, inline_ket_vector(b.factors, k)});
  return MeasurementBasis(b.factors, std::move(elements));
}

PhotonState source_state(const SourceSpec& s) {
  return product(pol_qubit(s.pol), s.path == Path::l ? qubit::l() : qubit::r(),
                 s.shape == Shape::one ? qubit::shape1() : qubit::shape2());
}

LoweredCircuit lower(const Circuit& c) {
  std::vector<Operator> ops;
  ops.reserve(c.elements.size());
  for (const auto& e : c.elements) ops.push_back(to_operator(e));
  const auto* named = std::get_if<NamedBasis>(&c.measurement);
  return {source_state(c.source), std::move(ops),
          named ? named_basis(*named) : build_inline_basis(std::get<InlineBasis>(c.measurement))};
}

OutcomeDistribution run(const LoweredCircuit& lowered) {
  const PhotonState out =
      lowered.operators.empty() ? lowered.source : apply(compose(lowered.operators), lowered.source);
  return born_probabilities(out, lowered.basis);
}

}  // namespace wfsim
