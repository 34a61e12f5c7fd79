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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace wfsim {

/// A real literal that remembers whether it was written as a rational `p/q`
/// or as a decimal, so it can be printed back in the same form.
class Number {
 public:
  Number() = default;

  /// Reduced to lowest terms with a positive denominator. Throws
  /// std::invalid_argument when den == 0.
  static Number rational(std::int64_t num, std::int64_t den);
  static Number decimal(double value);

  /// `[+-]digits/digits` or a decimal with optional exponent. Returns nullopt
  /// when the text is not a complete, finite number literal (including `p/0`).
  static std::optional<Number> parse(std::string_view text);

  bool is_rational() const { return rational_; }
  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return den_; }
  double value() const { return rational_ ? static_cast<double>(num_) / static_cast<double>(den_) : value_; }

  /// `1/3` for rationals, shortest round-trip decimal otherwise.
  std::string to_string() const;

  friend bool operator==(const Number& a, const Number& b);

 private:
  bool rational_ = false;
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  double value_ = 0.0;
};

}  // namespace wfsim
