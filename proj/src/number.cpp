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

#include "wfsim/number.hpp"

#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <system_error>

namespace wfsim {

Number Number::rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  Number n;
  n.rational_ = true;
  n.num_ = g ? num / g : num;
  n.den_ = g ? den / g : den;
  return n;
}

Number Number::decimal(double value) {
  Number n;
  n.value_ = value;
  return n;
}

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::optional<std::int64_t> parse_int(std::string_view s) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

std::optional<Number> Number::parse(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::string_view body = text;
  bool negative = false;
  if (body.front() == '+' || body.front() == '-') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  if (body.empty()) return std::nullopt;

  if (const auto slash = body.find('/'); slash != std::string_view::npos) {
    const auto num_text = body.substr(0, slash);
    const auto den_text = body.substr(slash + 1);
    auto all_digits = [](std::string_view s) {
      if (s.empty()) return false;
      for (char c : s)
        if (!is_digit(c)) return false;
      return true;
    };
    if (!all_digits(num_text) || !all_digits(den_text)) return std::nullopt;
    const auto num = parse_int(num_text);
    const auto den = parse_int(den_text);
    if (!num || !den) return std::nullopt;
    if (*den == 0) return std::nullopt;
    return rational(negative ? -*num : *num, *den);
  }

  // from_chars accepts "inf"/"nan"; require a digit up front.
  if (!is_digit(body.front()) && !(body.front() == '.' && body.size() > 1 && is_digit(body[1]))) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v, std::chars_format::general);
  if (ec != std::errc() || ptr != body.data() + body.size() || !std::isfinite(v)) return std::nullopt;
  return decimal(negative ? -v : v);
}

std::string Number::to_string() const {
  if (rational_) return std::to_string(num_) + "/" + std::to_string(den_);
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value_);
  return std::string(buf, ptr);
}

bool operator==(const Number& a, const Number& b) {
  if (a.rational_ != b.rational_) return false;
  if (a.rational_) return a.num_ == b.num_ && a.den_ == b.den_;
  return a.value_ == b.value_;
}

}  // namespace wfsim
