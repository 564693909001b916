// Copyright 2026 The Compgame Authors.
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

#include "compgame/rational.hpp"

#include <cctype>
#include <ostream>

#include "compgame/errors.hpp"

namespace compgame {
namespace {

using boost::multiprecision::cpp_int;

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void bad(std::string_view text) {
  throw ArgumentError("malformed rational: '" + std::string(text) + "'");
}

}  // namespace

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) throw ArgumentError("rational with zero denominator");
  value_ = Backend(numerator);
  value_ /= Backend(denominator);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw ArgumentError("division by zero");
  value_ /= o.value_;
  return *this;
}

Rational Rational::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Backend value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    const auto num = body.substr(0, slash);
    const auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad(text);
    const cpp_int d{std::string(den)};
    if (d == 0) bad(text);
    value = Backend(cpp_int(std::string(num)), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    const auto whole = body.substr(0, dot);
    const auto frac = body.substr(dot + 1);
    if (!all_digits(whole) || !all_digits(frac)) bad(text);
    cpp_int scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    value = Backend(cpp_int(std::string(whole)) * scale + cpp_int(std::string(frac)),
                    scale);
  } else {
    if (!all_digits(body)) bad(text);
    value = Backend(cpp_int(std::string(body)));
  }
  return Rational(negative ? Backend(-value) : value);
}

std::string Rational::str() const {
  const auto& num = boost::multiprecision::numerator(value_);
  const auto& den = boost::multiprecision::denominator(value_);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string Rational::numerator_str() const {
  return boost::multiprecision::numerator(value_).str();
}

std::string Rational::denominator_str() const {
  return boost::multiprecision::denominator(value_).str();
}

bool Rational::is_dyadic() const {
  const cpp_int den = boost::multiprecision::denominator(value_);
  return (den & (den - 1)) == 0;
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

}  // namespace compgame
