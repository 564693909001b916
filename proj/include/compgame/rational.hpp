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

#ifndef COMPGAME_RATIONAL_HPP_
#define COMPGAME_RATIONAL_HPP_

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

namespace compgame {

// Exact arbitrary-precision rational number. All equilibrium verdicts and
// exact expected utilities are computed in this type; floating point only
// appears inside Monte Carlo estimates.
//
// Textual form is "p/q" (or "p" when q == 1), always in lowest terms with
// q > 0. `parse` additionally accepts finite decimals such as "0.25".
class Rational {
 public:
  using Backend = boost::multiprecision::cpp_rational;

  Rational() = default;
  Rational(std::int64_t value) : value_(value) {}  // NOLINT: implicit by design of a numeric type
  Rational(std::int64_t numerator, std::int64_t denominator);
  explicit Rational(Backend value) : value_(std::move(value)) {}

  // Throws ArgumentError on anything that is not "[-]p", "[-]p/q" or a
  // finite decimal "[-]d.ddd".
  static Rational parse(std::string_view text);

  std::string str() const;
  double to_double() const { return value_.convert_to<double>(); }

  std::string numerator_str() const;
  std::string denominator_str() const;

  // True iff the denominator is a power of two.
  bool is_dyadic() const;

  int sign() const { return value_.sign(); }
  bool is_zero() const { return value_.is_zero(); }
  Rational abs() const { return Rational(value_ < 0 ? Backend(-value_) : value_); }

  const Backend& backend() const { return value_; }

  Rational operator-() const { return Rational(Backend(-value_)); }
  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ == b.value_) return std::strong_ordering::equal;
    return std::strong_ordering::greater;
  }

 private:
  Backend value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

}  // namespace compgame

namespace Eigen {

template <>
struct NumTraits<compgame::Rational> : GenericNumTraits<compgame::Rational> {
  using Real = compgame::Rational;
  using NonInteger = compgame::Rational;
  using Nested = compgame::Rational;
  using Literal = compgame::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 8,
    MulCost = 16
  };
};

}  // namespace Eigen

#endif  // COMPGAME_RATIONAL_HPP_
