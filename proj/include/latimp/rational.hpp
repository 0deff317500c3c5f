#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace latimp {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVec = std::vector<std::int64_t>;
using RatVec = std::vector<Rational>;

// Accepts "p", "p/q", decimal "1.25" and "1e-3" forms; decimals are read exactly.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

// Exact binary value of a finite double.
Rational rational_from_double(double x);
double to_double(const Rational& q);

Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);
// Nearest integer, halves rounded up.
Integer round_of(const Rational& q);

std::int64_t to_int64(const Integer& z);
bool fits_int64(const Integer& z);

// Largest integer s with s*s <= z (z >= 0).
Integer isqrt(const Integer& z);
// Exact square root when q is the square of a rational.
bool rational_sqrt(const Rational& q, Rational& out);

Rational dot(const RatVec& a, const RatVec& b);
bool is_zero(const RatVec& v);

// A nonnegative real stored through its exact rational square.
class SqrtRational {
 public:
  SqrtRational() = default;
  explicit SqrtRational(Rational square);
  static SqrtRational from_value(const Rational& value);  // value >= 0

  const Rational& square() const { return square_; }
  double value() const;
  bool is_rational() const;
  Rational rational_value() const;  // requires is_rational()

  SqrtRational operator*(const SqrtRational& o) const { return SqrtRational(square_ * o.square_); }
  SqrtRational operator/(const SqrtRational& o) const { return SqrtRational(square_ / o.square_); }

  friend bool operator==(const SqrtRational& a, const SqrtRational& b) { return a.square_ == b.square_; }
  friend bool operator<(const SqrtRational& a, const SqrtRational& b) { return a.square_ < b.square_; }
  friend bool operator<=(const SqrtRational& a, const SqrtRational& b) { return a.square_ <= b.square_; }
  friend bool operator>(const SqrtRational& a, const SqrtRational& b) { return a.square_ > b.square_; }
  friend bool operator>=(const SqrtRational& a, const SqrtRational& b) { return a.square_ >= b.square_; }

  // "3/2", "sqrt(2)", "3/4*sqrt(2)"
  std::string to_string() const;

 private:
  Rational square_{0};
};

}  // namespace latimp
