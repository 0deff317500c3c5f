#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "latimp/rational.hpp"

namespace latimp {

// Exact values of the form  sum_i q_i * pi^a_i * prod_p p^e_{i,p}  with rational
// q_i, a_i and e_{i,p} in [0, 1).  Products, quotients and rational powers are
// exact on single terms; sums are kept as formal sums of distinct monomials.
class Symbolic {
 public:
  struct Monomial {
    Rational pi_exp{0};
    std::map<Integer, Rational> radicals;  // prime -> exponent in (0, 1)

    friend bool operator==(const Monomial& a, const Monomial& b) {
      return a.pi_exp == b.pi_exp && a.radicals == b.radicals;
    }
    friend bool operator<(const Monomial& a, const Monomial& b) {
      if (a.pi_exp != b.pi_exp) return a.pi_exp < b.pi_exp;
      return a.radicals < b.radicals;
    }
  };

  Symbolic() = default;
  Symbolic(const Rational& q);  // NOLINT(google-explicit-constructor)
  Symbolic(long v) : Symbolic(Rational(v)) {}  // NOLINT(google-explicit-constructor)
  Symbolic(int v) : Symbolic(Rational(v)) {}   // NOLINT(google-explicit-constructor)

  static Symbolic pi();
  static Symbolic sqrt(const Rational& q);
  // base^exponent for base > 0
  static Symbolic power(const Rational& base, const Rational& exponent);
  static Symbolic parse(std::string_view text);

  Symbolic operator+(const Symbolic& o) const;
  Symbolic operator-(const Symbolic& o) const;
  Symbolic operator-() const;
  Symbolic operator*(const Symbolic& o) const;
  // Divisor must be a single term.
  Symbolic operator/(const Symbolic& o) const;
  Symbolic& operator+=(const Symbolic& o) { return *this = *this + o; }
  Symbolic& operator-=(const Symbolic& o) { return *this = *this - o; }
  Symbolic& operator*=(const Symbolic& o) { return *this = *this * o; }
  Symbolic& operator/=(const Symbolic& o) { return *this = *this / o; }

  // Rational power; requires a single term (or zero with positive exponent).
  Symbolic pow(const Rational& e) const;

  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() <= 1; }
  std::optional<Rational> as_rational() const;
  // Exact square when this value is sqrt of a rational (single term, no pi).
  std::optional<Rational> rational_square() const;
  std::size_t term_count() const { return terms_.size(); }

  double to_double() const;
  std::string to_string() const;

  friend bool operator==(const Symbolic& a, const Symbolic& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Symbolic& a, const Symbolic& b) { return !(a == b); }

 private:
  std::map<Monomial, Rational> terms_;
  void add_term(const Monomial& m, const Rational& c);
};

// Volume of the n-dimensional unit ball, pi^{n/2} / Gamma(1 + n/2).
Symbolic kappa(int n);

// Factorisation into primes by trial division; cofactors beyond the trial
// range are kept whole.
std::map<Integer, long> factorize(Integer n);

Rational factorial(int n);
Rational binomial(int n, int k);

}  // namespace latimp
