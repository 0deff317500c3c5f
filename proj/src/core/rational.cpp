#include "latimp/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

#include "latimp/error.hpp"
#include "latimp/symbolic.hpp"

namespace latimp {

namespace {

Integer parse_integer(std::string_view s) {
  if (s.empty()) fail(ErrorCode::invalid_input, "empty integer");
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) fail(ErrorCode::invalid_input, "bad integer: " + std::string(s));
  for (std::size_t j = i; j < s.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(s[j])))
      fail(ErrorCode::invalid_input, "bad integer: " + std::string(s));
  std::string t(s[0] == '+' ? s.substr(1) : s);
  return Integer(t, 10);
}

Rational parse_decimal(std::string_view s) {
  std::string mant(s);
  long exp10 = 0;
  auto epos = mant.find_first_of("eE");
  if (epos != std::string::npos) {
    exp10 = static_cast<long>(to_int64(parse_integer(mant.substr(epos + 1))));
    mant = mant.substr(0, epos);
  }
  bool neg = false;
  if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
    neg = mant[0] == '-';
    mant = mant.substr(1);
  }
  auto dot = mant.find('.');
  std::string digits = mant;
  if (dot != std::string::npos) {
    digits = mant.substr(0, dot) + mant.substr(dot + 1);
    exp10 -= static_cast<long>(mant.size() - dot - 1);
  }
  if (digits.empty()) fail(ErrorCode::invalid_input, "bad number: " + std::string(s));
  Rational q(parse_integer(digits));
  Integer p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  if (exp10 >= 0)
    q *= p10;
  else
    q /= p10;
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) fail(ErrorCode::invalid_input, "empty rational");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Rational num = parse_rational(std::string_view(s).substr(0, slash));
    Rational den = parse_rational(std::string_view(s).substr(slash + 1));
    if (den == 0) fail(ErrorCode::invalid_input, "zero denominator: " + s);
    Rational q = num / den;
    return q;
  }
  if (s.find_first_of(".eE") != std::string::npos) return parse_decimal(s);
  return Rational(parse_integer(s));
}

std::string to_string(const Rational& q) { return q.get_str(10); }
std::string to_string(const Integer& z) { return z.get_str(10); }

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) fail(ErrorCode::invalid_input, "non-finite number");
  Rational q;
  mpq_set_d(q.get_mpq_t(), x);
  return q;
}

double to_double(const Rational& q) { return q.get_d(); }

Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer round_of(const Rational& q) { return floor_of(q + Rational(1, 2)); }

bool fits_int64(const Integer& z) {
  return z >= Integer(std::numeric_limits<long>::min()) && z <= Integer(std::numeric_limits<long>::max()) &&
         sizeof(long) == 8;
}

std::int64_t to_int64(const Integer& z) {
  if (!fits_int64(z)) fail(ErrorCode::capability, "integer exceeds 64-bit range: " + z.get_str());
  return z.get_si();
}

Integer isqrt(const Integer& z) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), z.get_mpz_t());
  return r;
}

bool rational_sqrt(const Rational& q, Rational& out) {
  if (q < 0) return false;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return false;
  Integer n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  out = Rational(n, d);
  out.canonicalize();
  return true;
}

Rational dot(const RatVec& a, const RatVec& b) {
  require(a.size() == b.size(), ErrorCode::dimension_mismatch, "dot: length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_zero(const RatVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

SqrtRational::SqrtRational(Rational square) : square_(std::move(square)) {
  require(square_ >= 0, ErrorCode::domain, "square root of a negative number");
}

SqrtRational SqrtRational::from_value(const Rational& value) {
  require(value >= 0, ErrorCode::domain, "negative length");
  return SqrtRational(value * value);
}

double SqrtRational::value() const { return std::sqrt(square_.get_d()); }

bool SqrtRational::is_rational() const {
  Rational r;
  return rational_sqrt(square_, r);
}

Rational SqrtRational::rational_value() const {
  Rational r;
  if (!rational_sqrt(square_, r)) fail(ErrorCode::domain, "value is irrational");
  return r;
}

std::string SqrtRational::to_string() const { return Symbolic::sqrt(square_).to_string(); }

}  // namespace latimp
