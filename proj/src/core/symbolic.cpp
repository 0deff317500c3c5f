#include "latimp/symbolic.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <vector>

#include "latimp/error.hpp"

namespace latimp {

namespace {

constexpr double kLogPi = 1.1447298858494001741434273513530587116472948129153;

double log_abs(const Integer& z) {
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

Integer ipow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// Multiplies c by p^k for integer k of either sign.
void scale_by_prime_power(Rational& c, const Integer& p, const Integer& k) {
  if (k == 0) return;
  Integer mag = abs(k);
  Integer pk = ipow(p, mag.get_ui());
  if (k > 0)
    c *= Rational(pk);
  else
    c /= Rational(pk);
}

// Brings a raw term into canonical form: radical exponents in (0, 1).
std::pair<Rational, Symbolic::Monomial> canonical(Rational coef, const Rational& pi_exp,
                                                  const std::map<Integer, Rational>& raw) {
  Symbolic::Monomial m;
  m.pi_exp = pi_exp;
  for (const auto& [p, e] : raw) {
    Integer fl = floor_of(e);
    Rational frac = e - Rational(fl);
    scale_by_prime_power(coef, p, fl);
    if (frac != 0) m.radicals[p] = frac;
  }
  coef.canonicalize();
  return {coef, m};
}

}  // namespace

std::map<Integer, long> factorize(Integer n) {
  std::map<Integer, long> f;
  n = abs(n);
  if (n <= 1) return f;
  auto strip = [&](unsigned long p) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++f[Integer(p)];
    }
  };
  strip(2);
  for (unsigned long p = 3; p <= 2000000; p += 2) {
    if (Integer(p) * Integer(p) > n) break;
    strip(p);
  }
  if (n > 1) ++f[n];
  return f;
}

Rational factorial(int n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(r);
}

Rational binomial(int n, int k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(r);
}

Symbolic::Symbolic(const Rational& q) {
  if (q != 0) {
    Rational c = q;
    c.canonicalize();
    terms_[Monomial{}] = c;
  }
}

Symbolic Symbolic::pi() {
  Symbolic s;
  Monomial m;
  m.pi_exp = 1;
  s.terms_[m] = 1;
  return s;
}

Symbolic Symbolic::sqrt(const Rational& q) { return Symbolic(q).pow(Rational(1, 2)); }

Symbolic Symbolic::power(const Rational& base, const Rational& exponent) {
  require(base > 0, ErrorCode::domain, "power of a non-positive base");
  return Symbolic(base).pow(exponent);
}

void Symbolic::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

Symbolic Symbolic::operator+(const Symbolic& o) const {
  Symbolic r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Symbolic Symbolic::operator-() const {
  Symbolic r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Symbolic Symbolic::operator-(const Symbolic& o) const { return *this + (-o); }

Symbolic Symbolic::operator*(const Symbolic& o) const {
  Symbolic r;
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) {
      std::map<Integer, Rational> raw = m1.radicals;
      for (const auto& [p, e] : m2.radicals) raw[p] += e;
      auto [c, m] = canonical(c1 * c2, m1.pi_exp + m2.pi_exp, raw);
      r.add_term(m, c);
    }
  return r;
}

Symbolic Symbolic::operator/(const Symbolic& o) const {
  require(!o.is_zero(), ErrorCode::domain, "division by zero");
  require(o.is_monomial(), ErrorCode::domain, "division by a sum is outside the symbolic algebra");
  return *this * o.pow(Rational(-1));
}

Symbolic Symbolic::pow(const Rational& e) const {
  if (is_zero()) {
    require(e > 0, ErrorCode::domain, "zero raised to a non-positive power");
    return Symbolic();
  }
  if (e == 0) return Symbolic(Rational(1));
  require(is_monomial(), ErrorCode::domain, "power of a sum is outside the symbolic algebra");
  const auto& [m, c] = *terms_.begin();
  const bool integral = e.get_den() == 1;
  if (c < 0) require(integral, ErrorCode::domain, "fractional power of a negative value");

  std::map<Integer, Rational> raw;
  for (const auto& [p, x] : m.radicals) raw[p] = x * e;
  Rational coef = 1;
  if (integral) {
    Integer k = e.get_num();
    Integer mag = abs(k);
    Integer num = ipow(c.get_num(), mag.get_ui());
    Integer den = ipow(c.get_den(), mag.get_ui());
    coef = k > 0 ? Rational(num, den) : Rational(den, num);
    coef.canonicalize();
  } else {
    for (const auto& [p, k] : factorize(c.get_num())) raw[p] += Rational(k) * e;
    for (const auto& [p, k] : factorize(c.get_den())) raw[p] -= Rational(k) * e;
  }
  auto [cc, mm] = canonical(coef, m.pi_exp * e, raw);
  Symbolic r;
  r.add_term(mm, cc);
  return r;
}

std::optional<Rational> Symbolic::as_rational() const {
  if (is_zero()) return Rational(0);
  if (terms_.size() != 1) return std::nullopt;
  const auto& [m, c] = *terms_.begin();
  if (m.pi_exp != 0 || !m.radicals.empty()) return std::nullopt;
  return c;
}

std::optional<Rational> Symbolic::rational_square() const {
  if (is_zero()) return Rational(0);
  if (terms_.size() != 1) return std::nullopt;
  const auto& [m, c] = *terms_.begin();
  if (m.pi_exp != 0 || c < 0) return std::nullopt;
  Symbolic sq = pow(Rational(2));
  return sq.as_rational();
}

double Symbolic::to_double() const {
  double s = 0;
  for (const auto& [m, c] : terms_) {
    // Direct product first; the log form only when that over- or underflows.
    double t = c.get_d();
    if (m.pi_exp != 0) t *= std::pow(M_PI, m.pi_exp.get_d());
    for (const auto& [p, e] : m.radicals)
      t *= e == Rational(1, 2) ? std::sqrt(p.get_d()) : std::pow(p.get_d(), e.get_d());
    if (!std::isfinite(t) || t == 0) {
      double lg = log_abs(c.get_num()) - log_abs(c.get_den()) + m.pi_exp.get_d() * kLogPi;
      for (const auto& [p, e] : m.radicals) lg += e.get_d() * log_abs(p);
      t = (c < 0 ? -1.0 : 1.0) * std::exp(lg);
    }
    s += t;
  }
  return s;
}

std::string Symbolic::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    std::vector<std::string> pieces;
    if (m.pi_exp == 1)
      pieces.push_back("pi");
    else if (m.pi_exp != 0)
      pieces.push_back(m.pi_exp.get_den() == 1 ? "pi^" + latimp::to_string(m.pi_exp)
                                               : "pi^(" + latimp::to_string(m.pi_exp) + ")");
    Integer sqrt_arg = 1;
    for (const auto& [p, e] : m.radicals) {
      if (e == Rational(1, 2))
        sqrt_arg *= p;
      else
        pieces.push_back(p.get_str() + "^(" + latimp::to_string(e) + ")");
    }
    if (sqrt_arg != 1) pieces.insert(pieces.begin() + (m.pi_exp != 0 ? 1 : 0), "sqrt(" + sqrt_arg.get_str() + ")");

    Rational a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    std::string body;
    if (a.get_num() != 1 || pieces.empty()) body = a.get_num().get_str();
    for (const auto& p : pieces) body += (body.empty() ? "" : "*") + p;
    if (a.get_den() != 1) body += "/" + a.get_den().get_str();
    os << body;
  }
  return os.str();
}

Symbolic kappa(int n) {
  require(n >= 1, ErrorCode::invalid_input, "ball volume needs n >= 1");
  const int m = n / 2;
  if (n % 2 == 0) return Symbolic(Rational(1) / factorial(m)) * Symbolic::pi().pow(Rational(m));
  Integer four_m;
  mpz_ui_pow_ui(four_m.get_mpz_t(), 4, static_cast<unsigned long>(m));
  Rational c = Rational(2) * factorial(m) * Rational(four_m) / factorial(n);
  return Symbolic(c) * Symbolic::pi().pow(Rational(m));
}

// --- parsing -----------------------------------------------------------------

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Symbolic parse() {
    Symbolic v = expr();
    skip();
    if (pos_ != s_.size()) error("unexpected character");
    return v;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void error(const std::string& what) {
    fail(ErrorCode::invalid_input, "cannot parse '" + std::string(s_) + "': " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool eat(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool starts_word(const char* w) {
    skip();
    return s_.substr(pos_).rfind(w, 0) == 0;
  }

  Symbolic expr() {
    Symbolic v;
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    v = term();
    if (neg) v = -v;
    for (;;) {
      if (eat('+'))
        v = v + term();
      else if (eat('-'))
        v = v - term();
      else
        return v;
    }
  }

  Symbolic term() {
    Symbolic v = power();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        v = v * power();
      } else if (c == '/') {
        ++pos_;
        v = v / power();
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '(') {
        v = v * power();
      } else {
        return v;
      }
    }
  }

  Symbolic power() {
    Symbolic base = unary();
    if (eat('^')) {
      Rational e;
      if (eat('(')) {
        auto q = expr().as_rational();
        if (!q) error("exponent must be rational");
        e = *q;
        if (!eat(')')) error("missing ')'");
      } else {
        bool neg = eat('-');
        e = number();
        if (neg) e = -e;
      }
      return base.pow(e);
    }
    return base;
  }

  Rational number() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
    if (start == pos_) error("number expected");
    return parse_rational(s_.substr(start, pos_ - start));
  }

  Symbolic unary() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Symbolic v = expr();
      if (!eat(')')) error("missing ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return Symbolic(number());
    if (starts_word("pi")) {
      pos_ += 2;
      return Symbolic::pi();
    }
    if (starts_word("sqrt")) {
      pos_ += 4;
      Symbolic arg = (peek() == '(') ? unary() : Symbolic(number());
      return arg.pow(Rational(1, 2));
    }
    error("unknown token");
  }
};

}  // namespace

Symbolic Symbolic::parse(std::string_view text) { return Parser(text).parse(); }

}  // namespace latimp
