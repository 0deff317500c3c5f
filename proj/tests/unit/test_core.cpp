#include <doctest.h>

#include <random>

#include "latimp/lattice.hpp"
#include "latimp/matrix.hpp"
#include "latimp/rational.hpp"
#include "latimp/symbolic.hpp"
#include "oracles.hpp"
#include "helpers.hpp"

using namespace latimp;
using testing::code_of;

TEST_CASE("rational parsing is exact") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-6/8") == Rational(-3, 4));
  CHECK(parse_rational("1.25") == Rational(5, 4));
  CHECK(parse_rational("1e-3") == Rational(1, 1000));
  CHECK(code_of([] { parse_rational("1/0"); }) == ErrorCode::invalid_input);
  CHECK(code_of([] { parse_rational("abc"); }) == ErrorCode::invalid_input);
  CHECK(rational_from_double(0.1) != Rational(1, 10));
  CHECK(rational_from_double(0.5) == Rational(1, 2));
}

TEST_CASE("integer helpers") {
  CHECK(floor_of(Rational(-3, 2)) == -2);
  CHECK(ceil_of(Rational(-3, 2)) == -1);
  CHECK(round_of(Rational(1, 2)) == 1);
  CHECK(isqrt(Integer(99)) == 9);
  Rational r;
  CHECK(rational_sqrt(Rational(9, 4), r));
  CHECK(r == Rational(3, 2));
  CHECK_FALSE(rational_sqrt(Rational(2), r));
}

TEST_CASE("square roots of rationals") {
  const SqrtRational s(Rational(9, 8));
  CHECK(s.to_string() == "3*sqrt(2)/4");
  CHECK(s.value() == doctest::Approx(3 * std::sqrt(2.0) / 4).epsilon(1e-15));
  CHECK(SqrtRational(Rational(4)).is_rational());
  CHECK(SqrtRational(Rational(4)).rational_value() == 2);
  CHECK(SqrtRational::from_value(Rational(3, 2)).square() == Rational(9, 4));
  CHECK(SqrtRational(Rational(2)) * SqrtRational(Rational(8)) == SqrtRational(Rational(16)));
}

TEST_CASE("symbolic arithmetic stays exact") {
  const Symbolic a = Symbolic::sqrt(3) * Symbolic::pi() / Symbolic(8);
  CHECK(a.to_string() == "pi*sqrt(3)/8");
  CHECK(Symbolic::parse("sqrt(3)*pi/8") == a);
  CHECK(Symbolic::parse("9pi/32") == Symbolic(Rational(9, 32)) * Symbolic::pi());
  CHECK(Symbolic::parse("sqrt2") * Symbolic::parse("sqrt2") == Symbolic(2));
  CHECK((Symbolic::sqrt(2) * Symbolic::sqrt(6)).to_string() == "2*sqrt(3)");
  CHECK(Symbolic::power(2, Rational(1, 4)).pow(4) == Symbolic(2));
  const Symbolic d4 = Symbolic::pi().pow(2) / Symbolic(16);
  CHECK(d4.pow(Rational(1, 2)) == Symbolic::pi() / Symbolic(4));
  CHECK((Symbolic(1) + Symbolic::sqrt(2)).term_count() == 2);
  CHECK((Symbolic::sqrt(2) - Symbolic::sqrt(2)).is_zero());
  CHECK(Symbolic::sqrt(Rational(9, 8)).rational_square() == Rational(9, 8));
  CHECK(code_of([] { (Symbolic(1) + Symbolic::sqrt(2)).pow(Rational(1, 2)); }) != ErrorCode::ok);
}

TEST_CASE("symbolic values convert to doubles without drift") {
  CHECK(Symbolic(8).to_double() == 8.0);
  CHECK(Symbolic::parse("25pi^2/256").to_double() == doctest::Approx(25 * M_PI * M_PI / 256).epsilon(1e-15));
  // far outside the double range of the numerator alone
  const Symbolic tiny = kappa(24) * kappa(24) / Symbolic(Rational(Integer(1) << 200));
  CHECK(tiny.to_double() > 0);
}

TEST_CASE("unit ball volumes") {
  CHECK(kappa(1) == Symbolic(2));
  CHECK(kappa(2) == Symbolic::pi());
  CHECK(kappa(3) == Symbolic(Rational(4, 3)) * Symbolic::pi());
  CHECK(kappa(4) == Symbolic::pi().pow(2) / Symbolic(2));
  CHECK(kappa(24) == Symbolic::pi().pow(12) / Symbolic(factorial(12)));
  for (int n = 1; n <= 24; ++n)
    CHECK(kappa(n).to_double() == doctest::Approx(std::pow(M_PI, n / 2.0) / std::tgamma(1 + n / 2.0)).epsilon(1e-13));
}

TEST_CASE("factorisation and combinatorics") {
  const auto f = factorize(Integer(360));
  CHECK(f.at(2) == 3);
  CHECK(f.at(3) == 2);
  CHECK(f.at(5) == 1);
  CHECK(binomial(6, 3) == 20);
  CHECK(factorial(8) == 40320);
}

TEST_CASE("exact determinants agree with the oracle") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 30; ++t) {
    const RatMatrix b = oracle::random_rational_basis(rng, 1 + t % 5);
    CHECK(determinant(b) == oracle::det(b));
  }
}

TEST_CASE("Hermite normal form is canonical") {
  const IntMatrix a{{Integer(2), Integer(4), Integer(6)}, {Integer(1), Integer(3), Integer(5)}};
  const IntMatrix h = hermite_normal_form(a);
  const IntMatrix swapped{{Integer(1), Integer(3), Integer(5)}, {Integer(3), Integer(7), Integer(11)}};
  CHECK(h == hermite_normal_form(swapped));
  const auto e = integer_echelon(a);
  CHECK(multiply(e.transform, a) == e.h);
  CHECK(abs(determinant(e.transform)) == 1);
}

TEST_CASE("lattice construction and invariants") {
  const Lattice z = catalog("Z", 4);
  CHECK(z.rank() == 4);
  CHECK(z.det_squared() == 1);
  const Lattice a2 = catalog("A", 2);
  CHECK(a2.det_squared() == 3);
  CHECK(dual(a2).det_squared() == Rational(1, 3));
  const Lattice s = catalog("D", 3).scaled(SqrtRational(Rational(2)));
  CHECK(s.det_squared() == 4 * 8);
  CHECK(s.exact());
  CHECK(catalog("D3").det_squared() == catalog("D", 3).det_squared());
  CHECK(catalog("A2*").det_squared() == Rational(1, 3));
  CHECK(catalog("E", 8).det_squared() == 1);

  CHECK(code_of([] { catalog("Q", 3); }) == ErrorCode::catalog_miss);
  CHECK(code_of([] { catalog("D", 2); }) != ErrorCode::ok);
  CHECK(code_of([] { Lattice::from_rational_basis(RatMatrix{{1, 2}, {2, 4}}); }) == ErrorCode::invalid_lattice);
  CHECK(code_of([] { Lattice::from_gram(RatMatrix{{1, 2}, {3, 1}}); }) == ErrorCode::invalid_lattice);
  CHECK(code_of([] { catalog("Z", 2).scaled(SqrtRational(Rational(0))); }) == ErrorCode::invalid_input);
}

TEST_CASE("lower-rank lattices keep their ambient embedding") {
  const Lattice l = Lattice::from_rational_basis(RatMatrix{{1, 1, 0}, {0, 1, 1}});
  CHECK(l.rank() == 2);
  CHECK(l.ambient_dim() == 3);
  CHECK(l.det_squared() == 3);
  CHECK(code_of([&] { dual(l); }) == ErrorCode::unsupported_rank);
}

TEST_CASE("LLL keeps the lattice") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + t % 4;
    const Lattice l = Lattice::from_rational_basis(oracle::random_rational_basis(rng, n));
    const Reduction r = reduce(l);
    CHECK(r.lattice.det_squared() == l.det_squared());
    CHECK(abs(determinant(to_integer(r.transform))) == 1);
    CHECK(r.lattice.gram() == congruence(r.transform, l.gram()));
  }
}
