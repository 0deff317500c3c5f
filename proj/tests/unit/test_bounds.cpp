#include <doctest.h>

#include "expected.hpp"
#include "helpers.hpp"
#include "latimp/bounds.hpp"
#include "latimp/polytope.hpp"

using namespace latimp;
using testing::code_of;

TEST_CASE("chain lower bounds are exact where the constants are") {
  const auto a = dnk_lower(2, 1);
  REQUIRE(a.value_exact);
  CHECK(*a.value_exact == Symbolic::sqrt(3) * Symbolic::pi() / Symbolic(8));
  CHECK(a.value_float == doctest::Approx(expected::dnk_lower_2_1).epsilon(1e-12));
  CHECK(a.strictness == Strictness::equality);

  const auto b = dnk_lower(4, 1);
  REQUIRE(b.value_exact);
  CHECK(*b.value_exact == Symbolic(Rational(25, 256)) * Symbolic::pi().pow(2));
  CHECK(b.value_float == doctest::Approx(expected::dnk_lower_4_1).epsilon(1e-12));
  CHECK(b.strictness == Strictness::strict_lower_bound);
  CHECK(d21_chain().value_exact == a.value_exact);
}

TEST_CASE("c_{n,k} upper bounds") {
  CHECK(*cnk_upper(2, 1).value_exact == Symbolic::parse("sqrt(2)*3^(3/4)/3"));
  CHECK(*cnk_upper(4, 1).value_exact == Symbolic::power(2, Rational(1, 4)));
  // Hermite constant gamma_2 = 2/sqrt(3), so c_{2,1}^2 = gamma_2
  CHECK(cnk_upper(2, 1).value_float * cnk_upper(2, 1).value_float == doctest::Approx(2 / std::sqrt(3.0)));
}

TEST_CASE("ball lattices at k = n - 1") {
  CHECK(*dnn1_ball(2).value_exact == Symbolic::sqrt(3) * Symbolic::pi() / Symbolic(8));
  CHECK(dnn1_ball(3).value_float == doctest::Approx(expected::d32).epsilon(1e-12));
  for (int n = 2; n <= 8; ++n) CHECK(dnk_lower(n, n - 1).value_float <= dnn1_ball(n).value_float * (1 + 1e-12));
  CHECK(dnk_best(3, 2).value_exact == dnn1_ball(3).value_exact);
  CHECK(*dnk_best(3, 1).value_exact == Symbolic(Rational(9, 32)) * Symbolic::pi());
  CHECK(dnk_best(3, 1).value_float == doctest::Approx(expected::d31));
}

TEST_CASE("chain values decrease with k") {
  for (int n = 3; n <= 6; ++n)
    for (int k = 1; k + 1 < n; ++k) CHECK(dnk_lower(n, k).value_float >= dnk_lower(n, k + 1).value_float);
}

TEST_CASE("planar upper bound") {
  const auto r = max_d21_upper();
  CHECK(r.value_float == doctest::Approx(0.6910).epsilon(5e-5));
  REQUIRE(r.members.size() == 3);
  double prev = 0, circle = 0;
  for (const auto& m : r.members) {
    if (m.id == "previous-bound") prev = m.value;
    if (m.id == "circle-conjecture") circle = m.value;
  }
  CHECK(prev == doctest::Approx(expected::previous_d21_bound).epsilon(1e-4));
  CHECK(circle == doctest::Approx(expected::circle_conjecture).epsilon(1e-4));
  CHECK(r.inputs.front().id == "tammela");
  CHECK(r.inputs.front().value_float == doctest::Approx(expected::tammela));
}

TEST_CASE("volume-product floors") {
  const auto f = mahler_floors(2);
  CHECK(*f.value_exact == Symbolic::pi().pow(2) / Symbolic(4));
  bool symmetric = false;
  for (const auto& m : f.members)
    if (m.exact && *m.exact == Symbolic::pi().pow(2) / Symbolic(64)) symmetric = true;
  CHECK(symmetric);
  for (int n : {2, 3, 4, 5, 6, 7, 8, 24}) {
    const auto g = min_dnk_over_bodies(n, n - 1, false);
    const auto s = min_dnk_over_bodies(n, n - 1, true);
    CHECK(g.value_float <= s.value_float);
  }
}

TEST_CASE("lower bounds over convex bodies") {
  const auto s3 = min_dnk_over_bodies(3, 2, true);
  CHECK(s3.value_float == doctest::Approx(0.1179).epsilon(1e-3));
  const auto g24 = min_dnk_over_bodies(24, 23, false);
  REQUIRE(g24.best_lower_bound);
  CHECK(*g24.best_lower_bound > g24.value_float);
}

TEST_CASE("reports re-evaluate from their inputs") {
  std::vector<BoundReport> all = {kappa_report(5),      cnk_upper(3, 2),       dnk_lower(5, 2),
                                  dnn1_ball(8),         dnk_best(3, 1),        min_dnk_over_bodies(6, 5, true),
                                  max_d21_upper(),      mahler_floors(7),      d21_chain(),
                                  dnk_lower(24, 23),    min_dnk_over_bodies(4, 2, false)};
  for (const auto& r : all) {
    CAPTURE(r.formula_id);
    const auto again = reevaluate(r);
    CHECK(again.value_float == r.value_float);
    CHECK(again.value_exact == r.value_exact);
  }
  // a changed input changes the result
  auto r = dnk_lower(4, 1);
  for (auto& c : r.inputs)
    if (c.id == "delta(4)") {
      c.value_exact = Symbolic(Rational(1, 2));
      c.value_float = 0.5;
    }
  CHECK(reevaluate(r).value_float != dnk_lower(4, 1).value_float);
}

TEST_CASE("constants") {
  CHECK(has_packing_constant(24));
  CHECK_FALSE(has_packing_constant(9));
  CHECK(has_covering_constant(5));
  CHECK_FALSE(has_covering_constant(6));
  CHECK(packing_constant(2).value_float == doctest::Approx(expected::delta_a2).epsilon(1e-12));
  CHECK(covering_constant(2).value_float == doctest::Approx(expected::theta_a2star).epsilon(1e-12));
  CHECK(code_of([] { constants(9); }) == ErrorCode::catalog_miss);
  CHECK(code_of([] { dnk_lower(9, 8); }) == ErrorCode::missing_constant);
  CHECK(code_of([] { dnk_lower(3, 3); }) != ErrorCode::ok);
}

TEST_CASE("the simplex through the polytope pipeline") {
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto r = dnn1_body(regular_simplex(n), Symbolic(1));
    const Rational want = Rational(static_cast<long>(n) + 1) / (Rational(Integer(1) << n) * factorial(static_cast<int>(n)));
    CHECK(*r.value_exact == Symbolic(want));
  }
}

TEST_CASE("chain table") {
  const ChainTable t = chain_table();
  CHECK(t.dims == std::vector<int>(expected::table_dims.begin(), expected::table_dims.end()));
  REQUIRE(t.rows.size() == 4);
  for (const auto& row : t.rows) {
    const auto& pub = row.id == "first-general"       ? expected::first_general
                      : row.id == "first-symmetric"   ? expected::first_symmetric
                      : row.id == "conjecture-general" ? expected::conjecture_general
                                                       : expected::conjecture_symmetric;
    for (std::size_t i = 0; i < 7; ++i) CHECK(row.cells[i].printed == pub[i]);
  }
  // the exact value of (n+1)/(2^n n!) at n = 3
  CHECK(*t.rows[2].cells[0].exact == Symbolic(Rational(1, 12)));
  CHECK(matches_four_digits(0.0045490, 0.004548));
  CHECK_FALSE(matches_four_digits(0.045361, 0.04538));
}
