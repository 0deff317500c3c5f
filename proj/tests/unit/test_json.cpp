#include <doctest.h>

#include "helpers.hpp"
#include "latimp/json_io.hpp"

using namespace latimp;
using io::Json;
using testing::code_of;

TEST_CASE("lattice files") {
  const Json j = Json::parse(R"({"ambient_dim": 3, "basis": [["1", "1", "0"], ["0", "1/2", "1"]], "exact": true})");
  const Lattice l = io::lattice_from_json(j);
  CHECK(l.rank() == 2);
  CHECK(l.ambient_dim() == 3);
  CHECK(l.gram()(1, 1) == Rational(5, 4));

  const Lattice g = io::lattice_from_json(Json::parse(R"({"gram": [[2, -1], [-1, 2]]})"));
  CHECK(g.det_squared() == 3);

  CHECK(code_of([] { io::lattice_from_json(Json::parse(R"({"basis": [["1", "x"]]})")); }) == ErrorCode::invalid_input);
  CHECK(code_of([] { io::lattice_from_json(Json::parse(R"({"ambient_dim": 2, "basis": [["1", "0", "0"]]})")); }) !=
        ErrorCode::ok);
  CHECK(code_of([] { io::lattice_from_json(Json::parse(R"({"name": "nothing"})")); }) == ErrorCode::invalid_input);
}

TEST_CASE("lattices round-trip") {
  for (const Lattice& l : {catalog("D", 4), catalog("A", 3), catalog("E", 8),
                           catalog("D", 3).scaled(SqrtRational(Rational(2)))}) {
    const Lattice back = io::lattice_from_json(Json::parse(io::lattice_to_json(l).dump()));
    CHECK(back.gram() == l.gram());
    CHECK(back.exact() == l.exact());
  }
}

TEST_CASE("polytopes round-trip") {
  const Polytope c = cube(3);
  CHECK(equal(io::polytope_from_json(io::polytope_to_json(c)), c));
  const Polytope s = regular_simplex(3);
  const Polytope back = io::polytope_from_json(Json::parse(io::polytope_to_json(s).dump()));
  CHECK(equal(back, s));
  CHECK(back.metric() == s.metric());
  const Polytope h = io::polytope_from_json(Json::parse(
      R"({"halfspaces": [{"a": ["1", "0"], "b": "1"}, {"a": ["-1", "0"], "b": "1"},
                         {"a": ["0", "1"], "b": "1"}, {"a": ["0", "-1"], "b": "1"}]})"));
  CHECK(equal(h, cube(2)));
}

TEST_CASE("witnesses round-trip") {
  const Lattice z = catalog("Z", 3);
  const auto w = make_witness(z, I64Matrix{{1, 1, 0}});
  const Json j = io::witness(w);
  CHECK(j.at("saturated").get<bool>());
  CHECK(j.at("det").at("exact") == "sqrt(2)");
  const auto back = io::witness_from_json(z, j);
  CHECK(back.coeffs == w.coeffs);
  CHECK(io::witness_from_json(z, Json::parse("[[0, 0, 2]]")).det == SqrtRational(Rational(4)));
}

TEST_CASE("exact scalars") {
  CHECK(io::parse_sqrt("sqrt2") == SqrtRational(Rational(2)));
  CHECK(io::parse_sqrt("3*sqrt(2)/4") == SqrtRational(Rational(9, 8)));
  CHECK(io::parse_sqrt("1/2") == SqrtRational(Rational(1, 4)));
  CHECK(code_of([] { io::parse_sqrt("pi"); }) == ErrorCode::invalid_input);
  CHECK(io::parse_rational(Json(0.25)) == Rational(1, 4));
  CHECK(io::parse_rational(Json("7/3")) == Rational(7, 3));
  CHECK(io::symbolic(Symbolic::pi()).at("exact") == "pi");
}

TEST_CASE("reports serialise their inputs") {
  const Json r = io::report(dnk_lower(4, 1));
  CHECK(r.at("formula_id") == "dnk-lower");
  CHECK(r.at("exact") == "25*pi^2/256");
  CHECK(r.at("inputs").size() == 2);
  CHECK(io::error(ErrorCode::capability, "x").at("error") == "capability");
}
