// Exercises the shared library through latimp.h only.
#include <doctest.h>
#include <json.hpp>
#include <latimp/latimp.h>

#include <cmath>
#include <string>

using Json = nlohmann::json;

namespace {

Json take(char* s) {
  REQUIRE(s != nullptr);
  Json j = Json::parse(s);
  latimp_string_free(s);
  return j;
}

struct Lat {
  latimp_lattice* p = nullptr;
  ~Lat() { latimp_lattice_destroy(p); }
};

}  // namespace

TEST_CASE("handles and errors") {
  CHECK(std::string(latimp_version()) == "0.1.0");
  Lat l;
  CHECK(latimp_lattice_catalog("nope", 3, &l.p) == LATIMP_CATALOG_MISS);
  CHECK(std::string(latimp_last_error()).find("nope") != std::string::npos);
  CHECK(std::string(latimp_status_name(LATIMP_CATALOG_MISS)) == "catalog-miss");
  CHECK(latimp_lattice_catalog(nullptr, 3, &l.p) == LATIMP_INVALID_INPUT);
  CHECK(latimp_lattice_from_json("{not json", &l.p) == LATIMP_INVALID_INPUT);
  REQUIRE(latimp_lattice_catalog("Z", 3, &l.p) == LATIMP_OK);
  CHECK(std::string(latimp_last_error()).empty());
  CHECK(latimp_lattice_rank(l.p) == 3);
  CHECK(latimp_lattice_rank(nullptr) == 0);
  latimp_lattice_destroy(nullptr);
  latimp_polytope_destroy(nullptr);
  latimp_context_destroy(nullptr);
}

TEST_CASE("context configuration") {
  latimp_context* ctx = nullptr;
  REQUIRE(latimp_context_create(&ctx) == LATIMP_OK);
  CHECK(latimp_context_set(ctx, "node_budget", "100") == LATIMP_OK);
  CHECK(latimp_context_set(ctx, "node_budget", "-1") == LATIMP_INVALID_INPUT);
  CHECK(latimp_context_set(ctx, "bogus", "1") == LATIMP_INVALID_INPUT);
  char* s = nullptr;
  REQUIRE(latimp_context_config(ctx, &s) == LATIMP_OK);
  CHECK(take(s).at("node_budget") == 100);

  Lat e8;
  REQUIRE(latimp_lattice_catalog("E", 8, &e8.p) == LATIMP_OK);
  CHECK(latimp_svp(ctx, e8.p, &s) == LATIMP_CAPABILITY);
  latimp_context_destroy(ctx);
  REQUIRE(latimp_svp(nullptr, e8.p, &s) == LATIMP_OK);
  CHECK(take(s).at("count") == 240);
}

TEST_CASE("lattice reports") {
  Lat d3, fcc;
  REQUIRE(latimp_lattice_catalog("D3", 0, &d3.p) == LATIMP_OK);
  REQUIRE(latimp_lattice_scaled(d3.p, "sqrt2", &fcc.p) == LATIMP_OK);
  char* s = nullptr;
  REQUIRE(latimp_cover(nullptr, d3.p, &s) == LATIMP_OK);
  const Json c = take(s);
  CHECK(c.at("mu").at("exact") == "1");
  CHECK(c.at("packing_density").at("value").get<double>() == doctest::Approx(M_PI / (3 * std::sqrt(2.0))));

  REQUIRE(latimp_impass(nullptr, fcc.p, "1", 1, 0, &s) == LATIMP_OK);
  const Json p = take(s);
  CHECK(p.at("validated").get<bool>());
  CHECK(p.at("best").at("clearance").get<double>() == doctest::Approx(3 * std::sqrt(2.0) / 4 - 1));

  REQUIRE(latimp_cylinder(nullptr, fcc.p, "1", 1, nullptr, 0, &s) == LATIMP_OK);
  CHECK(take(s).at("guaranteed_floor_exact") == "3*sqrt(2)/4 - 1");

  Lat z;
  REQUIRE(latimp_lattice_catalog("Z", 3, &z.p) == LATIMP_OK);
  CHECK(latimp_cylinder(nullptr, z.p, "1", 1, nullptr, 0, &s) == LATIMP_NOT_A_PACKING);
  REQUIRE(latimp_dk(nullptr, z.p, 2, &s) == LATIMP_OK);
  CHECK(take(s).at("value").at("exact") == "1");
  REQUIRE(latimp_project(nullptr, d3.p, "[[1, 0, 0]]", &s) == LATIMP_OK);
  CHECK(take(s).at("determinant_identity").get<bool>());
  REQUIRE(latimp_nonsep(nullptr, z.p, "1/2", &s) == LATIMP_OK);
  CHECK(take(s).at("nonseparable").get<bool>());
}

TEST_CASE("bounds through the C interface") {
  char* s = nullptr;
  REQUIRE(latimp_bound("dnk-lower", 2, 1, 0, &s) == LATIMP_OK);
  const Json r = take(s);
  CHECK(r.at("exact") == "pi*sqrt(3)/8");
  REQUIRE(latimp_bound_reevaluate(r.dump().c_str(), &s) == LATIMP_OK);
  CHECK(take(s).at("value") == r.at("value"));
  CHECK(latimp_bound("nothing", 2, 1, 0, &s) == LATIMP_INVALID_INPUT);
  REQUIRE(latimp_chain_table(&s) == LATIMP_OK);
  CHECK(take(s).at("rows").size() == 4);
}

TEST_CASE("polytopes through the C interface") {
  latimp_polytope *cube = nullptr, *cross = nullptr, *pc = nullptr;
  REQUIRE(latimp_polytope_shape("cube", 3, &cube) == LATIMP_OK);
  REQUIRE(latimp_polytope_shape("cross", 3, &cross) == LATIMP_OK);
  REQUIRE(latimp_polytope_transform(cube, "polar", &pc) == LATIMP_OK);
  int eq = 0;
  REQUIRE(latimp_polytope_equal(pc, cross, &eq) == LATIMP_OK);
  CHECK(eq == 1);
  char* s = nullptr;
  REQUIRE(latimp_mahler(cube, &s) == LATIMP_OK);
  CHECK(take(s).at("volume_product").at("exact") == "32/3");
  CHECK(latimp_polytope_shape("hanner:hull(s)", 0, &pc) == LATIMP_MALFORMED_TREE);
  latimp_polytope_destroy(cube);
  latimp_polytope_destroy(cross);
  latimp_polytope_destroy(pc);

  latimp_polytope* hex = nullptr;
  REQUIRE(latimp_polytope_shape("hexagon", 0, &hex) == LATIMP_OK);
  REQUIRE(latimp_mvee(nullptr, hex, 1, &s) == LATIMP_OK);
  CHECK(take(s).at("converged").get<bool>());
  latimp_polytope_destroy(hex);
}
