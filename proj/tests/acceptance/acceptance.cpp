// Acceptance checks, one per numbered criterion.  Prints one PASS/FAIL line
// per criterion; exit status is nonzero if any selected criterion fails.
#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "expected.hpp"
#include "latimp/bounds.hpp"
#include "latimp/enumeration.hpp"
#include "latimp/impassability.hpp"
#include "latimp/polytope.hpp"
#include "latimp/sublattice.hpp"
#include "oracles.hpp"

using namespace latimp;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::vector<std::string> failures;
  std::vector<std::string> info;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failures.push_back(what);
    }
  }
  void note(const std::string& s) { info.push_back(s); }
};

template <class... Ts>
std::string cat(const Ts&... xs) {
  std::ostringstream os;
  os.precision(10);
  (os << ... << xs);
  return os.str();
}

bool rel_close(double a, double b, double tol) { return std::fabs(a - b) <= tol * std::fabs(b); }

// Computed value rounded to four significant digits agrees with the printed
// one up to a unit in the last digit (printed values are sometimes truncated).
bool four_digits(double computed, double printed) {
  const double unit = std::pow(10.0, std::floor(std::log10(std::fabs(printed))) - 3);
  return std::fabs(std::round(computed / unit) - std::round(printed / unit)) <= 1.0;
}

Rational ratio(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational factorial_q(std::size_t n) {
  Rational f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<long>(i);
  return f;
}

std::vector<std::vector<std::int64_t>> rows_of(const I64Matrix& m) {
  std::vector<std::vector<std::int64_t>> out(m.rows(), std::vector<std::int64_t>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

Lattice random_lattice(std::mt19937_64& rng, std::size_t n) {
  return reduce(Lattice::from_rational_basis(oracle::random_basis(rng, n))).lattice;
}

// Random rank-k integer coefficient matrix.
I64Matrix random_coeffs(std::mt19937_64& rng, const Lattice& l, std::size_t k) {
  std::uniform_int_distribution<int> e(-2, 2);
  while (true) {
    I64Matrix c(k, l.rank());
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < l.rank(); ++j) c(i, j) = e(rng);
    if (oracle::gram_det(l.gram(), c) != 0) return c;
  }
}

Polytope random_symmetric_body(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> e(-6, 6);
  std::vector<RatVec> pts;
  for (std::size_t i = 0; i < n; ++i)
    for (int s : {-1, 1}) {
      RatVec v(n, Rational(0));
      v[i] = s;
      pts.push_back(v);
    }
  for (int t = 0; t < 4; ++t) {
    RatVec v(n);
    for (auto& x : v) x = ratio(e(rng), 4);
    pts.push_back(v);
    for (auto& x : v) x = -x;
    pts.push_back(v);
  }
  return Polytope::from_vertices(pts);
}

Polytope random_body(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> e(-6, 6);
  std::vector<RatVec> pts;
  for (std::size_t i = 0; i < n; ++i) {
    RatVec v(n, Rational(0));
    v[i] = 1;
    pts.push_back(v);
  }
  pts.push_back(RatVec(n, Rational(-1)));
  for (int t = 0; t < 3; ++t) {
    RatVec v(n);
    for (auto& x : v) x = ratio(e(rng), 5);
    pts.push_back(v);
  }
  return Polytope::from_vertices(pts);
}

// ---------------------------------------------------------------------------

void bound_exactness(Outcome& o) {
  const auto a = dnk_lower(2, 1);
  const auto b = dnk_lower(4, 1);
  o.require(a.value_exact && *a.value_exact == Symbolic::sqrt(3) * Symbolic::pi() / Symbolic(8),
            "dnk_lower(2,1) is not sqrt(3)*pi/8");
  o.require(b.value_exact && *b.value_exact == Symbolic(Rational(25, 256)) * Symbolic::pi().pow(2),
            "dnk_lower(4,1) is not 25*pi^2/256");
  o.require(rel_close(a.value_float, expected::dnk_lower_2_1, 1e-12), cat("dnk_lower(2,1) float ", a.value_float));
  o.require(rel_close(b.value_float, expected::dnk_lower_4_1, 1e-12), cat("dnk_lower(4,1) float ", b.value_float));
  if (a.value_exact && b.value_exact) o.note(a.value_exact->to_string() + ", " + b.value_exact->to_string());
}

void chain_table_values(Outcome& o) {
  const ChainTable t = chain_table();
  o.require(t.dims == std::vector<int>(expected::table_dims.begin(), expected::table_dims.end()), "table dimensions");
  o.require(t.rows.size() == 4, "table rows");
  std::size_t matched = 0, total = 0;
  for (const auto& row : t.rows) {
    const auto& pub = row.id == "first-general"        ? expected::first_general
                      : row.id == "first-symmetric"    ? expected::first_symmetric
                      : row.id == "conjecture-general" ? expected::conjecture_general
                                                       : expected::conjecture_symmetric;
    for (std::size_t i = 0; i < row.cells.size() && i < pub.size(); ++i) {
      const TableCell& c = row.cells[i];
      ++total;
      if (row.id == "conjecture-general" && c.n == 3) {
        // documented discrepancy: printed 0.08335, exact value 1/12
        o.require(c.exact && *c.exact == Symbolic(Rational(1, 12)), "conjecture-general n=3 is not exactly 1/12");
        bool flagged = false;
        for (const auto& s : t.notes) flagged = flagged || s.find("conjecture-general n=3") != std::string::npos;
        o.require(flagged, "0.08335 discrepancy not flagged");
        ++matched;
        continue;
      }
      const bool ok = four_digits(c.value, pub[i]);
      if (ok) ++matched;
      o.require(ok, cat(row.id, " n=", c.n, ": computed ", c.value, " (", c.exact ? c.exact->to_string() : "-",
                        "), published ", pub[i]));
    }
  }
  o.note(cat(matched, "/", total, " cells agree (n=3 conjecture-general counted as flagged)"));
}

void simplex_pipeline(Outcome& o) {
  for (std::size_t n = 2; n <= 5; ++n) {
    const SimplexCell c = simplex_dv_cell(n);
    const std::size_t want_facets = n * (n + 1) / 2;
    o.require(c.cell.facets().size() == want_facets,
              cat("n=", n, ": cell has ", c.cell.facets().size(), " facets (", c.facet_pairs,
                  " antipodal pairs), required ", want_facets));
    o.require(c.volume_squared == Rational(static_cast<long>(n) + 1), cat("n=", n, ": volume^2 ", to_string(c.volume_squared)));
    o.require(volume(c.cell).pow(2) == Symbolic(Rational(static_cast<long>(n) + 1)),
              cat("n=", n, ": pipeline volume ", volume(c.cell).to_string()));

    // ((S-S)/2)^* is twice the cell, so it tiles and its lattice packing density is 1
    const Polytope s = regular_simplex(n);
    o.require(equal(polar(difference_body(s)), c.cell.scaled(2)), cat("n=", n, ": polar difference body is not 2*cell"));
    const auto r = dnn1_body(s, Symbolic(1));
    const Rational want = Rational(static_cast<long>(n) + 1) / (Rational(Integer(1) << n) * factorial_q(n));
    o.require(r.value_exact && *r.value_exact == Symbolic(want),
              cat("n=", n, ": dnn1_body ", r.value_exact ? r.value_exact->to_string() : "-", " want ", to_string(want)));
  }
}

void cylinder_floors(Outcome& o) {
  const SqrtRational one(Rational(1));
  struct Case {
    const char* name;
    Lattice lattice;
    std::size_t n;
    const char* floor;
    double floor_value;
    bool strict;
  };
  const Case cases[] = {
      {"FCC", catalog("D", 3).scaled(SqrtRational(Rational(2))), 3, "3*sqrt(2)/4 - 1", expected::fcc_floor, false},
      {"D4", catalog("D", 4).scaled(SqrtRational(Rational(2))), 4, "sqrt(5)/2 - 1", expected::d4_floor, true}};
  for (const Case& c : cases) {
    const auto t0 = Clock::now();
    const auto w = free_cylinder(c.lattice, one, 1, dnk_best(static_cast<int>(c.n), 1), std::nullopt);
    const double took = seconds_since(t0);
    o.require(took < 120, cat(c.name, ": ", took, " s"));
    o.require(w.floor_exact && *w.floor_exact == Symbolic::parse(c.floor),
              cat(c.name, ": floor ", w.floor_exact ? w.floor_exact->to_string() : "-"));
    o.require(w.certificate && w.certificate->validated, cat(c.name, ": no validated certificate"));
    const double clearance = w.certificate ? w.certificate->clearance : -1;
    o.require(c.strict ? clearance > c.floor_value : clearance >= c.floor_value - 1e-3,
              cat(c.name, ": clearance ", clearance, " vs floor ", c.floor_value));
    if (w.certificate) {
      // independent check of the flat against nearby lattice points
      const double d = oracle::min_flat_distance(c.lattice.basis(), w.certificate->base_point,
                                                 w.certificate->directions, 3);
      o.require(d - 1 >= clearance - 1e-9, cat(c.name, ": oracle distance ", d));
    }
    o.note(cat(c.name, " clearance ", clearance, " floor ", c.floor_value, " in ", took, " s"));
  }
}

void densities(Outcome& o) {
  const std::pair<Lattice, double> packs[] = {{catalog("A", 2), expected::delta_a2},
                                              {catalog("D", 3), expected::delta_d3},
                                              {catalog("D", 4), expected::delta_d4}};
  for (const auto& [l, want] : packs) {
    const double got = packing_density(l).value;
    o.require(rel_close(got, want, 1e-12), cat("packing density ", got, " want ", want));
  }
  for (int n = 1; n <= 8; ++n) {
    const auto c = covering_radius(catalog("Z", n));
    o.require(c.mu == SqrtRational(ratio(n, 4)), cat("covering radius of Z^", n, " = ", c.mu.to_string()));
  }
  const Lattice a2s = catalog("Astar", 2);
  const double theta = covering_density(a2s).value;
  o.require(std::fabs(theta - expected::theta_a2star) <= 1e-9, cat("covering density of A2* ", theta));
  // grid oracle: the farthest sampled point approaches mu from below
  const double mu = covering_radius(a2s).mu.value();
  const double est = oracle::covering_radius_estimate(a2s.basis(), 60, 2);
  o.require(est <= mu + 1e-9 && est >= mu * (1 - 1e-3), cat("A2* covering radius ", mu, " vs grid ", est));
  const double oracle_theta = expected::kappa(2) * est * est / a2s.determinant().value();
  o.require(std::fabs(oracle_theta - theta) <= 1e-2 * theta, cat("oracle theta ", oracle_theta));
}

void sublattice_determinants(Outcome& o) {
  for (std::size_t n = 2; n <= 6; ++n)
    for (std::size_t k = 1; k < n; ++k) {
      const auto d = dk_min(catalog("Z", static_cast<int>(n)), k);
      o.require(d.value == SqrtRational(Rational(1)), cat("D_", k, "(Z^", n, ") = ", d.value.to_string()));
    }
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + t % 4;
    const std::size_t k = 1 + static_cast<std::size_t>(t / 4) % (n - 1);
    const Lattice l = Lattice::from_rational_basis(oracle::random_rational_basis(rng, n));
    const auto d = dk_min(l, k);
    const auto sm = successive_minima(l, k);
    double prod = 1;
    for (const auto& x : sm.lambda) prod *= x.value();
    o.require(d.value.value() <= prod * (1 + 1e-12), cat("case ", t, ": D_k ", d.value.value(), " > ", prod));
    o.require(oracle::gram_det(l.gram(), d.witness.coeffs) == d.value.square(), cat("case ", t, ": witness det"));
  }
  struct Case {
    std::size_t n, k;
    std::int64_t bound_sq;
  };
  for (const Case c : {Case{3, 1, 6}, Case{3, 2, 6}, Case{4, 1, 5}, Case{4, 2, 5}, Case{3, 2, 10}}) {
    const Lattice z = catalog("Z", static_cast<int>(c.n));
    const auto ws = enumerate_sublattices(z, c.k, std::sqrt(static_cast<double>(c.bound_sq)) + 1e-9);
    std::set<std::vector<std::vector<std::int64_t>>> got;
    for (const auto& w : ws) got.insert(oracle::hnf(rows_of(w.coeffs)));
    const auto want = oracle::hnf_sublattices(c.n, c.k, c.bound_sq);
    o.require(got == want && got.size() == ws.size(),
              cat("Z^", c.n, " k=", c.k, " det^2<=", c.bound_sq, ": ", ws.size(), " found, oracle ", want.size()));
  }
  {
    // k = n - 1 in Z^4 through Plücker vectors
    const auto ws = enumerate_sublattices(catalog("Z", 4), 3, std::sqrt(5.0) + 1e-9);
    std::set<std::vector<std::int64_t>> got;
    for (const auto& w : ws) got.insert(oracle::plucker_key(w.coeffs));
    o.require(got == oracle::plucker_sublattices(4, 3, 5), "Z^4 k=3 disagrees with the Plücker oracle");
  }
}

void mahler_suite(Outcome& o) {
  o.require(volume_product(cube(2)) == Symbolic(8), "volume product of the square");
  std::size_t trees = 0;
  std::vector<std::pair<std::size_t, Symbolic>> symmetric_products;
  for (std::size_t n = 1; n <= 5; ++n) {
    const Symbolic target(Rational(Integer(1) << (2 * n)) / factorial_q(n));
    for (const auto& t : all_hanner_trees(n)) {
      ++trees;
      const Symbolic vp = volume_product(hanner(t));
      o.require(vp == target, cat(t.to_string(), ": ", vp.to_string()));
      symmetric_products.emplace_back(n, vp);
    }
  }
  o.note(cat(trees, " Hanner trees"));

  for (std::size_t n = 3; n <= 4; ++n) {
    const Polytope ds = difference_body(regular_simplex(n));
    RatMatrix basis(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
      basis(i, i) = 1;
      basis(i, n) = -1;
    }
    const Polytope proj = project(cube(n + 1, Rational(1, 2)), basis).with_metric(simplex_lattice_metric(n));
    o.require(equal(proj, polar(ds).scaled(Rational(1, 2))), cat("n=", n, ": projected cube != polar(ds)/2"));
    o.require(is_zonotope(proj).is_zonotope && is_zonotope(polar(ds)).is_zonotope, cat("n=", n, ": not a zonotope"));
  }

  std::mt19937_64 rng(7);
  for (std::size_t n = 2; n <= 5; ++n) {
    symmetric_products.emplace_back(n, volume_product(cube(n)));
    symmetric_products.emplace_back(n, volume_product(cross_polytope(n)));
    symmetric_products.emplace_back(n, volume_product(difference_body(regular_simplex(n))));
  }
  for (int t = 0; t < 15; ++t) {
    const std::size_t n = 2 + t % 3;
    symmetric_products.emplace_back(n, volume_product(random_symmetric_body(rng, n)));
  }
  for (const auto& [n, vp] : symmetric_products) {
    const Symbolic floor = kappa(static_cast<int>(n)).pow(2) / Symbolic(Rational(Integer(1) << n));
    o.require(vp.to_double() > floor.to_double(), cat("n=", n, ": product ", vp.to_string(), " not above floor"));
  }
  o.note(cat(symmetric_products.size(), " symmetric products above the floor"));
}

void nonseparability(Outcome& o) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> stretch(60, 140);
  int yes = 0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + t % 3;
    const Lattice l = random_lattice(rng, n);
    const Lattice d = dual(l);
    const double dual_min = shortest_vectors(d).lambda1.value();
    // radii spread around the threshold 1 / (2 lambda_1(L^*))
    const double r0 = 1 / (2 * dual_min) * stretch(rng) / 100.0;
    const SqrtRational r = SqrtRational::from_value(ratio(std::lround(r0 * 1000), 1000));
    const auto ns = is_nonseparable_ball_lattice(l, r);
    const double bound = dual_min * l.determinant().value() * (1 + 1e-9);
    const auto ps = passage_certificate(l, r, n - 1, bound);
    o.require(ns.nonseparable == !ps.first.has_value(), cat("case ", t, " n=", n, " r=", r.value()));
    if (ns.nonseparable) ++yes;
  }
  o.note(cat(yes, "/50 nonseparable"));
  for (int n = 1; n <= 8; ++n) {
    const auto z = is_nonseparable_ball_lattice(catalog("Z", n), SqrtRational(Rational(1, 4)));
    o.require(z.nonseparable && std::fabs(z.margin) <= 1e-12, cat("Z^", n, " margin ", z.margin));
  }
}

void ellipsoids(Outcome& o) {
  const Polytope tri = regular_simplex(2);
  const Ellipsoid e = mvee(difference_body(tri), true);
  const double ratio_v = e.volume / volume(tri).to_double();
  o.require(e.converged, "triangle: not converged");
  o.require(std::fabs(ratio_v - expected::pi / std::sqrt(3.0)) <= 1e-6, cat("triangle ratio ", ratio_v));

  const Polytope hex = difference_body(regular_simplex(2));
  const Ellipsoid h = mvee(hex, true);
  // eigenvalues of the 2x2 shape matrix
  const double a = h.shape(0, 0), b = h.shape(0, 1), c = h.shape(1, 1);
  const double mid = (a + c) / 2, rad = std::sqrt((a - c) * (a - c) / 4 + b * b);
  const double lo = mid - rad, hi = mid + rad;
  const double ecc = std::sqrt(std::max(0.0, 1 - lo / hi));
  o.require(ecc <= 1e-6, cat("hexagon eccentricity ", ecc));
  const DMatrix v = orthonormal_vertices(hex);
  double circum = 0;
  for (std::size_t i = 0; i < v.rows(); ++i) circum = std::max(circum, std::hypot(v(i, 0), v(i, 1)));
  o.require(rel_close(1 / std::sqrt(lo), circum, 1e-6), cat("hexagon radius ", 1 / std::sqrt(lo), " vs ", circum));
  o.require(std::fabs(h.center[0]) + std::fabs(h.center[1]) <= 1e-9, "hexagon ellipsoid off-centre");
  o.note(cat("ratio ", ratio_v, ", eccentricity ", ecc));
}

void planar_bound(Outcome& o) {
  const auto r = max_d21_upper();
  o.require(four_digits(r.value_float, expected::max_d21_upper), cat("max_d21_upper ", r.value_float));
  double prev = 0, circle = 0;
  for (const auto& m : r.members) {
    if (m.id == "previous-bound") prev = m.value;
    if (m.id == "circle-conjecture") circle = m.value;
  }
  o.require(four_digits(prev, expected::previous_d21_bound), cat("previous bound ", prev));
  o.require(four_digits(circle, expected::circle_conjecture), cat("circle value ", circle));
  o.note(cat(r.value_float, " / ", prev, " / ", circle));
}

// ---------------------------------------------------------------------------
// Property suites

constexpr int kCases = 1000;

void certificate_property(Outcome& o, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> frac(200, 950);
  int fails = 0;
  for (int t = 0; t < kCases && fails < 5; ++t) {
    const std::size_t n = 2 + t % 4;
    const std::size_t k = 1 + static_cast<std::size_t>(t / 4) % (n - 1);
    const Lattice l = random_lattice(rng, n);
    const auto w = make_witness(l, random_coeffs(rng, l, k));
    const double mu = covering_radius(project_along(l, w).lattice).mu.value();
    const SqrtRational below = SqrtRational::from_value(ratio(std::max(1L, std::lround(mu * frac(rng))), 1000));
    const SqrtRational above = SqrtRational::from_value(ratio(std::lround(mu * 1000) + 2, 1000));
    const auto c = certificate_for(l, below, w);
    bool ok = c && c->validated && !certificate_for(l, above, w);
    if (c) {
      const double d = oracle::min_flat_distance(l.basis(), c->base_point, c->directions, n <= 4 ? 3 : 2);
      ok = ok && d >= c->mu.value() - 1e-9 && std::fabs(c->mu.value() - mu) <= 1e-12 * (1 + mu);
    }
    if (!ok) ++fails;
    o.require(ok, cat("certificate case ", t, " n=", n, " k=", k));
  }
}

void projection_property(Outcome& o, std::mt19937_64& rng) {
  int fails = 0;
  for (int t = 0; t < kCases && fails < 5; ++t) {
    const std::size_t n = 2 + t % 4;
    const std::size_t k = 1 + static_cast<std::size_t>(t / 4) % (n - 1);
    const Lattice l = Lattice::from_rational_basis(oracle::random_rational_basis(rng, n));
    const auto p = project_along(l, make_witness(l, random_coeffs(rng, l, k)));
    const Rational sat = oracle::gram_det(l.gram(), p.witness.coeffs);
    const bool ok = p.witness.saturated && sat == p.witness.det.square() &&
                    p.lattice.det_squared() * sat == l.det_squared() && p.lattice.rank() == n - k;
    if (!ok) ++fails;
    o.require(ok, cat("projection case ", t, " n=", n, " k=", k));
  }
}

void polar_property(Outcome& o, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> sc(1, 9);
  int fails = 0;
  for (int t = 0; t < kCases && fails < 5; ++t) {
    const std::size_t n = 2 + t % 4;
    Polytope p = n == 5 ? (t % 8 < 4 ? cube(5) : cross_polytope(5)) : random_body(rng, n);
    if (n == 5) {
      // a random unimodular image keeps the 5-dimensional cases cheap
      p = p.linear_image(to_rational(oracle::random_unimodular(rng, 5, 6)));
    }
    const Rational c = ratio(sc(rng), sc(rng));
    const Polytope q = polar(p);
    const bool ok = equal(polar(q), p) && equal(polar(p.scaled(c)), q.scaled(1 / c));
    if (!ok) ++fails;
    o.require(ok, cat("polar case ", t, " n=", n));
  }
}

void scaling_property(Outcome& o, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> sc(1, 7);
  int fails = 0;
  for (int t = 0; t < kCases && fails < 5; ++t) {
    const std::size_t n = 2 + t % 4;
    const Rational q = ratio(sc(rng), sc(rng));  // squared scale factor
    const Lattice l = random_lattice(rng, n);
    const Lattice s = l.scaled(SqrtRational(q));
    Rational qn = 1;
    for (std::size_t i = 0; i < n; ++i) qn *= q;
    bool ok = s.det_squared() == l.det_squared() * qn &&
              shortest_vectors(s).lambda1.square() == shortest_vectors(l).lambda1.square() * q &&
              packing_density(s).exact == packing_density(l).exact;
    if (n <= 4) ok = ok && covering_radius(s).mu.square() == covering_radius(l).mu.square() * q;
    // polytope volumes scale by c^n
    const Rational c = ratio(sc(rng), sc(rng));
    const Polytope p = random_body(rng, std::min<std::size_t>(n, 4));
    Rational cn = 1;
    for (std::size_t i = 0; i < p.dim(); ++i) cn *= c;
    ok = ok && volume(p.scaled(c)) == volume(p) * Symbolic(cn);
    if (!ok) ++fails;
    o.require(ok, cat("scaling case ", t, " n=", n));
  }
}

void unimodular_property(Outcome& o, std::mt19937_64& rng) {
  int fails = 0;
  for (int t = 0; t < kCases && fails < 5; ++t) {
    const std::size_t n = 2 + t % 4;
    const Lattice l = Lattice::from_rational_basis(oracle::random_basis(rng, n));
    const Lattice u = l.rebased(oracle::random_unimodular(rng, n));
    const auto a = shortest_vectors(l), b = shortest_vectors(u);
    bool ok = u.det_squared() == l.det_squared() && a.lambda1 == b.lambda1 && a.vectors.size() == b.vectors.size() &&
              dk_min(l, 1).value == dk_min(u, 1).value;
    if (n <= 4) ok = ok && covering_radius(l).mu == covering_radius(u).mu;
    if (n >= 3) ok = ok && dk_min(l, 2).value == dk_min(u, 2).value;
    if (!ok) ++fails;
    o.require(ok, cat("unimodular case ", t, " n=", n));
  }
}

void property_suites(Outcome& o) {
  struct Suite {
    const char* name;
    void (*run)(Outcome&, std::mt19937_64&);
  };
  const Suite suites[] = {{"certificate validation", certificate_property},
                          {"projection determinant identity", projection_property},
                          {"polar involution", polar_property},
                          {"scaling laws", scaling_property},
                          {"unimodular invariance", unimodular_property}};
  std::uint64_t seed = 11;
  for (const Suite& s : suites) {
    std::mt19937_64 rng(seed++);
    const auto t0 = Clock::now();
    Outcome part;
    s.run(part, rng);
    o.note(cat(s.name, " ", part.pass ? "ok" : "FAILED", " (", kCases, " cases, ", seconds_since(t0), " s)"));
    if (!part.pass) {
      o.pass = false;
      o.failures.insert(o.failures.end(), part.failures.begin(), part.failures.end());
    }
  }
}

struct Criterion {
  int id;
  const char* title;
  double limit_s;
  std::function<void(Outcome&)> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "bound-engine exactness", 1, bound_exactness},
      {2, "chain and conjecture table", 1, chain_table_values},
      {3, "simplex Dirichlet-Voronoi pipeline", 30, simplex_pipeline},
      {4, "cylinder floors", 240, cylinder_floors},
      {5, "packing and covering constants", 60, densities},
      {6, "sublattice determinants", 120, sublattice_determinants},
      {7, "volume products and zonotopes", 60, mahler_suite},
      {8, "non-separability duality", 120, nonseparability},
      {9, "enclosing ellipsoids", 10, ellipsoids},
      {10, "planar upper bound", 1, planar_bound},
      {11, "property suites", 300, property_suites},
  };
  return all;
}

bool run_one(const Criterion& c, bool verbose) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    c.run(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double took = seconds_since(t0);
  o.require(took < c.limit_s, cat("runtime ", took, " s exceeds ", c.limit_s, " s"));
  std::printf("criterion %2d: %s  %-36s %8.3f s (limit %g s)\n", c.id, o.pass ? "PASS" : "FAIL", c.title, took,
              c.limit_s);
  const std::size_t shown = verbose ? o.failures.size() : std::min<std::size_t>(o.failures.size(), 8);
  for (std::size_t i = 0; i < shown; ++i) std::printf("    fail: %s\n", o.failures[i].c_str());
  if (shown < o.failures.size()) std::printf("    ... %zu more\n", o.failures.size() - shown);
  for (const auto& s : o.info) std::printf("    note: %s\n", s.c_str());
  std::fflush(stdout);
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  int only = 0;
  bool verbose = false;
  app.add_option("--criterion", only, "run a single criterion (1-11)")->check(CLI::Range(1, 11));
  app.add_flag("--verbose", verbose, "list every failure");
  CLI11_PARSE(app, argc, argv);

  bool all_pass = true;
  for (const auto& c : criteria())
    if (only == 0 || c.id == only) all_pass = run_one(c, verbose) && all_pass;
  return all_pass ? 0 : 1;
}
