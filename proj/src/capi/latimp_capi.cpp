#include "latimp/latimp.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "latimp/bounds.hpp"
#include "latimp/enumeration.hpp"
#include "latimp/error.hpp"
#include "latimp/impassability.hpp"
#include "latimp/json_io.hpp"
#include "latimp/lattice.hpp"
#include "latimp/polytope.hpp"
#include "latimp/sublattice.hpp"

struct latimp_context {
  latimp::Config cfg;
};
struct latimp_lattice {
  latimp::Lattice l;
};
struct latimp_polytope {
  latimp::Polytope p;
};

namespace {

using latimp::ErrorCode;
using latimp::io::Json;
namespace io = latimp::io;

thread_local std::string last_error;

const latimp::Config& config_of(const latimp_context* ctx) {
  static const latimp::Config defaults;
  return ctx ? ctx->cfg : defaults;
}

template <class F>
latimp_status guard(F&& f) {
  try {
    last_error.clear();
    f();
    return LATIMP_OK;
  } catch (const latimp::Error& e) {
    last_error = e.what();
    return static_cast<latimp_status>(e.code());
  } catch (const nlohmann::json::exception& e) {
    last_error = std::string("malformed JSON: ") + e.what();
    return LATIMP_INVALID_INPUT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return LATIMP_CAPABILITY;
  } catch (const std::exception& e) {
    last_error = e.what();
    return LATIMP_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  latimp::require(p != nullptr, ErrorCode::invalid_input, std::string(what) + " must not be null");
}

void emit(const Json& j, char** out) {
  need(out, "output pointer");
  const std::string s = j.dump(2);
  char* buf = static_cast<char*>(std::malloc(s.size() + 1));
  if (!buf) throw std::bad_alloc();
  std::memcpy(buf, s.c_str(), s.size() + 1);
  *out = buf;
}

Json parse(const char* text, const char* what) {
  need(text, what);
  return Json::parse(text);
}

latimp::SqrtRational radius(const char* r) {
  need(r, "radius");
  return io::parse_sqrt(r);
}

latimp::Polytope shape(const std::string& name, int n) {
  using namespace latimp;
  const auto dim = [&] {
    require(n >= 1, ErrorCode::invalid_input, "shape dimension must be positive");
    return static_cast<std::size_t>(n);
  };
  if (name == "cube") return cube(dim());
  if (name == "cross") return cross_polytope(dim());
  if (name == "simplex") return regular_simplex(dim());
  if (name == "triangle") return regular_simplex(2);
  if (name == "hexagon") return difference_body(regular_simplex(2));
  if (name == "simplex-cell") return simplex_dv_cell(dim()).cell;
  if (name.rfind("hanner:", 0) == 0) return hanner(parse_hanner(name.substr(7)));
  fail(ErrorCode::invalid_input, "unknown shape " + name);
}

}  // namespace

extern "C" {

const char* latimp_version(void) { return "0.1.0"; }

const char* latimp_status_name(latimp_status status) {
  return latimp::error_code_name(static_cast<latimp::ErrorCode>(status));
}

const char* latimp_last_error(void) { return last_error.c_str(); }

void latimp_string_free(char* s) { std::free(s); }

latimp_status latimp_context_create(latimp_context** out) {
  return guard([&] {
    need(out, "output pointer");
    *out = new latimp_context{};
  });
}

void latimp_context_destroy(latimp_context* ctx) { delete ctx; }

latimp_status latimp_context_set(latimp_context* ctx, const char* key, const char* value) {
  return guard([&] {
    need(ctx, "context");
    need(key, "key");
    need(value, "value");
    const std::string k = key;
    latimp::Config& c = ctx->cfg;
    std::size_t pos = 0;
    const std::string v = value;
    auto as_double = [&] {
      const double x = std::stod(v, &pos);
      latimp::require(pos == v.size() && x > 0, ErrorCode::invalid_input, "bad value for " + k + ": " + v);
      return x;
    };
    auto as_int = [&] {
      const long long x = std::stoll(v, &pos);
      latimp::require(pos == v.size() && x > 0, ErrorCode::invalid_input, "bad value for " + k + ": " + v);
      return x;
    };
    try {
      if (k == "tolerance") c.tolerance = as_double();
      else if (k == "mvee_tolerance") c.mvee_tolerance = as_double();
      else if (k == "node_budget") c.node_budget = static_cast<std::uint64_t>(as_int());
      else if (k == "enumeration_rank_limit") c.enumeration_rank_limit = static_cast<int>(as_int());
      else if (k == "voronoi_rank_limit") c.voronoi_rank_limit = static_cast<int>(as_int());
      else if (k == "mvee_max_iterations") c.mvee_max_iterations = static_cast<int>(as_int());
      else if (k == "threads") c.threads = static_cast<int>(as_int());
      else latimp::fail(ErrorCode::invalid_input, "unknown configuration key " + k);
    } catch (const std::logic_error&) {
      latimp::fail(ErrorCode::invalid_input, "bad value for " + k + ": " + v);
    }
  });
}

latimp_status latimp_context_config(const latimp_context* ctx, char** json) {
  return guard([&] {
    const latimp::Config& c = config_of(ctx);
    emit(Json{{"tolerance", c.tolerance},
              {"node_budget", c.node_budget},
              {"enumeration_rank_limit", c.enumeration_rank_limit},
              {"voronoi_rank_limit", c.voronoi_rank_limit},
              {"mvee_tolerance", c.mvee_tolerance},
              {"mvee_max_iterations", c.mvee_max_iterations},
              {"threads", c.threads}},
         json);
  });
}

latimp_status latimp_lattice_catalog(const char* name, int n, latimp_lattice** out) {
  return guard([&] {
    need(name, "catalog name");
    need(out, "output pointer");
    *out = new latimp_lattice{latimp::catalog(name, n)};
  });
}

latimp_status latimp_lattice_catalog_names(char** json) {
  return guard([&] { emit(Json(latimp::catalog_names()), json); });
}

latimp_status latimp_lattice_from_json(const char* json, latimp_lattice** out) {
  return guard([&] {
    need(out, "output pointer");
    *out = new latimp_lattice{io::lattice_from_json(parse(json, "lattice JSON"))};
  });
}

latimp_status latimp_lattice_scaled(const latimp_lattice* l, const char* factor, latimp_lattice** out) {
  return guard([&] {
    need(l, "lattice");
    need(factor, "scale factor");
    need(out, "output pointer");
    *out = new latimp_lattice{l->l.scaled(io::parse_sqrt(factor))};
  });
}

latimp_status latimp_lattice_dual(const latimp_lattice* l, latimp_lattice** out) {
  return guard([&] {
    need(l, "lattice");
    need(out, "output pointer");
    *out = new latimp_lattice{latimp::dual(l->l)};
  });
}

void latimp_lattice_destroy(latimp_lattice* l) { delete l; }

size_t latimp_lattice_rank(const latimp_lattice* l) { return l ? l->l.rank() : 0; }

latimp_status latimp_lattice_info(const latimp_context* ctx, const latimp_lattice* l, char** json) {
  return guard([&] {
    need(l, "lattice");
    emit(io::lattice_info(l->l, config_of(ctx)), json);
  });
}

latimp_status latimp_svp(const latimp_context* ctx, const latimp_lattice* l, char** json) {
  return guard([&] {
    need(l, "lattice");
    const auto sv = latimp::shortest_vectors(l->l, config_of(ctx));
    Json vs = Json::array();
    for (const auto& v : sv.vectors) vs.push_back(v);
    emit(Json{{"lambda", Json::array({io::sqrt_rational(sv.lambda1)})},
              {"minimal_vectors", vs},
              {"count", sv.vectors.size()}},
         json);
  });
}

latimp_status latimp_minima(const latimp_context* ctx, const latimp_lattice* l, size_t k, char** json) {
  return guard([&] {
    need(l, "lattice");
    const std::size_t kk = k == 0 ? l->l.rank() : k;
    const auto sm = latimp::successive_minima(l->l, kk, config_of(ctx));
    Json lam = Json::array(), vs = Json::array();
    for (const auto& x : sm.lambda) lam.push_back(io::sqrt_rational(x));
    for (const auto& v : sm.vectors) vs.push_back(v);
    emit(Json{{"lambda", lam}, {"vectors", vs}}, json);
  });
}

latimp_status latimp_voronoi(const latimp_context* ctx, const latimp_lattice* l, char** json) {
  return guard([&] {
    need(l, "lattice");
    const auto vc = latimp::voronoi_cell(l->l, config_of(ctx));
    Json rel = Json::array(), holes = Json::array();
    for (const auto& v : vc.relevant_vectors) rel.push_back(v);
    for (const auto& h : vc.deep_holes) holes.push_back(io::rat_vec(h));
    emit(Json{{"relevant_vectors", rel},
              {"relevant_count", vc.relevant_vectors.size()},
              {"vertex_count", vc.polytope.vertices().size()},
              {"facet_count", vc.polytope.facets().size()},
              {"mu", io::sqrt_rational(vc.circumradius)},
              {"deep_holes", holes},
              {"volume", io::symbolic(latimp::volume(vc.polytope))},
              {"volume_verified", vc.volume_verified},
              {"cell", io::polytope_to_json(vc.polytope)}},
         json);
  });
}

latimp_status latimp_cover(const latimp_context* ctx, const latimp_lattice* l, char** json) {
  return guard([&] {
    need(l, "lattice");
    const auto& cfg = config_of(ctx);
    const auto cr = latimp::covering_radius(l->l, cfg);
    const auto cd = latimp::covering_density(l->l, cfg);
    const auto pd = latimp::packing_density(l->l, cfg);
    emit(Json{{"mu", io::sqrt_rational(cr.mu)},
              {"deep_hole", io::doubles(cr.deep_hole)},
              {"deep_hole_coeffs", io::rat_vec(cr.deep_hole_coeffs)},
              {"covering_density", io::symbolic(cd.exact)},
              {"packing_density", io::symbolic(pd.exact)},
              {"exact", cd.is_exact}},
         json);
  });
}

latimp_status latimp_closest(const latimp_context* ctx, const latimp_lattice* l, const char* target, char** json) {
  return guard([&] {
    need(l, "lattice");
    const auto t = parse(target, "target").get<std::vector<double>>();
    const auto cv = latimp::closest_vector(l->l, t, config_of(ctx));
    emit(Json{{"coeffs", cv.coeffs}, {"point", io::doubles(cv.point)}, {"distance", cv.distance}}, json);
  });
}

latimp_status latimp_dk(const latimp_context* ctx, const latimp_lattice* l, size_t k, char** json) {
  return guard([&] {
    need(l, "lattice");
    const auto& cfg = config_of(ctx);
    const auto r = latimp::dk_min(l->l, k, cfg);
    emit(Json{{"k", k},
              {"value", io::sqrt_rational(r.value)},
              {"witness", io::witness(r.witness)},
              {"search_bound", latimp::cnk_search_bound(l->l, k, cfg)}},
         json);
  });
}

latimp_status latimp_sublattices(const latimp_context* ctx, const latimp_lattice* l, size_t k, double det_bound,
                                 char** json) {
  return guard([&] {
    need(l, "lattice");
    const auto& cfg = config_of(ctx);
    const double bound = det_bound > 0 ? det_bound : latimp::cnk_search_bound(l->l, k, cfg);
    const auto ws = latimp::enumerate_sublattices(l->l, k, bound, cfg);
    Json a = Json::array();
    for (const auto& w : ws) a.push_back(io::witness(w));
    emit(Json{{"k", k}, {"det_bound", bound}, {"count", ws.size()}, {"witnesses", a}}, json);
  });
}

latimp_status latimp_project(const latimp_context*, const latimp_lattice* l, const char* witness, char** json) {
  return guard([&] {
    need(l, "lattice");
    const auto w = io::witness_from_json(l->l, parse(witness, "witness"));
    const auto p = latimp::project_along(l->l, w);
    const bool identity = p.lattice.det_squared() * p.witness.det.square() == l->l.det_squared();
    emit(Json{{"witness", io::witness(p.witness)},
              {"auto_saturated", p.auto_saturated},
              {"lattice", io::lattice_to_json(p.lattice)},
              {"determinant", io::sqrt_rational(p.lattice.determinant())},
              {"determinant_identity", identity},
              {"complement_basis", io::doubles(p.complement_basis)},
              {"direction_basis", io::doubles(p.direction_basis)}},
         json);
  });
}

latimp_status latimp_impass(const latimp_context* ctx, const latimp_lattice* l, const char* r, size_t k,
                            double det_bound, char** json) {
  return guard([&] {
    need(l, "lattice");
    const auto& cfg = config_of(ctx);
    const auto rr = radius(r);
    const double bound = det_bound > 0 ? det_bound : latimp::default_det_bound(l->l, k, cfg);
    const auto s = latimp::passage_certificate(l->l, rr, k, bound, cfg);
    const bool validated = (!s.first || s.first->validated) && (!s.best || s.best->validated);
    emit(Json{{"k", k},
              {"r", io::sqrt_rational(rr)},
              {"det_bound", bound},
              {"directions", s.directions},
              {"found", s.first.has_value()},
              {"first", s.first ? io::certificate(*s.first) : Json(nullptr)},
              {"best", s.best ? io::certificate(*s.best) : Json(nullptr)},
              {"validated", validated},
              {"report", s.report}},
         json);
  });
}

latimp_status latimp_max_clearance(const latimp_context* ctx, const latimp_lattice* l, const char* r, size_t k,
                                   double det_bound, char** json) {
  return guard([&] {
    need(l, "lattice");
    const auto& cfg = config_of(ctx);
    const auto rr = radius(r);
    const double bound = det_bound > 0 ? det_bound : latimp::default_det_bound(l->l, k, cfg);
    const auto c = latimp::max_clearance(l->l, rr, k, bound, cfg);
    emit(Json{{"k", k},
              {"r", io::sqrt_rational(rr)},
              {"det_bound", bound},
              {"directions", c.directions},
              {"clearance", c.clearance},
              {"mu", io::sqrt_rational(c.mu)},
              {"witness", io::witness(c.witness)},
              {"certificate", c.certificate ? io::certificate(*c.certificate) : Json(nullptr)}},
         json);
  });
}

latimp_status latimp_nonsep(const latimp_context* ctx, const latimp_lattice* l, const char* r, char** json) {
  return guard([&] {
    need(l, "lattice");
    const auto rr = radius(r);
    const auto res = latimp::is_nonseparable_ball_lattice(l->l, rr, config_of(ctx));
    emit(Json{{"r", io::sqrt_rational(rr)},
              {"nonseparable", res.nonseparable},
              {"margin", res.margin},
              {"dual_lambda1", io::sqrt_rational(res.dual_lambda1)}},
         json);
  });
}

latimp_status latimp_cylinder(const latimp_context* ctx, const latimp_lattice* l, const char* r, size_t k,
                              const char* d, double det_bound, char** json) {
  return guard([&] {
    need(l, "lattice");
    const auto& cfg = config_of(ctx);
    const auto rr = radius(r);
    latimp::BoundReport rep;
    if (d) {
      const latimp::Symbolic v = latimp::Symbolic::parse(d);
      rep.formula_id = "caller";
      rep.n = static_cast<int>(l->l.rank());
      rep.k = static_cast<int>(k);
      rep.value_exact = v;
      rep.value_float = v.to_double();
    } else {
      rep = latimp::dnk_best(static_cast<int>(l->l.rank()), static_cast<int>(k));
    }
    const std::optional<double> bound = det_bound > 0 ? std::optional<double>(det_bound) : std::nullopt;
    const auto c = latimp::free_cylinder(l->l, rr, k, rep, bound, cfg);
    Json j{{"k", k},
           {"r", io::sqrt_rational(rr)},
           {"d", Json{{"formula_id", c.d_formula}, {"value", c.d_value}}},
           {"density", io::symbolic(c.density)},
           {"guaranteed_floor", c.guaranteed_floor},
           {"has_guarantee", c.has_guarantee},
           {"base_radius", c.base_radius},
           {"det_bound", c.det_bound},
           {"directions", c.directions},
           {"certificate", c.certificate ? io::certificate(*c.certificate) : Json(nullptr)},
           {"validated", c.certificate ? c.certificate->validated : false}};
    if (c.d_exact) j["d"]["exact"] = c.d_exact->to_string();
    if (c.floor_exact) j["guaranteed_floor_exact"] = c.floor_exact->to_string();
    emit(j, json);
  });
}

latimp_status latimp_bound(const char* formula, int n, int k, int symmetric, char** json) {
  return guard([&] {
    need(formula, "formula");
    const std::string f = formula;
    if (f == "constants") {
      Json a = Json::array();
      for (const auto& c : latimp::constants(n)) a.push_back(io::constant(c));
      emit(a, json);
      return;
    }
    latimp::BoundReport r;
    if (f == "kappa") r = latimp::kappa_report(n);
    else if (f == "cnk-upper") r = latimp::cnk_upper(n, k);
    else if (f == "dnk-lower") r = latimp::dnk_lower(n, k);
    else if (f == "dnk-best") r = latimp::dnk_best(n, k);
    else if (f == "dnn1-ball") r = latimp::dnn1_ball(n);
    else if (f == "min-dnk") r = latimp::min_dnk_over_bodies(n, k, symmetric != 0);
    else if (f == "max-d21-upper") r = latimp::max_d21_upper();
    else if (f == "mahler-floors") r = latimp::mahler_floors(n);
    else if (f == "d21-chain") r = latimp::d21_chain();
    else latimp::fail(ErrorCode::invalid_input, "unknown formula " + f);
    emit(io::report(r), json);
  });
}

latimp_status latimp_bound_reevaluate(const char* report_json, char** json) {
  return guard([&] {
    const Json j = parse(report_json, "report");
    latimp::BoundReport r;
    r.formula_id = j.at("formula_id").get<std::string>();
    r.n = j.at("n").get<int>();
    r.k = j.at("k").get<int>();
    for (const auto& c : j.at("inputs")) {
      latimp::ConstantEntry e;
      e.id = c.at("id").get<std::string>();
      e.n = c.value("n", 0);
      if (c.contains("exact")) e.value_exact = latimp::Symbolic::parse(c.at("exact").get<std::string>());
      e.value_float = c.at("value").get<double>();
      r.inputs.push_back(std::move(e));
    }
    emit(io::report(latimp::reevaluate(r)), json);
  });
}

latimp_status latimp_chain_table(char** json) {
  return guard([&] { emit(io::table(latimp::chain_table()), json); });
}

latimp_status latimp_polytope_shape(const char* name, int n, latimp_polytope** out) {
  return guard([&] {
    need(name, "shape");
    need(out, "output pointer");
    *out = new latimp_polytope{shape(name, n)};
  });
}

latimp_status latimp_polytope_from_json(const char* json, latimp_polytope** out) {
  return guard([&] {
    need(out, "output pointer");
    *out = new latimp_polytope{io::polytope_from_json(parse(json, "polytope JSON"))};
  });
}

latimp_status latimp_polytope_transform(const latimp_polytope* p, const char* op, latimp_polytope** out) {
  return guard([&] {
    need(p, "polytope");
    need(op, "operation");
    need(out, "output pointer");
    const std::string o = op;
    if (o == "polar") *out = new latimp_polytope{latimp::polar(p->p)};
    else if (o == "difference-body") *out = new latimp_polytope{latimp::difference_body(p->p)};
    else latimp::fail(ErrorCode::invalid_input, "unknown polytope operation " + o);
  });
}

latimp_status latimp_polytope_equal(const latimp_polytope* p, const latimp_polytope* q, int* equal) {
  return guard([&] {
    need(p, "polytope");
    need(q, "polytope");
    need(equal, "output pointer");
    *equal = latimp::equal(p->p, q->p) ? 1 : 0;
  });
}

void latimp_polytope_destroy(latimp_polytope* p) { delete p; }

latimp_status latimp_polytope_report(const latimp_polytope* p, char** json) {
  return guard([&] {
    need(p, "polytope");
    Json j = io::polytope_to_json(p->p);
    j["vertex_count"] = p->p.vertices().size();
    j["facet_count"] = p->p.facets().size();
    j["volume"] = io::symbolic(latimp::volume(p->p));
    j["origin_interior"] = p->p.has_interior_origin();
    const auto z = latimp::is_zonotope(p->p);
    Json zj{{"is_zonotope", z.is_zonotope}};
    if (z.is_zonotope) {
      Json g = Json::array();
      for (const auto& v : z.generators) g.push_back(io::rat_vec(v));
      zj["generators"] = g;
    } else {
      Json f = Json::array();
      for (const auto& v : z.failing_face) f.push_back(io::rat_vec(v));
      zj["failing_face"] = f;
    }
    j["zonotope"] = zj;
    emit(j, json);
  });
}

latimp_status latimp_mahler(const latimp_polytope* p, char** json) {
  return guard([&] {
    need(p, "polytope");
    const auto& k = p->p;
    const int n = static_cast<int>(k.dim());
    Json j{{"dim", n}};
    j["volume"] = io::symbolic(latimp::volume(k));
    const auto db = latimp::difference_body_product(k);
    j["difference_body_product"] = io::symbolic(db.value);
    j["difference_body_floor"] = io::symbolic(db.floor);
    if (k.has_interior_origin()) {
      const auto vp = latimp::volume_product(k);
      j["volume_product"] = io::symbolic(vp);
      const auto floors = latimp::mahler_floors(n);
      j["kuperberg_floor"] = io::symbolic(*floors.value_exact);
      j["above_kuperberg_floor"] = vp.to_double() > floors.value_float;
      j["hanner_value"] = io::symbolic(latimp::Symbolic(latimp::Rational(latimp::Integer(1) << (2 * n)) /
                                                        latimp::factorial(n)));
    }
    emit(j, json);
  });
}

latimp_status latimp_mvee(const latimp_context* ctx, const latimp_polytope* p, int centered, char** json) {
  return guard([&] {
    need(p, "polytope");
    const auto e = latimp::mvee(p->p, centered != 0, config_of(ctx));
    Json j = io::ellipsoid(e);
    j["volume_ratio"] = e.volume / latimp::volume(p->p).to_double();
    emit(j, json);
  });
}

latimp_status latimp_dnn1_body(const latimp_polytope* p, const char* delta_polar, char** json) {
  return guard([&] {
    need(p, "polytope");
    need(delta_polar, "delta_polar");
    emit(io::report(latimp::dnn1_body(p->p, latimp::Symbolic::parse(delta_polar))), json);
  });
}

}  // extern "C"
