#include "latimp/json_io.hpp"

#include <cmath>

#include "latimp/error.hpp"

namespace latimp {

const char* error_code_name(ErrorCode c) noexcept {
  switch (c) {
    case ErrorCode::ok: return "ok";
    case ErrorCode::invalid_input: return "invalid-input";
    case ErrorCode::invalid_lattice: return "invalid-lattice";
    case ErrorCode::unsupported_rank: return "unsupported-rank";
    case ErrorCode::capability: return "capability";
    case ErrorCode::catalog_miss: return "catalog-miss";
    case ErrorCode::projection_mismatch: return "projection-mismatch";
    case ErrorCode::polar_undefined: return "polar-undefined";
    case ErrorCode::unbounded: return "unbounded";
    case ErrorCode::degenerate: return "degenerate";
    case ErrorCode::dimension_mismatch: return "dimension-mismatch";
    case ErrorCode::missing_constant: return "missing-constant";
    case ErrorCode::not_a_packing: return "not-a-packing";
    case ErrorCode::malformed_tree: return "malformed-tree";
    case ErrorCode::domain: return "domain";
    case ErrorCode::internal: return "internal";
  }
  return "unknown";
}

namespace io {

namespace {

Json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

RatMatrix rat_matrix(const Json& j, const char* what) {
  require(j.is_array() && !j.empty(), ErrorCode::invalid_input, std::string(what) + " must be a nonempty array of rows");
  std::vector<RatVec> rows;
  for (const auto& r : j) {
    require(r.is_array(), ErrorCode::invalid_input, std::string(what) + " rows must be arrays");
    RatVec v;
    for (const auto& x : r) v.push_back(parse_rational(x));
    rows.push_back(std::move(v));
  }
  return RatMatrix::from_rows(rows);
}

}  // namespace

Json rational(const Rational& q) { return to_string(q); }

Json sqrt_rational(const SqrtRational& s) { return Json{{"exact", s.to_string()}, {"value", number(s.value())}}; }

Json symbolic(const Symbolic& s) { return Json{{"exact", s.to_string()}, {"value", number(s.to_double())}}; }

Json rat_vec(const RatVec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(rational(x));
  return a;
}

Json int_matrix(const I64Matrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(m.row(i));
  return a;
}

Json doubles(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

Json doubles(const DMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(doubles(m.row(i)));
  return a;
}

Rational parse_rational(const Json& j) {
  if (j.is_string()) return latimp::parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  if (j.is_number_unsigned()) return Rational(Integer(std::to_string(j.get<unsigned long long>())));
  // Decimal literals are taken at their printed value.
  if (j.is_number_float()) return latimp::parse_rational(j.dump());
  fail(ErrorCode::invalid_input, "expected a rational number, got " + j.dump());
}

SqrtRational parse_sqrt(const std::string& text) {
  const Symbolic s = Symbolic::parse(text);
  require(s.to_double() > 0, ErrorCode::invalid_input, "expected a positive value: " + text);
  const auto sq = s.rational_square();
  require(sq.has_value(), ErrorCode::invalid_input, "value must be the square root of a rational: " + text);
  return SqrtRational(*sq);
}

Lattice lattice_from_json(const Json& j) {
  require(j.is_object(), ErrorCode::invalid_input, "lattice file must hold a JSON object");
  if (j.contains("gram")) return Lattice::from_gram(rat_matrix(j.at("gram"), "gram"));
  require(j.contains("basis"), ErrorCode::invalid_input, "lattice file needs \"basis\" or \"gram\"");
  const bool exact = j.value("exact", true);
  Lattice l = [&] {
    if (!exact) {
      const auto& b = j.at("basis");
      require(b.is_array() && !b.empty(), ErrorCode::invalid_input, "basis must be a nonempty array of rows");
      DMatrix m(b.size(), b[0].size());
      for (std::size_t i = 0; i < b.size(); ++i) {
        require(b[i].size() == m.cols(), ErrorCode::invalid_input, "ragged basis rows");
        for (std::size_t c = 0; c < m.cols(); ++c)
          m(i, c) = b[i][c].is_string() ? to_double(latimp::parse_rational(b[i][c].get<std::string>()))
                                        : b[i][c].get<double>();
      }
      return Lattice::from_float_basis(m);
    }
    Rational scale = 1;
    if (j.contains("scale_sq")) scale = parse_rational(j.at("scale_sq"));
    return Lattice::from_rational_basis(rat_matrix(j.at("basis"), "basis"), scale);
  }();
  if (j.contains("ambient_dim"))
    require(j.at("ambient_dim").get<std::size_t>() == l.ambient_dim(), ErrorCode::dimension_mismatch,
            "ambient_dim does not match the basis rows");
  if (j.contains("name")) {
    LatticeInfo info = l.info();
    info.name = j.at("name").get<std::string>();
    l = l.with_info(info);
  }
  return l;
}

Json lattice_to_json(const Lattice& l) {
  Json j;
  j["ambient_dim"] = l.ambient_dim();
  j["exact"] = l.exact();
  if (l.rational_basis()) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < l.rational_basis()->rows(); ++i) rows.push_back(rat_vec(l.rational_basis()->row(i)));
    j["basis"] = rows;
    if (l.scale_sq() != 1) j["scale_sq"] = rational(l.scale_sq());
  } else {
    j["basis"] = doubles(l.basis());
  }
  Json g = Json::array();
  for (std::size_t i = 0; i < l.gram().rows(); ++i) g.push_back(rat_vec(l.gram().row(i)));
  j["gram"] = g;
  return j;
}

Json lattice_info(const Lattice& l, const Config&) {
  Json j;
  j["name"] = l.info().name;
  if (!l.info().source.empty()) j["source"] = l.info().source;
  j["rank"] = l.rank();
  j["ambient_dim"] = l.ambient_dim();
  j["exact"] = l.exact();
  j["determinant"] = sqrt_rational(l.determinant());
  if (l.info().known_lambda1) j["known_lambda1"] = sqrt_rational(*l.info().known_lambda1);
  j["lattice"] = lattice_to_json(l);
  return j;
}

Polytope polytope_from_json(const Json& j) {
  require(j.is_object(), ErrorCode::invalid_input, "polytope file must hold a JSON object");
  RatMatrix metric;
  if (j.contains("metric")) metric = rat_matrix(j.at("metric"), "metric");
  if (j.contains("vertices")) {
    std::vector<RatVec> pts;
    for (const auto& r : j.at("vertices")) {
      RatVec v;
      for (const auto& x : r) v.push_back(parse_rational(x));
      pts.push_back(std::move(v));
    }
    return Polytope::from_vertices(std::move(pts), metric);
  }
  require(j.contains("halfspaces"), ErrorCode::invalid_input, "polytope file needs \"vertices\" or \"halfspaces\"");
  std::vector<Halfspace> hs;
  for (const auto& h : j.at("halfspaces")) {
    Halfspace s;
    for (const auto& x : h.at("a")) s.a.push_back(parse_rational(x));
    s.b = parse_rational(h.at("b"));
    hs.push_back(std::move(s));
  }
  return Polytope::from_halfspaces(std::move(hs), metric);
}

Json polytope_to_json(const Polytope& p) {
  Json j;
  j["dim"] = p.dim();
  Json vs = Json::array();
  for (const auto& v : p.vertices()) vs.push_back(rat_vec(v));
  j["vertices"] = vs;
  Json hs = Json::array();
  for (const auto& h : p.facets()) hs.push_back(Json{{"a", rat_vec(h.a)}, {"b", rational(h.b)}});
  j["halfspaces"] = hs;
  if (!p.euclidean()) {
    Json m = Json::array();
    for (std::size_t i = 0; i < p.metric().rows(); ++i) m.push_back(rat_vec(p.metric().row(i)));
    j["metric"] = m;
  }
  return j;
}

SublatticeWitness witness_from_json(const Lattice& l, const Json& j) {
  const Json& rows = j.is_object() ? j.at("coeffs") : j;
  require(rows.is_array() && !rows.empty(), ErrorCode::invalid_input, "witness coeffs must be a nonempty array");
  I64Matrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].size() == m.cols(), ErrorCode::invalid_input, "ragged witness rows");
    for (std::size_t c = 0; c < m.cols(); ++c) m(i, c) = rows[i][c].get<std::int64_t>();
  }
  return make_witness(l, m);
}

Json witness(const SublatticeWitness& w) {
  return Json{{"coeffs", int_matrix(w.coeffs)}, {"det", sqrt_rational(w.det)}, {"saturated", w.saturated}};
}

Json certificate(const PassageCertificate& c) {
  Json j;
  j["k"] = c.k;
  j["r"] = sqrt_rational(c.r);
  j["witness"] = witness(c.witness);
  j["mu"] = sqrt_rational(c.mu);
  j["clearance"] = number(c.clearance);
  j["deep_hole"] = doubles(c.deep_hole);
  j["deep_hole_coeffs"] = rat_vec(c.deep_hole_coeffs);
  j["plane"] = Json{{"base_point", doubles(c.base_point)}, {"directions", doubles(c.directions)}};
  j["complement_basis"] = doubles(c.complement_basis);
  j["validated"] = c.validated;
  j["validation_points"] = c.validation_points;
  j["validation_min_distance"] = number(c.validation_min_distance);
  return j;
}

Json constant(const ConstantEntry& c) {
  Json j;
  j["id"] = c.id;
  j["kind"] = to_string(c.kind);
  j["n"] = c.n;
  if (c.value_exact) j["exact"] = c.value_exact->to_string();
  j["value"] = number(c.value_float);
  j["source"] = to_string(c.source);
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

Json report(const BoundReport& r) {
  Json j;
  j["formula_id"] = r.formula_id;
  j["n"] = r.n;
  j["k"] = r.k;
  if (r.value_exact) j["exact"] = r.value_exact->to_string();
  j["value"] = number(r.value_float);
  j["strictness"] = to_string(r.strictness);
  Json in = Json::array();
  for (const auto& c : r.inputs) in.push_back(constant(c));
  j["inputs"] = in;
  Json ms = Json::array();
  for (const auto& m : r.members) {
    Json x{{"id", m.id}, {"value", number(m.value)}, {"strictness", to_string(m.strictness)}};
    if (m.exact) x["exact"] = m.exact->to_string();
    ms.push_back(x);
  }
  if (!ms.empty()) j["members"] = ms;
  if (r.best_lower_bound) j["best_lower_bound"] = number(*r.best_lower_bound);
  j["notes"] = r.notes;
  return j;
}

Json table(const ChainTable& t) {
  Json j;
  j["dims"] = t.dims;
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    Json cells = Json::array();
    for (const auto& c : r.cells) {
      Json x{{"n", c.n}, {"value", number(c.value)}, {"published", c.printed}, {"matches", c.matches}};
      if (c.exact) x["exact"] = c.exact->to_string();
      cells.push_back(x);
    }
    rows.push_back(Json{{"id", r.id}, {"label", r.label}, {"cells", cells}});
  }
  j["rows"] = rows;
  j["notes"] = t.notes;
  return j;
}

Json ellipsoid(const Ellipsoid& e) {
  return Json{{"center", doubles(e.center)},
              {"shape", doubles(e.shape)},
              {"volume", number(e.volume)},
              {"iterations", e.iterations},
              {"converged", e.converged}};
}

Json error(ErrorCode code, const std::string& message) {
  return Json{{"error", error_code_name(code)}, {"code", static_cast<int>(code)}, {"message", message}};
}

}  // namespace io
}  // namespace latimp
