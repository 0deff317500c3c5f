#include "latimp/impassability.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "latimp/enumeration.hpp"
#include "latimp/error.hpp"

namespace latimp {

namespace {

double dotv(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct Evaluated {
  SublatticeWitness witness;
  Projection projection;
  CoveringRadius cover;
};

Evaluated evaluate(const Lattice& l, const SublatticeWitness& w, const Config& cfg) {
  Projection p = project_along(l, w);
  CoveringRadius c = covering_radius(p.lattice, cfg);
  return Evaluated{p.witness, std::move(p), std::move(c)};
}

PassageCertificate build(const Lattice& l, const SqrtRational& r, const Evaluated& e) {
  PassageCertificate c;
  c.k = e.witness.k();
  c.r = r;
  c.witness = e.witness;
  c.mu = e.cover.mu;
  c.clearance = e.cover.mu.value() - r.value();
  c.deep_hole_coeffs = e.cover.deep_hole_coeffs;
  c.deep_hole = e.cover.deep_hole;
  c.directions = e.projection.direction_basis;
  c.complement_basis = e.projection.complement_basis;
  c.base_point.assign(l.ambient_dim(), 0.0);
  for (std::size_t j = 0; j < c.deep_hole.size(); ++j)
    for (std::size_t t = 0; t < c.base_point.size(); ++t)
      c.base_point[t] += c.deep_hole[j] * c.complement_basis(j, t);
  const Validation v = validate(l, c);
  c.validated = v.ok;
  c.validation_points = v.points;
  c.validation_min_distance = v.min_distance;
  return c;
}

// mu values for every witness, computed on up to cfg.threads workers.
std::vector<Evaluated> evaluate_all(const Lattice& l, const std::vector<SublatticeWitness>& ws, const Config& cfg) {
  std::vector<std::optional<Evaluated>> slots(ws.size());
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(cfg.threads, ws.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < ws.size(); ++i) slots[i] = evaluate(l, ws[i], cfg);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex m;
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < ws.size(); i = next++) {
          try {
            slots[i] = evaluate(l, ws[i], cfg);
          } catch (...) {
            std::lock_guard<std::mutex> g(m);
            if (!err) err = std::current_exception();
          }
        }
      });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
  }
  std::vector<Evaluated> out;
  out.reserve(ws.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

void check_args(const Lattice& l, const SqrtRational& r, std::size_t k) {
  require(k >= 1 && k + 1 <= l.rank(), ErrorCode::domain, "k must lie in 1..n-1");
  require(r.square() > 0, ErrorCode::invalid_input, "ball radius must be positive");
}

}  // namespace

Validation validate(const Lattice& l, const PassageCertificate& c, double tol) {
  const std::size_t n = l.rank(), k = c.k, m = n - k, amb = l.ambient_dim();
  const I64Matrix u = completion(c.witness);
  // Projections of the complement generators and of the base point, in
  // complement coordinates.
  auto project = [&](std::vector<double> x) {
    for (std::size_t i = 0; i < k; ++i) {
      const std::vector<double> q = c.directions.row(i);
      const double t = dotv(x, q);
      for (std::size_t j = 0; j < amb; ++j) x[j] -= t * q[j];
    }
    std::vector<double> y(m);
    for (std::size_t i = 0; i < m; ++i) y[i] = dotv(x, c.complement_basis.row(i));
    return y;
  };
  DMatrix pm(m, m);
  for (std::size_t i = 0; i < m; ++i) pm.set_row(i, project(l.embed(u.row(k + i))));
  const std::vector<double> h = project(c.base_point);
  const DMatrix inv = inverse(pm);

  const double radius = c.mu.value() + c.r.value() + 1;
  std::vector<std::int64_t> lo(m), hi(m);
  double box = 1;
  for (std::size_t i = 0; i < m; ++i) {
    double centre = 0, norm = 0;
    for (std::size_t j = 0; j < m; ++j) {
      centre += h[j] * inv(j, i);
      norm += inv(j, i) * inv(j, i);
    }
    const double w = radius * std::sqrt(norm);
    lo[i] = static_cast<std::int64_t>(std::floor(centre - w - 1e-9));
    hi[i] = static_cast<std::int64_t>(std::ceil(centre + w + 1e-9));
    box *= static_cast<double>(hi[i] - lo[i] + 1);
  }
  require(box <= 5e7, ErrorCode::capability, "certificate validation box is too large");

  Validation v;
  v.min_distance = INFINITY;
  std::vector<std::int64_t> a(lo);
  std::vector<double> y(m);
  while (true) {
    std::fill(y.begin(), y.end(), 0.0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) y[j] += static_cast<double>(a[i]) * pm(i, j);
    double d2 = 0;
    for (std::size_t j = 0; j < m; ++j) d2 += (y[j] - h[j]) * (y[j] - h[j]);
    const double d = std::sqrt(d2);
    if (d <= radius) {
      ++v.points;
      v.min_distance = std::min(v.min_distance, d);
    }
    std::size_t i = 0;
    while (i < m && a[i] == hi[i]) {
      a[i] = lo[i];
      ++i;
    }
    if (i == m) break;
    ++a[i];
  }
  const double scale = std::max(1.0, c.mu.value());
  v.ok = v.points > 0 && v.min_distance >= c.mu.value() - tol * scale &&
         v.min_distance - c.r.value() >= c.clearance - tol * scale && c.clearance > 0;
  return v;
}

std::optional<PassageCertificate> certificate_for(const Lattice& l, const SqrtRational& r,
                                                  const SublatticeWitness& w, const Config& cfg) {
  check_args(l, r, w.k());
  const Evaluated e = evaluate(l, w, cfg);
  if (!(e.cover.mu > r)) return std::nullopt;
  return build(l, r, e);
}

double default_det_bound(const Lattice& l, std::size_t k, const Config& cfg) {
  const SuccessiveMinima sm = successive_minima(l, k, cfg);
  double prod = 3;
  for (const auto& x : sm.lambda) prod *= x.value();
  return prod;
}

PassageSearch passage_certificate(const Lattice& l, const SqrtRational& r, std::size_t k, double det_bound,
                                  const Config& cfg) {
  check_args(l, r, k);
  PassageSearch s;
  s.det_bound = det_bound;
  const auto ws = enumerate_sublattices(l, k, det_bound, cfg);
  const auto evs = evaluate_all(l, ws, cfg);
  s.directions = evs.size();
  const Evaluated* best = nullptr;
  for (const auto& e : evs) {
    if (!(e.cover.mu > r)) continue;
    if (!s.first) s.first = build(l, r, e);
    if (!best || e.cover.mu > best->cover.mu) best = &e;
  }
  if (best) {
    s.best = build(l, r, *best);
    s.report = "passage found";
  } else {
    s.report = "no rational-direction passage up to the determinant bound";
  }
  return s;
}

ClearanceResult max_clearance(const Lattice& l, const SqrtRational& r, std::size_t k, double det_bound,
                              const Config& cfg) {
  check_args(l, r, k);
  ClearanceResult res;
  res.det_bound = det_bound;
  const auto ws = enumerate_sublattices(l, k, det_bound, cfg);
  require(!ws.empty(), ErrorCode::invalid_input, "no sublattice directions below the determinant bound");
  const auto evs = evaluate_all(l, ws, cfg);
  res.directions = evs.size();
  const Evaluated* best = &evs.front();
  for (const auto& e : evs)
    if (e.cover.mu > best->cover.mu) best = &e;
  res.mu = best->cover.mu;
  res.witness = best->witness;
  res.clearance = res.mu.value() - r.value();
  if (best->cover.mu > r) res.certificate = build(l, r, *best);
  return res;
}

NonseparableResult is_nonseparable_ball_lattice(const Lattice& l, const SqrtRational& r, const Config& cfg) {
  require(r.square() > 0, ErrorCode::invalid_input, "ball radius must be positive");
  require(l.rank() == l.ambient_dim(), ErrorCode::invalid_lattice, "non-separability needs a full-rank lattice");
  const Lattice d = Lattice::from_gram(inverse(l.gram()));
  NonseparableResult out;
  out.dual_lambda1 = shortest_vectors(d, cfg).lambda1;
  // lambda_1(L^*)^2 * 4 r^2 >= 1
  const Rational lhs = out.dual_lambda1.square() * 4 * r.square();
  out.nonseparable = l.exact() ? lhs >= 1 : lhs.get_d() >= 1 - cfg.tolerance;
  out.margin = out.dual_lambda1.value() - 1 / (2 * r.value());
  return out;
}

CylinderWitness free_cylinder(const Lattice& l, const SqrtRational& r, std::size_t k, const BoundReport& d,
                              std::optional<double> det_bound, const Config& cfg) {
  check_args(l, r, k);
  const int n = static_cast<int>(l.rank());
  const ShortestVectors sv = shortest_vectors(l, cfg);
  require(sv.lambda1.square() >= 4 * r.square(), ErrorCode::not_a_packing,
          "balls overlap: lambda_1 < 2r, not a packing");
  CylinderWitness c;
  c.d_value = d.value_float;
  c.d_exact = d.value_exact;
  c.d_formula = d.formula_id;
  Rational half_n(n, 2);
  half_n.canonicalize();
  c.density = kappa(n) * Symbolic(r.square()).pow(half_n) / Symbolic::sqrt(l.det_squared());
  const double ratio = d.value_float / c.density.to_double();
  c.guaranteed_floor = std::pow(ratio, 1.0 / n) - 1;
  if (d.value_exact) {
    try {
      Rational e(1, n);
      e.canonicalize();
      c.floor_exact = (*d.value_exact / c.density).pow(e) - Symbolic(1);
      c.guaranteed_floor = c.floor_exact->to_double();
    } catch (const Error&) {
      c.floor_exact.reset();
    }
  }
  c.has_guarantee = c.guaranteed_floor > 0;
  c.det_bound = det_bound ? *det_bound : default_det_bound(l, k, cfg);
  const ClearanceResult best = max_clearance(l, r, k, c.det_bound, cfg);
  c.directions = best.directions;
  c.certificate = best.certificate;
  c.base_radius = std::max(0.0, best.clearance);
  return c;
}

}  // namespace latimp
