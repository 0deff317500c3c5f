#include "latimp/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "latimp/error.hpp"

namespace latimp {

namespace {

constexpr double kSlack = 1e-8;

// Fincke-Pohst enumeration over an LLL-reduced basis with floating Gram-Schmidt data.
class Engine {
 public:
  Engine(const Lattice& l, const Config& cfg) : cfg_(cfg), m_(l.rank()) {
    if (static_cast<int>(m_) > cfg.enumeration_rank_limit)
      fail(ErrorCode::capability, "rank " + std::to_string(m_) + " exceeds the enumeration limit " +
                                      std::to_string(cfg.enumeration_rank_limit));
    u_ = lll_transform(l.gram());
    reduced_gram_ = congruence(u_, l.gram());
    const IntMatrix uinv = unimodular_inverse(to_integer(u_));
    uinv_ = to_double(to_rational(uinv));
    const DMatrix g = to_double(reduced_gram_);
    mu_ = DMatrix(m_, m_);
    r_.assign(m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        double s = g(i, j);
        for (std::size_t k = 0; k < j; ++k) s -= mu_(j, k) * mu_(i, k) * r_[k];
        mu_(i, j) = s / r_[j];
      }
      double s = g(i, i);
      for (std::size_t j = 0; j < i; ++j) s -= mu_(i, j) * mu_(i, j) * r_[j];
      r_[i] = s;
    }
  }

  const RatMatrix& reduced_gram() const { return reduced_gram_; }

  std::vector<double> to_reduced(const std::vector<double>& y) const {
    std::vector<double> out(m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = 0; j < m_; ++j) out[j] += y[i] * uinv_(i, j);
    return out;
  }

  IntVec to_original(const std::vector<std::int64_t>& x) const {
    IntVec out(m_, 0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < m_; ++j) out[j] += x[i] * u_(i, j);
    }
    return out;
  }

  // Nearest-plane rounding of a target in original coefficients.
  IntVec babai(const std::vector<double>& target) const {
    const auto y = to_reduced(target);
    std::vector<std::int64_t> x(m_, 0);
    for (std::size_t i = m_; i-- > 0;) {
      double c = y[i];
      for (std::size_t j = i + 1; j < m_; ++j) c -= mu_(j, i) * (static_cast<double>(x[j]) - y[j]);
      x[i] = static_cast<std::int64_t>(std::llround(c));
    }
    return to_original(x);
  }

  template <class F>
  void run(const std::vector<double>& target, double r2, F&& emit) const {
    const auto y = to_reduced(target);
    const double bound = r2 * (1.0 + kSlack) + 1e-300;
    std::vector<std::int64_t> x(m_, 0);
    std::uint64_t nodes = 0;
    auto level = [&](auto&& self, std::size_t i, double partial) -> void {
      double c = y[i];
      for (std::size_t j = i + 1; j < m_; ++j) c -= mu_(j, i) * (static_cast<double>(x[j]) - y[j]);
      const double rem = bound - partial;
      if (rem < 0) return;
      const double w = std::sqrt(rem / r_[i]);
      const double lo = std::ceil(c - w - 1e-9), hi = std::floor(c + w + 1e-9);
      for (double v = lo; v <= hi; v += 1.0) {
        if (++nodes > cfg_.node_budget)
          fail(ErrorCode::capability, "enumeration exceeded the node budget of " + std::to_string(cfg_.node_budget));
        const double d = partial + r_[i] * (v - c) * (v - c);
        if (d > bound) continue;
        x[i] = static_cast<std::int64_t>(v);
        if (i == 0)
          emit(to_original(x));
        else
          self(self, i - 1, d);
      }
      x[i] = 0;
    };
    level(level, m_ - 1, 0.0);
  }

 private:
  const Config& cfg_;
  std::size_t m_;
  I64Matrix u_;
  RatMatrix reduced_gram_;
  DMatrix uinv_;
  DMatrix mu_;
  std::vector<double> r_;
};

std::vector<double> to_doubles(const RatVec& v) {
  std::vector<double> out;
  for (const auto& x : v) out.push_back(x.get_d());
  return out;
}

Rational distance_sq(const RatMatrix& g, const IntVec& x, const RatVec& t) {
  RatVec d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = Rational(static_cast<long>(x[i])) - t[i];
  return bilinear(g, d, d);
}

bool is_zero_vec(const IntVec& x) {
  return std::all_of(x.begin(), x.end(), [](std::int64_t v) { return v == 0; });
}

// a equals b exactly, or within the relative tolerance for float-born lattices
bool same(const Rational& a, const Rational& b, const Lattice& l, const Config& cfg) {
  if (l.exact()) return a == b;
  const double x = a.get_d(), y = b.get_d();
  return std::fabs(x - y) <= cfg.tolerance * std::max(1.0, std::max(std::fabs(x), std::fabs(y)));
}

std::vector<std::pair<Rational, IntVec>> collect(const Engine& e, const Lattice& l, const Rational& r2,
                                                 const Config& cfg) {
  std::vector<std::pair<Rational, IntVec>> out;
  const std::vector<double> zero(l.rank(), 0.0);
  Rational limit = r2;
  if (!l.exact()) limit *= Rational(1) + rational_from_double(cfg.tolerance);
  e.run(zero, r2.get_d(), [&](const IntVec& x) {
    if (is_zero_vec(x)) return;
    Rational n = l.norm_sq(x);
    if (n <= limit) out.emplace_back(std::move(n), x);
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

void enumerate_ball(const Lattice& l, const RatVec& center, const Rational& radius_sq, const Config& cfg,
                    const std::function<void(const IntVec&)>& visit) {
  require(center.size() == l.rank(), ErrorCode::dimension_mismatch, "center has wrong length");
  Engine e(l, cfg);
  e.run(to_doubles(center), radius_sq.get_d(), visit);
}

std::vector<IntVec> vectors_within(const Lattice& l, const Rational& radius_sq, const Config& cfg) {
  Engine e(l, cfg);
  std::vector<IntVec> out;
  for (auto& [n, x] : collect(e, l, radius_sq, cfg)) out.push_back(std::move(x));
  return out;
}

ShortestVectors shortest_vectors(const Lattice& l, const Config& cfg, std::optional<double> bound) {
  Engine e(l, cfg);
  Rational r2 = e.reduced_gram()(0, 0);
  for (std::size_t i = 1; i < l.rank(); ++i) r2 = std::min(r2, Rational(e.reduced_gram()(i, i)));
  std::vector<std::pair<Rational, IntVec>> cand;
  if (bound && *bound > 0 && rational_from_double(*bound * *bound) < r2)
    cand = collect(e, l, rational_from_double(*bound * *bound), cfg);
  if (cand.empty()) cand = collect(e, l, r2, cfg);
  require(!cand.empty(), ErrorCode::internal, "shortest vector search found nothing");
  ShortestVectors out;
  out.lambda1 = SqrtRational(cand.front().first);
  for (auto& [n, x] : cand)
    if (same(n, cand.front().first, l, cfg)) out.vectors.push_back(x);
  std::sort(out.vectors.begin(), out.vectors.end());
  return out;
}

SuccessiveMinima successive_minima(const Lattice& l, std::size_t k, const Config& cfg) {
  require(k >= 1 && k <= l.rank(), ErrorCode::invalid_input, "need 1 <= k <= rank");
  Engine e(l, cfg);
  std::vector<Rational> diag;
  for (std::size_t i = 0; i < l.rank(); ++i) diag.push_back(e.reduced_gram()(i, i));
  std::sort(diag.begin(), diag.end());
  const auto cand = collect(e, l, diag[k - 1], cfg);

  SuccessiveMinima out;
  std::vector<RatVec> rows;
  std::vector<std::size_t> pivots;
  for (const auto& [n, x] : cand) {
    RatVec v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) v[i] = Rational(static_cast<long>(x[i]));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const std::size_t c = pivots[r];
      if (v[c] == 0) continue;
      Rational f = v[c] / rows[r][c];
      for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * rows[r][j];
    }
    auto it = std::find_if(v.begin(), v.end(), [](const Rational& q) { return q != 0; });
    if (it == v.end()) continue;
    pivots.push_back(static_cast<std::size_t>(it - v.begin()));
    rows.push_back(std::move(v));
    out.lambda.emplace_back(n);
    out.vectors.push_back(x);
    if (out.vectors.size() == k) break;
  }
  require(out.vectors.size() == k, ErrorCode::internal, "successive minima search incomplete");
  return out;
}

ExactClosest closest_vectors_exact(const Lattice& l, const RatVec& target, const Config& cfg) {
  require(target.size() == l.rank(), ErrorCode::dimension_mismatch, "target has wrong length");
  Engine e(l, cfg);
  const auto t = to_doubles(target);
  const IntVec x0 = e.babai(t);
  const Rational d0 = distance_sq(l.gram(), x0, target);
  std::vector<std::pair<Rational, IntVec>> cand;
  e.run(t, d0.get_d(), [&](const IntVec& x) { cand.emplace_back(distance_sq(l.gram(), x, target), x); });
  cand.emplace_back(d0, x0);
  std::sort(cand.begin(), cand.end());
  ExactClosest out;
  out.distance_sq = cand.front().first;
  for (const auto& [d, x] : cand)
    if (same(d, out.distance_sq, l, cfg)) out.minimizers.push_back(x);
  std::sort(out.minimizers.begin(), out.minimizers.end());
  out.minimizers.erase(std::unique(out.minimizers.begin(), out.minimizers.end()), out.minimizers.end());
  return out;
}

ClosestVector closest_vector(const Lattice& l, const std::vector<double>& t, const Config& cfg) {
  require(t.size() == l.ambient_dim(), ErrorCode::dimension_mismatch, "target has wrong dimension");
  const std::size_t m = l.rank(), n = l.ambient_dim();
  const DMatrix& b = l.basis();
  // least squares coefficients y with y B closest to t
  std::vector<double> bt(m, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) bt[i] += b(i, j) * t[j];
  const DMatrix ginv = inverse(gram_of(b));
  std::vector<double> y(m, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) y[i] += ginv(i, j) * bt[j];
  double resid = 0, tn = 0;
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0;
    for (std::size_t i = 0; i < m; ++i) s += y[i] * b(i, j);
    resid += (t[j] - s) * (t[j] - s);
    tn += t[j] * t[j];
  }
  if (std::sqrt(resid) > cfg.tolerance * std::max(1.0, std::sqrt(tn)))
    fail(ErrorCode::projection_mismatch, "target point is not in the span of the lattice");

  auto dist = [&](const IntVec& x) {
    const auto p = l.embed(x);
    double s = 0;
    for (std::size_t j = 0; j < n; ++j) s += (t[j] - p[j]) * (t[j] - p[j]);
    return std::sqrt(s);
  };
  Engine e(l, cfg);
  const IntVec x0 = e.babai(y);
  const double d0 = dist(x0);
  std::vector<std::pair<double, IntVec>> cand{{d0, x0}};
  e.run(y, d0 * d0 * (1.0 + 1e-9) + 1e-15, [&](const IntVec& x) { cand.emplace_back(dist(x), x); });
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : cand) best = std::min(best, c.first);
  const double tie = 1e-12 * std::max(1.0, best);
  ClosestVector out;
  bool have = false;
  for (const auto& [d, x] : cand)
    if (d <= best + tie && (!have || x < out.coeffs)) {
      out.coeffs = x;
      have = true;
    }
  out.point = l.embed(out.coeffs);
  out.distance = dist(out.coeffs);
  return out;
}

VoronoiCell voronoi_cell(const Lattice& l, const Config& cfg) {
  const std::size_t m = l.rank();
  if (static_cast<int>(m) > cfg.voronoi_rank_limit)
    fail(ErrorCode::capability, "rank " + std::to_string(m) + " exceeds the Voronoi limit " +
                                    std::to_string(cfg.voronoi_rank_limit));
  const RatMatrix& g = l.gram();
  std::vector<IntVec> relevant;
  // a coset c + 2L contributes its shortest vector iff that vector is unique up to sign
  for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
    RatVec target(m);
    for (std::size_t i = 0; i < m; ++i) target[i] = ((mask >> i) & 1) ? Rational(-1, 2) : Rational(0);
    const ExactClosest ex = closest_vectors_exact(l, target, cfg);
    if (ex.minimizers.size() != 2) continue;
    for (const auto& x : ex.minimizers) {
      IntVec v(m);
      for (std::size_t i = 0; i < m; ++i) v[i] = static_cast<std::int64_t>((mask >> i) & 1) + 2 * x[i];
      relevant.push_back(v);
    }
  }
  std::sort(relevant.begin(), relevant.end());
  relevant.erase(std::unique(relevant.begin(), relevant.end()), relevant.end());

  std::vector<Halfspace> hs;
  for (const auto& w : relevant) {
    RatVec wr(m);
    for (std::size_t i = 0; i < m; ++i) wr[i] = Rational(static_cast<long>(w[i]));
    hs.push_back(Halfspace{mul_col(g, wr), l.norm_sq(w) / 2});
  }
  VoronoiCell cell{relevant, Polytope::from_halfspaces(std::move(hs), g), SqrtRational(), {}, false};
  cell.volume_verified = cell.polytope.coordinate_volume() == 1;

  Rational best = -1;
  std::vector<Rational> norms;
  for (const auto& v : cell.polytope.vertices()) {
    norms.push_back(bilinear(g, v, v));
    best = std::max(best, norms.back());
  }
  cell.circumradius = SqrtRational(best);
  for (std::size_t i = 0; i < norms.size(); ++i)
    if (same(norms[i], best, l, cfg)) cell.deep_holes.push_back(cell.polytope.vertices()[i]);
  return cell;
}

CoveringRadius covering_radius(const Lattice& l, const Config& cfg) {
  const VoronoiCell cell = voronoi_cell(l, cfg);
  CoveringRadius out;
  out.mu = cell.circumradius;
  bool have = false;
  for (const auto& h : cell.deep_holes) {
    const auto p = l.embed(h);
    bool larger = !have;
    if (have) {
      for (std::size_t j = 0; j < p.size(); ++j) {
        const double scale = std::max(1.0, std::fabs(out.deep_hole[j]));
        if (p[j] > out.deep_hole[j] + 1e-12 * scale) {
          larger = true;
          break;
        }
        if (p[j] < out.deep_hole[j] - 1e-12 * scale) break;
      }
    }
    if (larger) {
      out.deep_hole = p;
      out.deep_hole_coeffs = h;
      have = true;
    }
  }
  return out;
}

namespace {

Density density_from_radius(const Lattice& l, const Rational& radius_sq) {
  const Rational n(static_cast<long>(l.rank()));
  Density d;
  if (!l.exact()) {
    d.value = kappa(static_cast<int>(l.rank())).to_double() * std::pow(radius_sq.get_d(), n.get_d() / 2) /
              std::sqrt(l.det_squared().get_d());
    d.exact = Symbolic(rational_from_double(d.value));
    d.is_exact = false;
    return d;
  }
  d.exact = kappa(static_cast<int>(l.rank())) * Symbolic(radius_sq).pow(n / 2) / Symbolic(l.det_squared()).pow(Rational(1, 2));
  d.value = d.exact.to_double();
  d.is_exact = l.exact();
  return d;
}

}  // namespace

Density packing_density(const Lattice& l, const Config& cfg) {
  const auto sv = shortest_vectors(l, cfg);
  return density_from_radius(l, sv.lambda1.square() / 4);
}

Density covering_density(const Lattice& l, const Config& cfg) {
  const auto cr = covering_radius(l, cfg);
  return density_from_radius(l, cr.mu.square());
}

}  // namespace latimp
