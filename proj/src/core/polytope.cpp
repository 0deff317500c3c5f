#include "latimp/polytope.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>

#include "latimp/error.hpp"

namespace latimp {

namespace {

// Scales v to a primitive integer vector with the same direction.
void make_primitive(RatVec& v) {
  Integer l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  Integer g = 0;
  for (auto& x : v) {
    x *= Rational(l);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
  }
  if (g > 1)
    for (auto& x : v) x /= Rational(g);
}

Halfspace normalized(Halfspace h) {
  Rational s = 0;
  if (h.b != 0) {
    s = abs(h.b);
  } else {
    for (const auto& x : h.a)
      if (x != 0) {
        s = abs(x);
        break;
      }
  }
  if (s != 0 && s != 1) {
    for (auto& x : h.a) x /= s;
    h.b /= s;
  }
  return h;
}

RatVec sub(const RatVec& a, const RatVec& b) {
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

RatVec add(const RatVec& a, const RatVec& b) {
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

std::size_t affine_rank(const std::vector<RatVec>& pts, const std::vector<std::size_t>& idx) {
  if (idx.size() <= 1) return 0;
  RatMatrix m(idx.size() - 1, pts[idx[0]].size());
  for (std::size_t i = 1; i < idx.size(); ++i) m.set_row(i - 1, sub(pts[idx[i]], pts[idx[0]]));
  return rank_of(m);
}

std::size_t affine_rank(const std::vector<RatVec>& pts) {
  std::vector<std::size_t> idx(pts.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return affine_rank(pts, idx);
}

// Incremental rank test over Q.
class Span {
 public:
  explicit Span(std::size_t dim) : dim_(dim) {}
  bool add(RatVec v) {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const std::size_t c = pivots_[k];
      if (v[c] == 0) continue;
      Rational f = v[c] / rows_[k][c];
      for (std::size_t j = 0; j < dim_; ++j) v[j] -= f * rows_[k][j];
    }
    for (std::size_t c = 0; c < dim_; ++c)
      if (v[c] != 0) {
        rows_.push_back(std::move(v));
        pivots_.push_back(c);
        return true;
      }
    return false;
  }
  std::size_t rank() const { return rows_.size(); }

 private:
  std::size_t dim_;
  std::vector<RatVec> rows_;
  std::vector<std::size_t> pivots_;
};

// Vertices of {x : a_i . x <= b_i} by the double description method on the
// homogenised cone {(x, t) : a_i . x - b_i t <= 0, t >= 0}.
std::vector<RatVec> double_description(const std::vector<Halfspace>& hs, std::size_t d) {
  const std::size_t nrows = hs.size() + 1;
  std::vector<RatVec> rows(nrows, RatVec(d + 1, Rational(0)));
  rows[0][d] = -1;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    for (std::size_t j = 0; j < d; ++j) rows[i + 1][j] = hs[i].a[j];
    rows[i + 1][d] = -hs[i].b;
  }

  std::vector<std::size_t> chosen;
  Span span(d + 1);
  for (std::size_t i = 0; i < nrows && chosen.size() < d + 1; ++i)
    if (span.add(rows[i])) chosen.push_back(i);
  if (chosen.size() < d + 1) fail(ErrorCode::unbounded, "halfspaces do not bound a polytope");

  RatMatrix r(d + 1, d + 1);
  for (std::size_t i = 0; i <= d; ++i) r.set_row(i, rows[chosen[i]]);
  const RatMatrix rinv = inverse(r);

  struct Ray {
    RatVec z;
    Bitset zero;
  };
  std::vector<Ray> rays;
  for (std::size_t j = 0; j <= d; ++j) {
    Ray ray{RatVec(d + 1), Bitset(nrows)};
    for (std::size_t i = 0; i <= d; ++i) ray.z[i] = -rinv(i, j);
    make_primitive(ray.z);
    for (std::size_t i = 0; i <= d; ++i)
      if (i != j) ray.zero.set(chosen[i]);
    rays.push_back(std::move(ray));
  }
  Bitset done(nrows);
  for (auto c : chosen) done.set(c);

  for (std::size_t h = 0; h < nrows; ++h) {
    if (done.test(h)) continue;
    std::vector<Rational> s(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      s[i] = dot(rows[h], rays[i].z);
      if (s[i] > 0)
        pos.push_back(i);
      else if (s[i] < 0)
        neg.push_back(i);
    }
    std::vector<Ray> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (s[i] > 0) continue;
      Ray ray = rays[i];
      if (s[i] == 0) ray.zero.set(h);
      next.push_back(std::move(ray));
    }
    for (auto p : pos)
      for (auto q : neg) {
        Bitset common = rays[p].zero & rays[q].zero;
        if (common.count() + 1 < d) continue;
        bool adjacent = true;
        for (std::size_t o = 0; o < rays.size() && adjacent; ++o)
          if (o != p && o != q && common.is_subset_of(rays[o].zero)) adjacent = false;
        if (!adjacent) continue;
        Ray ray{RatVec(d + 1), common};
        for (std::size_t j = 0; j <= d; ++j) ray.z[j] = s[p] * rays[q].z[j] - s[q] * rays[p].z[j];
        make_primitive(ray.z);
        ray.zero.set(h);
        next.push_back(std::move(ray));
      }
    rays = std::move(next);
    done.set(h);
  }

  std::vector<RatVec> out;
  for (const auto& ray : rays) {
    if (ray.z[d] == 0) {
      if (is_zero(ray.z)) continue;
      fail(ErrorCode::unbounded, "halfspaces define an unbounded region");
    }
    RatVec v(d);
    for (std::size_t j = 0; j < d; ++j) v[j] = ray.z[j] / ray.z[d];
    out.push_back(std::move(v));
  }
  if (out.empty()) fail(ErrorCode::degenerate, "halfspaces have empty intersection");
  return out;
}

RatMatrix default_metric(RatMatrix metric, std::size_t d) {
  if (metric.empty()) return RatMatrix::identity(d);
  require(metric.rows() == d && metric.cols() == d, ErrorCode::dimension_mismatch, "metric has wrong size");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < i; ++j)
      require(metric(i, j) == metric(j, i), ErrorCode::invalid_input, "metric must be symmetric");
  require(determinant(metric) > 0, ErrorCode::invalid_input, "metric must be positive definite");
  return metric;
}

void sort_unique(std::vector<RatVec>& pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

}  // namespace

bool Polytope::euclidean() const { return metric_ == RatMatrix::identity(dim_); }

void Polytope::sort_and_index() {
  sort_unique(vertices_);
  incidence_.assign(facets_.size(), Bitset(vertices_.size()));
  for (std::size_t f = 0; f < facets_.size(); ++f)
    for (std::size_t v = 0; v < vertices_.size(); ++v)
      if (dot(facets_[f].a, vertices_[v]) == facets_[f].b) incidence_[f].set(v);
}

Polytope Polytope::from_halfspaces(std::vector<Halfspace> hs, RatMatrix metric) {
  require(!hs.empty(), ErrorCode::invalid_input, "no halfspaces given");
  const std::size_t d = hs[0].a.size();
  require(d >= 1, ErrorCode::invalid_input, "zero-dimensional halfspace");
  std::vector<Halfspace> kept;
  for (auto& h : hs) {
    require(h.a.size() == d, ErrorCode::dimension_mismatch, "halfspaces of mixed dimension");
    if (is_zero(h.a)) {
      require(h.b >= 0, ErrorCode::degenerate, "halfspaces have empty intersection");
      continue;
    }
    kept.push_back(normalized(std::move(h)));
  }
  Polytope p;
  p.dim_ = d;
  p.metric_ = default_metric(std::move(metric), d);
  p.vertices_ = double_description(kept, d);
  sort_unique(p.vertices_);
  require(affine_rank(p.vertices_) == d, ErrorCode::degenerate, "polytope is not full-dimensional");

  std::set<Bitset> seen;
  for (auto& h : kept) {
    Bitset inc(p.vertices_.size());
    std::vector<std::size_t> idx;
    for (std::size_t v = 0; v < p.vertices_.size(); ++v)
      if (dot(h.a, p.vertices_[v]) == h.b) {
        inc.set(v);
        idx.push_back(v);
      }
    if (idx.size() < d || affine_rank(p.vertices_, idx) != d - 1) continue;
    if (!seen.insert(inc).second) continue;
    p.facets_.push_back(h);
  }
  p.sort_and_index();
  return p;
}

Polytope Polytope::from_vertices(std::vector<RatVec> pts, RatMatrix metric) {
  require(!pts.empty(), ErrorCode::invalid_input, "no points given");
  const std::size_t d = pts[0].size();
  require(d >= 1, ErrorCode::invalid_input, "zero-dimensional points");
  for (const auto& x : pts) require(x.size() == d, ErrorCode::dimension_mismatch, "points of mixed dimension");
  sort_unique(pts);
  require(affine_rank(pts) == d, ErrorCode::degenerate, "points do not span a full-dimensional polytope");

  RatVec c(d, Rational(0));
  for (const auto& x : pts)
    for (std::size_t j = 0; j < d; ++j) c[j] += x[j];
  for (auto& x : c) x /= Rational(static_cast<long>(pts.size()));

  std::vector<Halfspace> dual;
  for (const auto& x : pts) dual.push_back(Halfspace{sub(x, c), Rational(1)});
  std::vector<RatVec> ys = double_description(dual, d);

  Polytope p;
  p.dim_ = d;
  p.metric_ = default_metric(std::move(metric), d);
  for (auto& y : ys) p.facets_.push_back(normalized(Halfspace{y, 1 + dot(y, c)}));
  std::sort(p.facets_.begin(), p.facets_.end(), [](const Halfspace& a, const Halfspace& b) {
    if (a.a != b.a) return a.a < b.a;
    return a.b < b.b;
  });
  for (const auto& x : pts) {
    Span span(d);
    for (const auto& f : p.facets_)
      if (dot(f.a, x) == f.b) span.add(f.a);
    if (span.rank() == d) p.vertices_.push_back(x);
  }
  p.sort_and_index();
  return p;
}

bool Polytope::contains(const RatVec& x) const {
  require(x.size() == dim_, ErrorCode::dimension_mismatch, "point has wrong dimension");
  for (const auto& f : facets_)
    if (dot(f.a, x) > f.b) return false;
  return true;
}

bool Polytope::has_interior_origin() const {
  for (const auto& f : facets_)
    if (f.b <= 0) return false;
  return true;
}

RatVec Polytope::vertex_centroid() const {
  RatVec c(dim_, Rational(0));
  for (const auto& v : vertices_)
    for (std::size_t j = 0; j < dim_; ++j) c[j] += v[j];
  for (auto& x : c) x /= Rational(static_cast<long>(vertices_.size()));
  return c;
}

std::vector<Bitset> Polytope::facets_of(const Bitset& face) const {
  std::set<Bitset> cand;
  for (const auto& inc : incidence_) {
    Bitset s = face & inc;
    if (s.none() || s == face) continue;
    cand.insert(s);
  }
  std::vector<Bitset> out;
  for (const auto& s : cand) {
    bool maximal = true;
    for (const auto& t : cand)
      if (t != s && s.is_subset_of(t)) {
        maximal = false;
        break;
      }
    if (maximal) out.push_back(s);
  }
  return out;
}

std::vector<std::vector<std::size_t>> Polytope::faces(std::size_t d) const {
  require(d < dim_, ErrorCode::invalid_input, "face dimension must be below the polytope dimension");
  std::set<Bitset> level;
  Bitset all(vertices_.size());
  all.set();
  level.insert(all);
  for (std::size_t cur = dim_; cur > d; --cur) {
    std::set<Bitset> next;
    for (const auto& f : level)
      for (auto& g : facets_of(f)) next.insert(std::move(g));
    level = std::move(next);
  }
  std::vector<std::vector<std::size_t>> out;
  for (const auto& f : level) {
    std::vector<std::size_t> idx;
    for (auto i = f.find_first(); i != Bitset::npos; i = f.find_next(i)) idx.push_back(i);
    out.push_back(std::move(idx));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Rational Polytope::coordinate_volume() const {
  const std::size_t d = dim_;
  Integer l = 1;
  for (const auto& v : vertices_)
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  std::vector<std::vector<Integer>> iv(vertices_.size(), std::vector<Integer>(d));
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Rational t = vertices_[i][j] * Rational(l);
      iv[i][j] = t.get_num();
    }

  std::map<Bitset, std::vector<Bitset>> memo;
  auto sub_faces = [&](const Bitset& f) -> const std::vector<Bitset>& {
    auto it = memo.find(f);
    if (it == memo.end()) it = memo.emplace(f, facets_of(f)).first;
    return it->second;
  };

  Integer total = 0;
  std::vector<std::size_t> chain;
  IntMatrix m(d, d);
  auto simplex = [&] {
    const auto& o = iv[chain[0]];
    for (std::size_t i = 1; i <= d; ++i)
      for (std::size_t j = 0; j < d; ++j) m(i - 1, j) = iv[chain[i]][j] - o[j];
    total += abs(determinant(m));
  };
  // pulling triangulation: cone from the first vertex of each face over its far facets
  auto recurse = [&](auto&& self, const Bitset& face, std::size_t fd) -> void {
    const std::size_t v0 = face.find_first();
    chain.push_back(v0);
    if (fd == 0) {
      simplex();
    } else {
      for (const auto& g : sub_faces(face))
        if (!g.test(v0)) self(self, g, fd - 1);
    }
    chain.pop_back();
  };
  Bitset all(vertices_.size());
  all.set();
  recurse(recurse, all, d);

  Integer denom;
  mpz_pow_ui(denom.get_mpz_t(), l.get_mpz_t(), d);
  Rational vol(total, denom * factorial(static_cast<int>(d)).get_num());
  vol.canonicalize();
  return vol;
}

Polytope Polytope::scaled(const Rational& c) const {
  require(c != 0, ErrorCode::degenerate, "scaling by zero");
  Polytope p = *this;
  for (auto& v : p.vertices_)
    for (auto& x : v) x *= c;
  for (auto& f : p.facets_) {
    f.b *= c;
    if (c < 0) {
      for (auto& x : f.a) x = -x;
      f.b = -f.b;
    }
    f = normalized(f);
  }
  p.sort_and_index();
  return p;
}

Polytope Polytope::translated(const RatVec& t) const {
  require(t.size() == dim_, ErrorCode::dimension_mismatch, "translation has wrong dimension");
  Polytope p = *this;
  for (auto& v : p.vertices_) v = add(v, t);
  for (auto& f : p.facets_) f = normalized(Halfspace{f.a, f.b + dot(f.a, t)});
  p.sort_and_index();
  return p;
}

Polytope Polytope::linear_image(const RatMatrix& m) const {
  require(m.rows() == dim_ && m.cols() == dim_, ErrorCode::dimension_mismatch, "linear map has wrong size");
  const RatMatrix minv = inverse(m);
  Polytope p = *this;
  for (auto& v : p.vertices_) v = mul_col(m, v);
  for (auto& f : p.facets_) f = normalized(Halfspace{mul_row(f.a, minv), f.b});
  p.sort_and_index();
  return p;
}

Polytope Polytope::with_metric(RatMatrix metric) const {
  Polytope p = *this;
  p.metric_ = default_metric(std::move(metric), dim_);
  return p;
}

Symbolic volume(const Polytope& p) {
  return Symbolic(p.coordinate_volume()) * Symbolic::sqrt(determinant(p.metric()));
}

Polytope polar(const Polytope& p) {
  require(p.has_interior_origin(), ErrorCode::polar_undefined, "origin is not an interior point");
  const RatMatrix ginv = inverse(p.metric());
  Polytope q;
  q.dim_ = p.dim_;
  q.metric_ = p.metric_;
  for (const auto& f : p.facets_) {
    RatVec y = mul_col(ginv, f.a);
    for (auto& x : y) x /= f.b;
    q.vertices_.push_back(std::move(y));
  }
  for (const auto& v : p.vertices_) q.facets_.push_back(normalized(Halfspace{mul_col(p.metric_, v), Rational(1)}));
  q.sort_and_index();
  return q;
}

Polytope minkowski_sum(const Polytope& p, const Polytope& q) {
  require(p.dim() == q.dim(), ErrorCode::dimension_mismatch, "Minkowski sum of bodies of different dimension");
  require(p.metric() == q.metric(), ErrorCode::dimension_mismatch, "Minkowski sum of bodies with different metrics");
  std::vector<RatVec> pts;
  for (const auto& a : p.vertices())
    for (const auto& b : q.vertices()) pts.push_back(add(a, b));
  return Polytope::from_vertices(std::move(pts), p.metric());
}

Polytope difference_body(const Polytope& p) {
  std::vector<RatVec> pts;
  for (const auto& a : p.vertices())
    for (const auto& b : p.vertices()) {
      RatVec d = sub(a, b);
      for (auto& x : d) x /= 2;
      pts.push_back(std::move(d));
    }
  return Polytope::from_vertices(std::move(pts), p.metric());
}

Polytope project(const Polytope& p, const RatMatrix& basis) {
  require(basis.cols() == p.dim(), ErrorCode::dimension_mismatch, "projection basis has wrong width");
  const RatMatrix wg = multiply(basis, p.metric());
  const RatMatrix m = multiply(wg, basis.transpose());
  require(determinant(m) != 0, ErrorCode::degenerate, "projection basis is linearly dependent");
  const RatMatrix minv = inverse(m);
  std::vector<RatVec> pts;
  for (const auto& v : p.vertices()) pts.push_back(mul_col(minv, mul_col(wg, v)));
  return Polytope::from_vertices(std::move(pts), m);
}

bool equal(const Polytope& p, const Polytope& q) {
  if (p.dim() != q.dim() || !(p.metric() == q.metric())) return false;
  for (const auto& v : p.vertices())
    if (!q.contains(v)) return false;
  for (const auto& v : q.vertices())
    if (!p.contains(v)) return false;
  return true;
}

ZonotopeTest is_zonotope(const Polytope& p) {
  ZonotopeTest out;
  const auto& vs = p.vertices();
  std::vector<std::vector<std::size_t>> two_faces;
  if (p.dim() == 2) {
    std::vector<std::size_t> all(vs.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    two_faces.push_back(all);
  } else if (p.dim() > 2) {
    two_faces = p.faces(2);
  }
  for (const auto& f : two_faces) {
    RatVec c(p.dim(), Rational(0));
    for (auto i : f)
      for (std::size_t j = 0; j < p.dim(); ++j) c[j] += vs[i][j];
    for (auto& x : c) x /= Rational(static_cast<long>(f.size()));
    std::set<RatVec> members;
    for (auto i : f) members.insert(vs[i]);
    for (auto i : f) {
      RatVec mirror(p.dim());
      for (std::size_t j = 0; j < p.dim(); ++j) mirror[j] = 2 * c[j] - vs[i][j];
      if (!members.count(mirror)) {
        for (auto k : f) out.failing_face.push_back(vs[k]);
        return out;
      }
    }
  }
  out.is_zonotope = true;

  std::vector<std::vector<std::size_t>> edges;
  if (p.dim() == 1)
    edges.push_back({0, 1});
  else
    edges = p.faces(1);
  std::map<RatVec, RatVec> classes;  // unit-leading direction -> edge vector
  for (const auto& e : edges) {
    RatVec g = sub(vs[e[1]], vs[e[0]]);
    Rational lead = 0;
    for (const auto& x : g)
      if (x != 0) {
        lead = x;
        break;
      }
    if (lead < 0)
      for (auto& x : g) x = -x;
    RatVec key = g;
    for (auto& x : key) x /= abs(lead);
    auto it = classes.find(key);
    if (it == classes.end()) {
      classes.emplace(key, g);
    } else if (it->second != g) {
      out.is_zonotope = false;
      for (auto k : e) out.failing_face.push_back(vs[k]);
      out.generators.clear();
      return out;
    }
  }
  for (auto& [k, g] : classes) out.generators.push_back(g);
  return out;
}

Polytope zonotope(const std::vector<RatVec>& gens, const RatVec& center, RatMatrix metric) {
  require(!gens.empty(), ErrorCode::invalid_input, "zonotope needs generators");
  require(gens.size() <= 20, ErrorCode::capability, "too many zonotope generators");
  std::vector<RatVec> pts;
  const std::size_t k = gens.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    RatVec x = center;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < x.size(); ++j) x[j] += ((mask >> i) & 1 ? Rational(1, 2) : Rational(-1, 2)) * gens[i][j];
    pts.push_back(std::move(x));
  }
  return Polytope::from_vertices(std::move(pts), std::move(metric));
}

Polytope cube(std::size_t n, const Rational& h) {
  require(n >= 1 && h > 0, ErrorCode::invalid_input, "cube needs n >= 1 and positive size");
  std::vector<Halfspace> hs;
  for (std::size_t i = 0; i < n; ++i)
    for (int s : {1, -1}) {
      RatVec a(n, Rational(0));
      a[i] = s;
      hs.push_back(Halfspace{a, h});
    }
  return Polytope::from_halfspaces(std::move(hs));
}

Polytope cross_polytope(std::size_t n) {
  require(n >= 1, ErrorCode::invalid_input, "cross-polytope needs n >= 1");
  std::vector<RatVec> pts;
  for (std::size_t i = 0; i < n; ++i)
    for (int s : {1, -1}) {
      RatVec v(n, Rational(0));
      v[i] = s;
      pts.push_back(v);
    }
  return Polytope::from_vertices(std::move(pts));
}

RatMatrix simplex_lattice_metric(std::size_t n) {
  RatMatrix g(n, n, Rational(1));
  for (std::size_t i = 0; i < n; ++i) g(i, i) = 2;
  return g;
}

Polytope regular_simplex(std::size_t n) {
  require(n >= 1, ErrorCode::invalid_input, "simplex needs n >= 1");
  std::vector<RatVec> pts{RatVec(n, Rational(0))};
  for (std::size_t i = 0; i < n; ++i) {
    RatVec v(n, Rational(0));
    v[i] = 1;
    pts.push_back(v);
  }
  return Polytope::from_vertices(std::move(pts), simplex_lattice_metric(n));
}

std::size_t HannerTree::dim() const {
  if (kind == Kind::segment) return 1;
  return left->dim() + right->dim();
}

std::string HannerTree::to_string() const {
  if (kind == Kind::segment) return "s";
  return std::string(kind == Kind::sum ? "sum(" : "hull(") + left->to_string() + "," + right->to_string() + ")";
}

namespace {

struct HannerParser {
  std::string_view s;
  std::size_t pos = 0;

  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::malformed_tree, "bad Hanner tree '" + std::string(s) + "': " + what);
  }
  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool word(std::string_view w) {
    skip();
    if (s.substr(pos, w.size()) == w) {
      pos += w.size();
      return true;
    }
    return false;
  }
  HannerTree tree() {
    HannerTree t;
    if (word("sum"))
      t.kind = HannerTree::Kind::sum;
    else if (word("hull"))
      t.kind = HannerTree::Kind::hull;
    else if (word("s"))
      return t;
    else
      error("expected s, sum or hull");
    if (!word("(")) error("expected '('");
    t.left = std::make_shared<HannerTree>(tree());
    if (!word(",")) error("expected ','");
    t.right = std::make_shared<HannerTree>(tree());
    if (!word(")")) error("expected ')'");
    return t;
  }
};

std::vector<RatVec> hanner_points(const HannerTree& t) {
  if (t.kind == HannerTree::Kind::segment) return {RatVec{Rational(-1)}, RatVec{Rational(1)}};
  require(t.left && t.right, ErrorCode::malformed_tree, "internal Hanner node needs two children");
  auto a = hanner_points(*t.left);
  auto b = hanner_points(*t.right);
  const std::size_t da = a[0].size(), db = b[0].size();
  std::vector<RatVec> out;
  if (t.kind == HannerTree::Kind::sum) {
    for (const auto& x : a)
      for (const auto& y : b) {
        RatVec v = x;
        v.insert(v.end(), y.begin(), y.end());
        out.push_back(std::move(v));
      }
  } else {
    for (const auto& x : a) {
      RatVec v = x;
      v.resize(da + db, Rational(0));
      out.push_back(std::move(v));
    }
    for (const auto& y : b) {
      RatVec v(da, Rational(0));
      v.insert(v.end(), y.begin(), y.end());
      out.push_back(std::move(v));
    }
  }
  return out;
}

}  // namespace

HannerTree parse_hanner(std::string_view text) {
  HannerParser p{text};
  HannerTree t = p.tree();
  p.skip();
  if (p.pos != text.size()) p.error("trailing characters");
  return t;
}

Polytope hanner(const HannerTree& tree) { return Polytope::from_vertices(hanner_points(tree)); }

std::vector<HannerTree> all_hanner_trees(std::size_t n) {
  require(n >= 1, ErrorCode::invalid_input, "Hanner trees need n >= 1");
  if (n == 1) return {HannerTree{}};
  std::vector<HannerTree> out;
  for (std::size_t a = 1; a < n; ++a) {
    auto ls = all_hanner_trees(a);
    auto rs = all_hanner_trees(n - a);
    for (const auto& l : ls)
      for (const auto& r : rs)
        for (auto kind : {HannerTree::Kind::sum, HannerTree::Kind::hull}) {
          HannerTree t;
          t.kind = kind;
          t.left = std::make_shared<HannerTree>(l);
          t.right = std::make_shared<HannerTree>(r);
          out.push_back(std::move(t));
        }
  }
  return out;
}

SimplexCell simplex_dv_cell(std::size_t n) {
  require(n >= 2, ErrorCode::invalid_input, "simplex cell needs n >= 2");
  // x_i = c_i for i < n and x_n = -sum c; each pair j != l gives x_l - x_j <= 1
  auto coord = [n](std::size_t i) {
    RatVec r(n, Rational(0));
    if (i < n)
      r[i] = 1;
    else
      for (auto& x : r) x = -1;
    return r;
  };
  std::vector<Halfspace> hs;
  for (std::size_t j = 0; j <= n; ++j)
    for (std::size_t l = 0; l <= n; ++l)
      if (j != l) hs.push_back(Halfspace{sub(coord(l), coord(j)), Rational(1)});
  SimplexCell out{Polytope::from_halfspaces(std::move(hs), simplex_lattice_metric(n)), 0, 0, 0};
  out.facets = out.cell.facets().size();
  std::set<RatVec> normals;
  for (const auto& f : out.cell.facets()) normals.insert(f.a);
  for (const auto& f : out.cell.facets()) {
    RatVec neg = f.a;
    for (auto& x : neg) x = -x;
    if (normals.count(neg) && f.a < neg) ++out.facet_pairs;
  }
  const Rational cv = out.cell.coordinate_volume();
  out.volume_squared = cv * cv * determinant(out.cell.metric());
  return out;
}

DMatrix orthonormal_vertices(const Polytope& p) {
  const DMatrix r = cholesky(to_double(p.metric()));
  DMatrix z(p.vertices().size(), p.dim());
  for (std::size_t i = 0; i < p.vertices().size(); ++i)
    for (std::size_t j = 0; j < p.dim(); ++j) {
      double s = 0;
      for (std::size_t k = j; k < p.dim(); ++k) s += r(k, j) * p.vertices()[i][k].get_d();
      z(i, j) = s;
    }
  return z;
}

Ellipsoid mvee(const Polytope& p, bool centered, const Config& cfg) {
  const DMatrix z = orthonormal_vertices(p);
  const int d = static_cast<int>(p.dim());
  const double tol = cfg.mvee_tolerance;
  Ellipsoid e;
  e.center.assign(d, 0.0);

  std::vector<Eigen::VectorXd> q;
  const int lift = centered ? 0 : 1;
  for (std::size_t i = 0; i < z.rows(); ++i) {
    Eigen::VectorXd v(d + lift);
    for (int j = 0; j < d; ++j) v(j) = z(i, j);
    if (lift) v(d) = 1.0;
    q.push_back(v);
    if (centered) q.push_back(-v);
  }
  const int dd = d + lift;
  const std::size_t m = q.size();
  Eigen::VectorXd u = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(m), 1.0 / static_cast<double>(m));
  Eigen::MatrixXd x(dd, dd);
  for (e.iterations = 0; e.iterations <= cfg.mvee_max_iterations; ++e.iterations) {
    x.setZero();
    for (std::size_t i = 0; i < m; ++i) x += u(static_cast<Eigen::Index>(i)) * q[i] * q[i].transpose();
    const Eigen::MatrixXd xinv = x.inverse();
    std::size_t best = 0;
    double gmax = -1;
    for (std::size_t i = 0; i < m; ++i) {
      const double g = q[i].dot(xinv * q[i]);
      if (g > gmax) {
        gmax = g;
        best = i;
      }
    }
    if (gmax <= dd * (1.0 + tol)) {
      e.converged = true;
      break;
    }
    const double step = (gmax - dd) / (dd * (gmax - 1.0));
    u *= (1.0 - step);
    u(static_cast<Eigen::Index>(best)) += step;
  }

  Eigen::MatrixXd a;
  if (centered) {
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(d, d);
    for (std::size_t i = 0; i < m; ++i) s += u(static_cast<Eigen::Index>(i)) * q[i] * q[i].transpose();
    a = s.inverse() / d;
  } else {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(d);
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(d, d);
    for (std::size_t i = 0; i < m; ++i) {
      const Eigen::VectorXd zi = q[i].head(d);
      c += u(static_cast<Eigen::Index>(i)) * zi;
      s += u(static_cast<Eigen::Index>(i)) * zi * zi.transpose();
    }
    a = (s - c * c.transpose()).inverse() / d;
    for (int j = 0; j < d; ++j) e.center[j] = c(j);
  }
  e.shape = DMatrix(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) e.shape(i, j) = 0.5 * (a(i, j) + a(j, i));
  e.volume = kappa(d).to_double() / std::sqrt(a.determinant());
  return e;
}

Symbolic volume_product(const Polytope& k) {
  const Polytope kp = polar(k);
  return Symbolic(k.coordinate_volume() * kp.coordinate_volume() * determinant(k.metric()));
}

DifferenceBodyProduct difference_body_product(const Polytope& k) {
  const Polytope db = difference_body(k);
  const Polytope pd = polar(db);
  const int n = static_cast<int>(k.dim());
  Integer two_n;
  mpz_ui_pow_ui(two_n.get_mpz_t(), 2, static_cast<unsigned long>(n));
  Rational floor = Rational(two_n) * Rational(n + 1) / factorial(n);
  return {Symbolic(k.coordinate_volume() * pd.coordinate_volume() * determinant(k.metric())), Symbolic(floor)};
}

}  // namespace latimp
