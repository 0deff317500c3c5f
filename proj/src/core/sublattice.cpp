#include "latimp/sublattice.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>

#include "latimp/bounds.hpp"
#include "latimp/enumeration.hpp"
#include "latimp/error.hpp"

namespace latimp {

namespace {

IntMatrix to_int(const I64Matrix& m) { return to_integer(m); }

I64Matrix row_matrix(const std::vector<IntVec>& rows, std::size_t cols) {
  I64Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
  return m;
}

// Key for deduplication and ordering.
IntVec flatten(const I64Matrix& m) {
  IntVec v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
  return v;
}

// Hermite constant power gamma_k^k for k <= 8; Hermite's bound beyond.
double hermite_power(std::size_t k) {
  static const double known[] = {1, 1, 4.0 / 3, 2, 4, 8, 64.0 / 3, 64, 256};
  if (k <= 8) return known[k];
  return std::pow(4.0 / 3, static_cast<double>(k) * (k - 1) / 2.0);
}

bool witness_less(const SublatticeWitness& a, const SublatticeWitness& b) {
  if (a.det != b.det) return a.det < b.det;
  return flatten(a.coeffs) < flatten(b.coeffs);
}

Rational bound_square(double det_bound) {
  const double b = det_bound * (1 + 1e-9);
  return rational_from_double(b * b);
}

// Collects saturated witnesses keyed by canonical form.
class Collector {
 public:
  Collector(const Lattice& l, double bound, bool shrink) : l_(l), bound_(bound), shrink_(shrink) {}

  double bound() const { return bound_; }

  void offer(const I64Matrix& coeffs) {
    SublatticeWitness w = saturate(l_, make_witness(l_, coeffs));
    if (w.det.square() > bound_square(bound_)) return;
    IntVec key = flatten(w.coeffs);
    if (found_.count(key)) return;
    if (shrink_) bound_ = std::min(bound_, w.det.value());
    found_.emplace(std::move(key), std::move(w));
  }

  std::vector<SublatticeWitness> result() const {
    std::vector<SublatticeWitness> out;
    const Rational cap = bound_square(bound_);
    for (const auto& [key, w] : found_)
      if (w.det.square() <= cap) out.push_back(w);
    std::sort(out.begin(), out.end(), witness_less);
    return out;
  }

 private:
  const Lattice& l_;
  double bound_;
  bool shrink_;
  std::map<IntVec, SublatticeWitness> found_;
};

// Only one vector of each +- pair.
std::vector<IntVec> half_space(const std::vector<IntVec>& vs) {
  std::vector<IntVec> out;
  for (const auto& v : vs) {
    const auto it = std::find_if(v.begin(), v.end(), [](std::int64_t x) { return x != 0; });
    if (it != v.end() && *it > 0) out.push_back(v);
  }
  return out;
}

// Codimension one: saturated hyperplane sublattices are the kernels of
// primitive dual vectors a, with determinant D(L) |a|_{G^{-1}}.
void search_dual(const Lattice& l, Collector& col, const Config& cfg) {
  const std::size_t n = l.rank();
  const Lattice d = Lattice::from_gram(inverse(l.gram()));
  const double r = col.bound() / std::sqrt(l.det_squared().get_d());
  const auto vs = half_space(vectors_within(d, bound_square(r), cfg));
  for (const auto& a : vs) {
    std::int64_t g = 0;
    for (auto x : a) g = std::gcd(g, x);
    if (g != 1) continue;
    IntMatrix col_vec(n, 1);
    for (std::size_t i = 0; i < n; ++i) col_vec(i, 0) = Integer(static_cast<long>(a[i]));
    const IntEchelon e = integer_echelon(col_vec);
    I64Matrix kernel(n - 1, n);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) kernel(i - 1, j) = to_int64(e.transform(i, j));
    col.offer(kernel);
  }
}

// k-tuples of short vectors with Hadamard pruning.  Every saturated
// k-sublattice M with det(M) <= B has independent vectors of lengths
// lambda_1(M) <= ... <= lambda_k(M) whose product is at most gamma_k^{k/2} B,
// and each of them lies within gamma_k^{k/2} B / lambda_1(L)^{k-1}.
void search_tuples(const Lattice& l, std::size_t k, Collector& col, const Config& cfg) {
  const double lam1 = shortest_vectors(l, cfg).lambda1.value();
  const double h = std::sqrt(hermite_power(k));
  const double radius = h * col.bound() / std::pow(lam1, static_cast<double>(k - 1));
  const auto vs = half_space(vectors_within(l, bound_square(radius), cfg));
  const std::size_t m = l.rank();
  const DMatrix g = to_double(l.gram());

  std::vector<double> len(vs.size());
  std::vector<std::vector<double>> gv(vs.size(), std::vector<double>(m, 0.0));  // G v
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) gv[i][a] += g(a, b) * static_cast<double>(vs[i][b]);
    double s = 0;
    for (std::size_t a = 0; a < m; ++a) s += gv[i][a] * static_cast<double>(vs[i][a]);
    len[i] = std::sqrt(s);
  }

  std::vector<std::size_t> chosen;
  // Gram-Schmidt of chosen vectors in coefficient space with metric G.
  std::vector<std::vector<double>> ortho;   // orthogonalised coefficient vectors
  std::vector<std::vector<double>> gortho;  // G * ortho
  std::vector<double> onorm;
  double nodes = 0;

  auto residual = [&](std::size_t idx, std::vector<double>& r) {
    r.assign(vs[idx].begin(), vs[idx].end());
    for (std::size_t t = 0; t < ortho.size(); ++t) {
      double c = 0;
      for (std::size_t a = 0; a < m; ++a) c += gortho[t][a] * static_cast<double>(vs[idx][a]);
      c /= onorm[t];
      for (std::size_t a = 0; a < m; ++a) r[a] -= c * ortho[t][a];
    }
    std::vector<double> gr(m, 0.0);
    double s = 0;
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) gr[a] += g(a, b) * r[b];
      s += gr[a] * r[a];
    }
    return std::make_pair(s, gr);
  };

  std::function<void(std::size_t, double)> dfs = [&](std::size_t start, double prefix) {
    const std::size_t remaining = k - chosen.size();
    if (remaining == 0) {
      std::vector<IntVec> rows;
      for (auto i : chosen) rows.push_back(vs[i]);
      col.offer(row_matrix(rows, m));
      return;
    }
    const double cap = h * col.bound() * (1 + 1e-9);
    for (std::size_t i = start; i + remaining <= vs.size(); ++i) {
      if (prefix * std::pow(len[i], static_cast<double>(remaining)) > cap) break;
      if (++nodes > cfg.node_budget)
        fail(ErrorCode::capability, "sublattice search exceeded the node budget; lower det_bound or raise node_budget");
      std::vector<double> r;
      auto [s, gr] = residual(i, r);
      if (s <= 1e-9 * len[i] * len[i]) continue;
      chosen.push_back(i);
      ortho.push_back(std::move(r));
      gortho.push_back(std::move(gr));
      onorm.push_back(s);
      dfs(i + 1, prefix * len[i]);
      chosen.pop_back();
      ortho.pop_back();
      gortho.pop_back();
      onorm.pop_back();
    }
  };
  dfs(0, 1.0);
}

std::vector<SublatticeWitness> search(const Lattice& l, std::size_t k, double det_bound, bool shrink,
                                      const Config& cfg) {
  require(k >= 1 && k + 1 <= l.rank(), ErrorCode::domain, "sublattice dimension must lie in 1..rank-1");
  require(std::isfinite(det_bound), ErrorCode::invalid_input, "det_bound must be finite");
  Collector col(l, det_bound, shrink);
  if (det_bound <= 0) return {};
  if (k + 1 == l.rank() && k > 1)
    search_dual(l, col, cfg);
  else
    search_tuples(l, k, col, cfg);
  return col.result();
}

}  // namespace

SublatticeWitness make_witness(const Lattice& l, const I64Matrix& coeffs) {
  require(coeffs.cols() == l.rank(), ErrorCode::dimension_mismatch, "witness coefficients must have rank() columns");
  require(coeffs.rows() >= 1 && coeffs.rows() <= l.rank(), ErrorCode::invalid_input, "witness needs 1..rank rows");
  const RatMatrix gram = congruence(coeffs, l.gram());
  const Rational d = determinant(gram);
  require(d > 0, ErrorCode::degenerate, "witness rows are linearly dependent");
  SublatticeWitness w;
  w.coeffs = coeffs;
  w.det = SqrtRational(d);
  const IntEchelon e = integer_echelon(to_int(coeffs).transpose());
  bool unit = true;
  for (std::size_t i = 0; i < coeffs.rows(); ++i) unit = unit && abs(e.h(i, i)) == 1;
  w.saturated = unit;
  return w;
}

SublatticeWitness saturate(const Lattice& l, const SublatticeWitness& w) {
  const std::size_t k = w.coeffs.rows();
  const IntEchelon e = integer_echelon(to_int(w.coeffs).transpose());
  const IntMatrix s = unimodular_inverse(e.transform);
  IntMatrix rows(k, w.coeffs.cols());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < w.coeffs.cols(); ++j) rows(i, j) = s(j, i);
  SublatticeWitness out = make_witness(l, to_int64(hermite_normal_form(rows)));
  require(out.saturated, ErrorCode::internal, "saturation failed");
  return out;
}

I64Matrix completion(const SublatticeWitness& w) {
  const std::size_t k = w.coeffs.rows(), m = w.coeffs.cols();
  const IntEchelon e = integer_echelon(to_int(w.coeffs).transpose());
  for (std::size_t i = 0; i < k; ++i)
    require(abs(e.h(i, i)) == 1, ErrorCode::invalid_input, "completion needs a saturated witness");
  const IntMatrix s = unimodular_inverse(e.transform);
  I64Matrix u(m, m);
  for (std::size_t i = 0; i < k; ++i) u.set_row(i, w.coeffs.row(i));
  for (std::size_t i = k; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) u(i, j) = to_int64(s(j, i));
  return u;
}

I64Matrix canonical_form(const I64Matrix& coeffs) { return to_int64(hermite_normal_form(to_int(coeffs))); }

std::vector<SublatticeWitness> enumerate_sublattices(const Lattice& l, std::size_t k, double det_bound,
                                                     const Config& cfg) {
  return search(l, k, det_bound, false, cfg);
}

DkResult dk_min(const Lattice& l, std::size_t k, const Config& cfg) {
  require(k >= 1 && k + 1 <= l.rank(), ErrorCode::domain, "sublattice dimension must lie in 1..rank-1");
  const SuccessiveMinima sm = successive_minima(l, k, cfg);
  const SublatticeWitness start = saturate(l, make_witness(l, row_matrix(sm.vectors, l.rank())));
  auto found = search(l, k, start.det.value(), true, cfg);
  if (found.empty() || start.det < found.front().det) return DkResult{start.det, start};
  return DkResult{found.front().det, found.front()};
}

Projection project_along(const Lattice& l, const SublatticeWitness& w_in) {
  Projection p{l, w_in, {}, {}, {}, false};
  if (!w_in.saturated) {
    p.witness = saturate(l, w_in);
    p.auto_saturated = true;
  }
  const SublatticeWitness& w = p.witness;
  const std::size_t n = l.rank(), k = w.k(), m = n - k;
  require(k >= 1 && k < n, ErrorCode::domain, "projection needs 1 <= k < rank");
  p.completion = completion(w);
  const RatMatrix gu = congruence(p.completion, l.gram());

  RatMatrix a(k, k), b(k, m), c(m, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i < k && j < k) a(i, j) = gu(i, j);
      else if (i < k) b(i, j - k) = gu(i, j);
      else if (j >= k) c(i - k, j - k) = gu(i, j);
    }
  const RatMatrix schur_part = multiply(b.transpose(), multiply(inverse(a), b));
  RatMatrix schur(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) schur(i, j) = c(i, j) - schur_part(i, j);

  // Ambient rows of the completed basis.
  const std::size_t amb = l.ambient_dim();
  std::vector<std::vector<double>> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    IntVec coeff = p.completion.row(i);
    rows[i] = l.embed(coeff);
  }
  auto dotv = [](const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
  };
  auto orthonormalize = [&](std::vector<std::vector<double>> vs, const std::vector<std::vector<double>>& against) {
    std::vector<std::vector<double>> out;
    for (auto& v : vs) {
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& q : against) {
          const double t = dotv(v, q);
          for (std::size_t j = 0; j < amb; ++j) v[j] -= t * q[j];
        }
        for (const auto& q : out) {
          const double t = dotv(v, q);
          for (std::size_t j = 0; j < amb; ++j) v[j] -= t * q[j];
        }
      }
      const double nv = std::sqrt(dotv(v, v));
      require(nv > 1e-12, ErrorCode::degenerate, "projection basis is numerically degenerate");
      for (auto& x : v) x /= nv;
      out.push_back(std::move(v));
    }
    return out;
  };
  const auto q = orthonormalize(std::vector<std::vector<double>>(rows.begin(), rows.begin() + k), {});
  // Complement rows projected off lin(W).
  std::vector<std::vector<double>> proj(rows.begin() + k, rows.end());
  for (auto& v : proj)
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& qq : q) {
        const double t = dotv(v, qq);
        for (std::size_t j = 0; j < amb; ++j) v[j] -= t * qq[j];
      }
  auto e = orthonormalize(proj, q);
  for (auto& v : e) {
    const auto it = std::find_if(v.begin(), v.end(), [](double x) { return std::fabs(x) > 1e-12; });
    if (it != v.end() && *it < 0)
      for (auto& x : v) x = -x;
  }
  DMatrix emb(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) emb(i, j) = dotv(proj[i], e[j]);

  p.direction_basis = DMatrix(k, amb);
  for (std::size_t i = 0; i < k; ++i) p.direction_basis.set_row(i, q[i]);
  p.complement_basis = DMatrix(m, amb);
  for (std::size_t i = 0; i < m; ++i) p.complement_basis.set_row(i, e[i]);

  LatticeInfo info;
  info.name = "projection of " + l.info().name;
  info.source = "projection";
  p.lattice = Lattice::from_gram(schur, emb, l.exact()).with_info(info);
  return p;
}

double cnk_search_bound(const Lattice& l, std::size_t k, const Config& cfg) {
  const int n = static_cast<int>(l.rank());
  require(k >= 1 && k + 1 <= l.rank(), ErrorCode::domain, "sublattice dimension must lie in 1..rank-1");
  if (has_packing_constant(n)) {
    const double c = cnk_upper(n, static_cast<int>(k)).value_float;
    const double d = std::sqrt(l.det_squared().get_d());
    return c * std::pow(d, static_cast<double>(k) / n) * (1 + 1e-12);
  }
  const SuccessiveMinima sm = successive_minima(l, k, cfg);
  double prod = 1;
  for (const auto& x : sm.lambda) prod *= x.value();
  return prod * (1 + 1e-12);
}

}  // namespace latimp
