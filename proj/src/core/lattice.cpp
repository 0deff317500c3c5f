#include "latimp/lattice.hpp"

#include <cmath>

#include "latimp/error.hpp"

namespace latimp {

void Lattice::finish() {
  require(gram_.rows() >= 1, ErrorCode::invalid_lattice, "lattice needs at least one generator");
  require(gram_.rows() <= basis_.cols(), ErrorCode::invalid_lattice, "more generators than ambient dimensions");
  det_sq_ = latimp::determinant(gram_);
  require(det_sq_ > 0, ErrorCode::invalid_lattice, "generators are linearly dependent (Gram determinant <= 0)");
}

Lattice Lattice::from_rational_basis(RatMatrix basis, Rational scale_sq) {
  require(scale_sq > 0, ErrorCode::invalid_lattice, "basis scale must be positive");
  Lattice l;
  RatMatrix g = gram_of(basis);
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) *= scale_sq;
  l.gram_ = std::move(g);
  const double s = std::sqrt(scale_sq.get_d());
  l.basis_ = to_double(basis);
  for (std::size_t i = 0; i < l.basis_.rows(); ++i)
    for (std::size_t j = 0; j < l.basis_.cols(); ++j) l.basis_(i, j) *= s;
  l.rational_basis_ = std::move(basis);
  l.scale_sq_ = scale_sq;
  l.finish();
  return l;
}

Lattice Lattice::from_float_basis(DMatrix basis) {
  RatMatrix rb(basis.rows(), basis.cols());
  for (std::size_t i = 0; i < basis.rows(); ++i)
    for (std::size_t j = 0; j < basis.cols(); ++j) rb(i, j) = rational_from_double(basis(i, j));
  Lattice l = from_rational_basis(std::move(rb));
  l.basis_ = std::move(basis);
  l.exact_ = false;
  return l;
}

Lattice Lattice::from_gram(RatMatrix gram) {
  require(gram.rows() == gram.cols(), ErrorCode::invalid_lattice, "Gram matrix must be square");
  for (std::size_t i = 0; i < gram.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      require(gram(i, j) == gram(j, i), ErrorCode::invalid_lattice, "Gram matrix must be symmetric");
  Lattice l;
  l.gram_ = std::move(gram);
  l.basis_ = DMatrix(l.gram_.rows(), l.gram_.rows());
  l.finish();
  l.basis_ = cholesky(to_double(l.gram_));
  return l;
}

Lattice Lattice::from_gram(RatMatrix gram, DMatrix embedding, bool exact) {
  require(embedding.rows() == gram.rows(), ErrorCode::dimension_mismatch, "embedding has wrong row count");
  Lattice l = from_gram(std::move(gram));
  l.basis_ = std::move(embedding);
  l.exact_ = exact;
  require(l.rank() <= l.ambient_dim(), ErrorCode::invalid_lattice, "embedding dimension below rank");
  return l;
}

std::vector<double> Lattice::embed(const IntVec& c) const {
  require(c.size() == rank(), ErrorCode::dimension_mismatch, "coefficient vector length differs from rank");
  std::vector<double> x(ambient_dim(), 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    for (std::size_t j = 0; j < x.size(); ++j) x[j] += static_cast<double>(c[i]) * basis_(i, j);
  }
  return x;
}

std::vector<double> Lattice::embed(const RatVec& c) const {
  require(c.size() == rank(), ErrorCode::dimension_mismatch, "coefficient vector length differs from rank");
  std::vector<double> x(ambient_dim(), 0.0);
  if (rational_basis_) {
    RatVec r = mul_row(c, *rational_basis_);
    const double s = std::sqrt(scale_sq_.get_d());
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = r[j].get_d() * s;
    return x;
  }
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) x[j] += c[i].get_d() * basis_(i, j);
  return x;
}

Lattice Lattice::scaled(const SqrtRational& c) const {
  require(c.square() > 0, ErrorCode::invalid_input, "scale factor must be positive");
  Lattice l = *this;
  for (std::size_t i = 0; i < l.gram_.rows(); ++i)
    for (std::size_t j = 0; j < l.gram_.cols(); ++j) l.gram_(i, j) *= c.square();
  const double s = c.value();
  for (std::size_t i = 0; i < l.basis_.rows(); ++i)
    for (std::size_t j = 0; j < l.basis_.cols(); ++j) l.basis_(i, j) *= s;
  l.scale_sq_ *= c.square();
  if (l.info_.known_lambda1) l.info_.known_lambda1 = *l.info_.known_lambda1 * c;
  l.finish();
  return l;
}

Lattice Lattice::rebased(const I64Matrix& u) const {
  require(u.cols() == rank(), ErrorCode::dimension_mismatch, "change of basis has wrong width");
  Lattice l = *this;
  l.gram_ = congruence(u, gram_);
  DMatrix b(u.rows(), ambient_dim());
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t k = 0; k < u.cols(); ++k) {
      if (u(i, k) == 0) continue;
      for (std::size_t j = 0; j < ambient_dim(); ++j) b(i, j) += static_cast<double>(u(i, k)) * basis_(k, j);
    }
  l.basis_ = std::move(b);
  if (rational_basis_) l.rational_basis_ = multiply(to_rational(u), *rational_basis_);
  if (u.rows() != rank()) l.info_ = LatticeInfo{};
  l.finish();
  return l;
}

Lattice Lattice::with_info(LatticeInfo info) const {
  Lattice l = *this;
  l.info_ = std::move(info);
  return l;
}

SqrtRational determinant(const Lattice& l) { return l.determinant(); }

Lattice dual(const Lattice& l) {
  require(l.rank() == l.ambient_dim(), ErrorCode::unsupported_rank, "dual lattice needs a full-rank lattice");
  const RatMatrix ginv = inverse(l.gram());
  if (l.rational_basis()) {
    RatMatrix b0 = multiply(ginv, *l.rational_basis());
    for (std::size_t i = 0; i < b0.rows(); ++i)
      for (std::size_t j = 0; j < b0.cols(); ++j) b0(i, j) *= l.scale_sq();
    Lattice d = Lattice::from_rational_basis(std::move(b0), Rational(1) / l.scale_sq());
    if (!l.exact()) return Lattice::from_gram(d.gram(), d.basis(), false);
    return d;
  }
  // keep the embedding of the primal lattice
  return Lattice::from_gram(ginv, multiply(to_double(ginv), l.basis()), l.exact());
}

I64Matrix lll_transform(const RatMatrix& gram, const Rational& delta) {
  const std::size_t m = gram.rows();
  RatMatrix g = gram;
  I64Matrix u = I64Matrix::identity(m);
  RatMatrix mu(m, m);
  RatVec bs(m);

  auto gso = [&] {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        Rational s = g(i, j);
        for (std::size_t l = 0; l < j; ++l) s -= mu(j, l) * mu(i, l) * bs[l];
        mu(i, j) = s / bs[j];
      }
      Rational s = g(i, i);
      for (std::size_t j = 0; j < i; ++j) s -= mu(i, j) * mu(i, j) * bs[j];
      bs[i] = s;
    }
  };
  auto checked_axpy = [&](std::size_t k, std::size_t j, std::int64_t r) {
    for (std::size_t c = 0; c < m; ++c) {
      std::int64_t prod = 0, out = 0;
      if (__builtin_mul_overflow(r, u(j, c), &prod) || __builtin_sub_overflow(u(k, c), prod, &out))
        fail(ErrorCode::capability, "basis transform exceeds 64-bit range");
      u(k, c) = out;
    }
  };

  gso();
  std::size_t k = 1;
  while (k < m) {
    for (std::size_t j = k; j-- > 0;) {
      Integer r = round_of(mu(k, j));
      if (r == 0) continue;
      const Rational rq(r);
      const Rational gkj = g(k, j);
      g(k, k) = g(k, k) - 2 * rq * gkj + rq * rq * g(j, j);
      for (std::size_t i = 0; i < m; ++i) {
        if (i == k) continue;
        g(k, i) -= rq * g(j, i);
        g(i, k) = g(k, i);
      }
      checked_axpy(k, j, to_int64(r));
      for (std::size_t l = 0; l < j; ++l) mu(k, l) -= rq * mu(j, l);
      mu(k, j) -= rq;
    }
    if (bs[k] >= (delta - mu(k, k - 1) * mu(k, k - 1)) * bs[k - 1]) {
      ++k;
    } else {
      g.swap_rows(k, k - 1);
      for (std::size_t i = 0; i < m; ++i) std::swap(g(i, k), g(i, k - 1));
      u.swap_rows(k, k - 1);
      gso();
      k = k > 1 ? k - 1 : 1;
    }
  }
  return u;
}

Reduction reduce(const Lattice& l, const Rational& delta) {
  I64Matrix u = lll_transform(l.gram(), delta);
  Lattice r = l.rebased(u);
  return Reduction{r.with_info(l.info()), std::move(u)};
}

}  // namespace latimp
