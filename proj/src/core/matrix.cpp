#include "latimp/matrix.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace latimp {

RatMatrix to_rational(const I64Matrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(static_cast<long>(m(i, j)));
  return r;
}

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

IntMatrix to_integer(const I64Matrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Integer(static_cast<long>(m(i, j)));
  return r;
}

I64Matrix to_int64(const IntMatrix& m) {
  I64Matrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = to_int64(m(i, j));
  return r;
}

DMatrix to_double(const RatMatrix& m) {
  DMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).get_d();
  return r;
}

RatMatrix gram_of(const RatMatrix& b) {
  RatMatrix g(b.rows(), b.rows());
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      Rational s = 0;
      for (std::size_t k = 0; k < b.cols(); ++k) s += b(i, k) * b(j, k);
      g(i, j) = s;
      g(j, i) = s;
    }
  return g;
}

DMatrix gram_of(const DMatrix& b) {
  DMatrix g(b.rows(), b.rows());
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      double s = 0;
      for (std::size_t k = 0; k < b.cols(); ++k) s += b(i, k) * b(j, k);
      g(i, j) = s;
      g(j, i) = s;
    }
  return g;
}

RatMatrix congruence(const I64Matrix& u, const RatMatrix& g) {
  RatMatrix ug = multiply(to_rational(u), g);
  RatMatrix out(u.rows(), u.rows());
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      Rational s = 0;
      for (std::size_t k = 0; k < u.cols(); ++k)
        if (u(j, k) != 0) s += ug(i, k) * Rational(static_cast<long>(u(j, k)));
      out(i, j) = s;
      out(j, i) = s;
    }
  return out;
}

Rational determinant(RatMatrix m) {
  require(m.rows() == m.cols(), ErrorCode::dimension_mismatch, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      m.swap_rows(p, c);
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

Integer determinant(const IntMatrix& in) {
  require(in.rows() == in.cols(), ErrorCode::dimension_mismatch, "determinant of a non-square matrix");
  IntMatrix m = in;
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(p, k);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

double determinant(const DMatrix& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e.determinant();
}

std::size_t rank_of(RatMatrix m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, r);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c) == 0) continue;
      Rational f = m(i, c) / m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

RatMatrix inverse(const RatMatrix& in) {
  require(in.rows() == in.cols(), ErrorCode::dimension_mismatch, "inverse of a non-square matrix");
  const std::size_t n = in.rows();
  RatMatrix a = in;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) fail(ErrorCode::degenerate, "singular matrix");
    a.swap_rows(p, c);
    inv.swap_rows(p, c);
    Rational piv = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      Rational f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

RatVec mul_row(const RatVec& x, const RatMatrix& a) {
  require(x.size() == a.rows(), ErrorCode::dimension_mismatch, "row-vector product shape mismatch");
  RatVec out(a.cols(), Rational(0));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) out[j] += x[i] * a(i, j);
  }
  return out;
}

RatVec mul_col(const RatMatrix& a, const RatVec& x) {
  require(x.size() == a.cols(), ErrorCode::dimension_mismatch, "matrix-vector product shape mismatch");
  RatVec out(a.rows(), Rational(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (x[j] != 0) out[i] += a(i, j) * x[j];
  return out;
}

RatVec solve_left(const RatMatrix& a, const RatVec& b) { return mul_row(b, inverse(a)); }

Rational bilinear(const RatMatrix& g, const RatVec& x, const RatVec& y) { return dot(x, mul_col(g, y)); }

Rational quadratic(const RatMatrix& g, const IntVec& x) {
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (x[j] != 0) row += g(i, j) * Rational(static_cast<long>(x[j]));
    s += row * Rational(static_cast<long>(x[i]));
  }
  return s;
}

IntEchelon integer_echelon(const IntMatrix& a) {
  IntEchelon e{a, IntMatrix::identity(a.rows()), {}};
  IntMatrix& h = e.h;
  IntMatrix& t = e.transform;
  const std::size_t m = h.rows(), n = h.cols();
  std::size_t row = 0;
  auto combine = [](IntMatrix& mat, std::size_t r, std::size_t i, const Integer& s, const Integer& tt,
                    const Integer& u, const Integer& v) {
    for (std::size_t j = 0; j < mat.cols(); ++j) {
      Integer x = mat(r, j), y = mat(i, j);
      mat(r, j) = s * x + tt * y;
      mat(i, j) = u * x + v * y;
    }
  };
  for (std::size_t c = 0; c < n && row < m; ++c) {
    for (std::size_t i = row + 1; i < m; ++i) {
      if (h(i, c) == 0) continue;
      Integer a0 = h(row, c), b0 = h(i, c), g, s, tt;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), tt.get_mpz_t(), a0.get_mpz_t(), b0.get_mpz_t());
      Integer u = -b0 / g, v = a0 / g;
      combine(h, row, i, s, tt, u, v);
      combine(t, row, i, s, tt, u, v);
    }
    if (h(row, c) == 0) continue;
    if (h(row, c) < 0) {
      for (std::size_t j = 0; j < n; ++j) h(row, j) = -h(row, j);
      for (std::size_t j = 0; j < m; ++j) t(row, j) = -t(row, j);
    }
    e.pivots.push_back(c);
    ++row;
  }
  return e;
}

IntMatrix hermite_normal_form(const IntMatrix& a) {
  IntEchelon e = integer_echelon(a);
  const std::size_t r = e.pivots.size();
  IntMatrix h(r, a.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) h(i, j) = e.h(i, j);
  for (std::size_t k = 0; k < r; ++k) {
    const std::size_t c = e.pivots[k];
    for (std::size_t i = 0; i < k; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(k, c).get_mpz_t());
      if (q == 0) continue;
      for (std::size_t j = 0; j < a.cols(); ++j) h(i, j) -= q * h(k, j);
    }
  }
  return h;
}

IntMatrix unimodular_inverse(const IntMatrix& u) {
  RatMatrix inv = inverse(to_rational(u));
  IntMatrix out(u.rows(), u.cols());
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t j = 0; j < u.cols(); ++j) {
      require(inv(i, j).get_den() == 1, ErrorCode::internal, "matrix is not unimodular");
      out(i, j) = inv(i, j).get_num();
    }
  return out;
}

DMatrix cholesky(const DMatrix& g) {
  const std::size_t n = g.rows();
  DMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = g(j, j);
    for (std::size_t k = 0; k < j; ++k) s -= l(j, k) * l(j, k);
    if (!(s > 0)) fail(ErrorCode::invalid_lattice, "Gram matrix is not positive definite");
    l(j, j) = std::sqrt(s);
    for (std::size_t i = j + 1; i < n; ++i) {
      double t = g(i, j);
      for (std::size_t k = 0; k < j; ++k) t -= l(i, k) * l(j, k);
      l(i, j) = t / l(j, j);
    }
  }
  return l;
}

DMatrix inverse(const DMatrix& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  Eigen::MatrixXd inv = e.inverse();
  DMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = inv(i, j);
  return out;
}

}  // namespace latimp
