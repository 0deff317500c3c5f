#pragma once

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "latimp/error.hpp"
#include "latimp/rational.hpp"

namespace latimp {

// Dense row-major matrix used for exact and floating data alike.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : init) {
      require(r.size() == cols_, ErrorCode::invalid_input, "ragged matrix literal");
      for (const auto& x : r) data_.push_back(x);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < m.rows_; ++i) {
      require(rows[i].size() == m.cols_, ErrorCode::invalid_input, "ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  void set_row(std::size_t i, const std::vector<T>& v) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  std::vector<std::vector<T>> to_rows() const {
    std::vector<std::vector<T>> out;
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RatMatrix = Matrix<Rational>;
using IntMatrix = Matrix<Integer>;
using I64Matrix = Matrix<std::int64_t>;
using DMatrix = Matrix<double>;

template <class A, class B>
auto multiply(const Matrix<A>& a, const Matrix<B>& b) {
  require(a.cols() == b.rows(), ErrorCode::dimension_mismatch, "matrix product shape mismatch");
  Matrix<A> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * A(b(k, j));
    }
  return out;
}

RatMatrix to_rational(const I64Matrix& m);
RatMatrix to_rational(const IntMatrix& m);
IntMatrix to_integer(const I64Matrix& m);
I64Matrix to_int64(const IntMatrix& m);
DMatrix to_double(const RatMatrix& m);

// B * B^T
RatMatrix gram_of(const RatMatrix& basis);
DMatrix gram_of(const DMatrix& basis);
// U * G * U^T for integer U
RatMatrix congruence(const I64Matrix& u, const RatMatrix& g);

Rational determinant(RatMatrix m);
Integer determinant(const IntMatrix& m);  // fraction-free Bareiss
double determinant(const DMatrix& m);
std::size_t rank_of(RatMatrix m);
// Throws degenerate when singular.
RatMatrix inverse(const RatMatrix& m);
// Solves x * A = b for row vector x (A square, invertible).
RatVec solve_left(const RatMatrix& a, const RatVec& b);
RatVec mul_row(const RatVec& x, const RatMatrix& a);
RatVec mul_col(const RatMatrix& a, const RatVec& x);
// x^T G y
Rational bilinear(const RatMatrix& g, const RatVec& x, const RatVec& y);
Rational quadratic(const RatMatrix& g, const IntVec& x);

// Row echelon form over Z with unimodular transform: T * A = H.
struct IntEchelon {
  IntMatrix h;
  IntMatrix transform;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};
IntEchelon integer_echelon(const IntMatrix& a);
// Canonical row Hermite normal form of a full row rank integer matrix.
IntMatrix hermite_normal_form(const IntMatrix& a);
// Integer inverse of a unimodular matrix.
IntMatrix unimodular_inverse(const IntMatrix& u);

// Lower-triangular Cholesky factor (G = L L^T) in doubles.
DMatrix cholesky(const DMatrix& g);
DMatrix inverse(const DMatrix& m);

}  // namespace latimp
