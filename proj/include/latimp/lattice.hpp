#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "latimp/matrix.hpp"
#include "latimp/rational.hpp"

namespace latimp {

struct LatticeInfo {
  std::string name = "custom";
  std::string source;  // empty for user input
  std::optional<SqrtRational> known_lambda1;
};

// A lattice given by m independent generators in R^n.
//
// The Gram matrix is always held exactly.  Rational bases are stored as
// sqrt(scale_sq) * B0 with B0 rational, which keeps lattices such as sqrt(2)*Z^3
// exact.  A lattice built from doubles keeps the exact value of each double but
// reports exact() == false.
class Lattice {
 public:
  static Lattice from_rational_basis(RatMatrix basis, Rational scale_sq = 1);
  static Lattice from_float_basis(DMatrix basis);
  // Basis realised through a Cholesky factor, ambient_dim() == rank().
  static Lattice from_gram(RatMatrix gram);
  // Exact Gram matrix with a caller-supplied floating embedding of the generators.
  static Lattice from_gram(RatMatrix gram, DMatrix embedding, bool exact = true);

  std::size_t rank() const { return gram_.rows(); }
  std::size_t ambient_dim() const { return basis_.cols(); }
  bool exact() const { return exact_; }

  const RatMatrix& gram() const { return gram_; }
  const DMatrix& basis() const { return basis_; }
  const std::optional<RatMatrix>& rational_basis() const { return rational_basis_; }
  const Rational& scale_sq() const { return scale_sq_; }

  const Rational& det_squared() const { return det_sq_; }
  SqrtRational determinant() const { return SqrtRational(det_sq_); }

  std::vector<double> embed(const IntVec& coeffs) const;
  std::vector<double> embed(const RatVec& coeffs) const;
  Rational norm_sq(const IntVec& coeffs) const { return quadratic(gram_, coeffs); }

  Lattice scaled(const SqrtRational& c) const;
  // Lattice generated by the rows of u * B (u has rank() columns).
  Lattice rebased(const I64Matrix& u) const;

  const LatticeInfo& info() const { return info_; }
  Lattice with_info(LatticeInfo info) const;

 private:
  Lattice() = default;
  void finish();

  RatMatrix gram_;
  DMatrix basis_;
  std::optional<RatMatrix> rational_basis_;
  Rational scale_sq_{1};
  Rational det_sq_{0};
  bool exact_ = true;
  LatticeInfo info_;
};

SqrtRational determinant(const Lattice& l);

// Polar lattice; the basis is G^{-1} B so that the Gram matrix is G^{-1}.
Lattice dual(const Lattice& l);

struct Reduction {
  Lattice lattice;
  I64Matrix transform;  // reduced basis = transform * original basis
};

// LLL reduction on the exact Gram matrix.
Reduction reduce(const Lattice& l, const Rational& delta = Rational(99, 100));
I64Matrix lll_transform(const RatMatrix& gram, const Rational& delta = Rational(99, 100));

// Named lattices: Z (1..24), A and Astar (1..8), D (3..8), E (6..8), Leech (24),
// BambahWoods (3), ThinnestNonseparable (3).
Lattice catalog(std::string_view name, int n = 0);
std::vector<std::string> catalog_names();

}  // namespace latimp
