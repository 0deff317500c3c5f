#pragma once

#include <optional>
#include <vector>

#include "latimp/config.hpp"
#include "latimp/lattice.hpp"

namespace latimp {

// k-dimensional sublattice of a parent lattice, generated by the rows of
// coeffs (coefficients in the parent basis).
struct SublatticeWitness {
  I64Matrix coeffs;
  SqrtRational det;
  bool saturated = false;

  std::size_t k() const { return coeffs.rows(); }
};

// Validates independence and fills det and the saturation flag.
SublatticeWitness make_witness(const Lattice& l, const I64Matrix& coeffs);
// Generators of L intersected with the span of w, in Hermite normal form.
SublatticeWitness saturate(const Lattice& l, const SublatticeWitness& w);
// Unimodular matrix whose first k rows are the rows of w; invalid_input
// unless w is saturated.
I64Matrix completion(const SublatticeWitness& w);
// Row Hermite normal form; identical for equal sublattices.
I64Matrix canonical_form(const I64Matrix& coeffs);

// Every saturated k-sublattice with determinant <= det_bound, once each,
// ordered by (determinant, canonical form).
std::vector<SublatticeWitness> enumerate_sublattices(const Lattice& l, std::size_t k, double det_bound,
                                                     const Config& cfg = {});

struct DkResult {
  SqrtRational value;
  SublatticeWitness witness;
};
DkResult dk_min(const Lattice& l, std::size_t k, const Config& cfg = {});

struct Projection {
  Lattice lattice;                 // rank - k dimensional, orthonormal coordinates
  SublatticeWitness witness;       // saturated
  I64Matrix completion;            // rows k.. project onto the basis of `lattice`
  DMatrix complement_basis;        // orthonormal rows spanning the complement (ambient coordinates)
  DMatrix direction_basis;         // orthonormal rows spanning lin(witness)
  bool auto_saturated = false;
};
// Orthogonal projection of L onto the orthogonal complement of lin(w) inside lin(L).
Projection project_along(const Lattice& l, const SublatticeWitness& w);

// Proven upper bound for D_k(L): c_{n,k} D(L)^{k/n} when the densest packing
// in dimension n is catalogued, else lambda_1 ... lambda_k.
double cnk_search_bound(const Lattice& l, std::size_t k, const Config& cfg = {});

}  // namespace latimp
