#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "latimp/config.hpp"
#include "latimp/lattice.hpp"
#include "latimp/polytope.hpp"
#include "latimp/symbolic.hpp"

namespace latimp {

// Coefficient vectors are always given in the lattice's own basis.

struct ShortestVectors {
  SqrtRational lambda1;
  std::vector<IntVec> vectors;  // all minimal vectors, both signs, lexicographic order
};
// `bound` is a length hint for the first search radius.
ShortestVectors shortest_vectors(const Lattice& l, const Config& cfg = {}, std::optional<double> bound = {});

struct SuccessiveMinima {
  std::vector<SqrtRational> lambda;
  std::vector<IntVec> vectors;
};
SuccessiveMinima successive_minima(const Lattice& l, std::size_t k, const Config& cfg = {});

// Nonzero lattice vectors with squared length <= radius_sq, ordered by
// (length, coefficients).
std::vector<IntVec> vectors_within(const Lattice& l, const Rational& radius_sq, const Config& cfg = {});

// Calls visit(coeffs, exact squared distance) for every lattice vector whose
// distance to the target (coefficients, possibly fractional) is at most
// sqrt(radius_sq), up to a relative slack of cfg.tolerance.
void enumerate_ball(const Lattice& l, const RatVec& center, const Rational& radius_sq, const Config& cfg,
                    const std::function<void(const IntVec&)>& visit);

struct ClosestVector {
  IntVec coeffs;
  std::vector<double> point;
  double distance = 0;
};
// t in ambient coordinates; ties go to the lexicographically smallest coefficients.
ClosestVector closest_vector(const Lattice& l, const std::vector<double>& t, const Config& cfg = {});

struct ExactClosest {
  std::vector<IntVec> minimizers;  // lexicographic order
  Rational distance_sq;
};
ExactClosest closest_vectors_exact(const Lattice& l, const RatVec& target, const Config& cfg = {});

struct VoronoiCell {
  std::vector<IntVec> relevant_vectors;  // lexicographic order
  Polytope polytope;                     // coefficient coordinates, metric = Gram matrix
  SqrtRational circumradius;
  std::vector<RatVec> deep_holes;        // coefficient coordinates of vertices at distance mu
  bool volume_verified = false;
};
// Dirichlet-Voronoi cell of the origin, taken inside the span of the lattice.
VoronoiCell voronoi_cell(const Lattice& l, const Config& cfg = {});

struct CoveringRadius {
  SqrtRational mu;
  RatVec deep_hole_coeffs;
  std::vector<double> deep_hole;  // ambient coordinates
};
// The deep hole reported is the one with lexicographically largest ambient
// coordinates, so Z^n gives (1/2, ..., 1/2).
CoveringRadius covering_radius(const Lattice& l, const Config& cfg = {});

struct Density {
  Symbolic exact;
  double value = 0;
  bool is_exact = true;
};
Density packing_density(const Lattice& l, const Config& cfg = {});
Density covering_density(const Lattice& l, const Config& cfg = {});

}  // namespace latimp
