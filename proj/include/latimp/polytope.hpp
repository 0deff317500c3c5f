#pragma once

#include <boost/dynamic_bitset.hpp>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "latimp/config.hpp"
#include "latimp/matrix.hpp"
#include "latimp/rational.hpp"
#include "latimp/symbolic.hpp"

namespace latimp {

using Bitset = boost::dynamic_bitset<>;

// a . x <= b
struct Halfspace {
  RatVec a;
  Rational b;
};

// Exact full-dimensional polytope held in both representations.
//
// Coordinates are taken with respect to a basis whose Gram matrix is metric();
// the identity metric means ordinary Euclidean coordinates.  This lets bodies
// living in a hyperplane (such as the regular simplex in sum x_i = 0) keep
// rational coordinates.
class Polytope {
 public:
  static Polytope from_vertices(std::vector<RatVec> points, RatMatrix metric = {});
  static Polytope from_halfspaces(std::vector<Halfspace> halfspaces, RatMatrix metric = {});

  std::size_t dim() const { return dim_; }
  bool exact() const { return true; }
  const std::vector<RatVec>& vertices() const { return vertices_; }
  const std::vector<Halfspace>& facets() const { return facets_; }
  const RatMatrix& metric() const { return metric_; }
  bool euclidean() const;
  // incidence()[i] marks the vertices lying on facet i
  const std::vector<Bitset>& incidence() const { return incidence_; }

  bool contains(const RatVec& x) const;
  bool has_interior_origin() const;

  // Lebesgue measure in the coordinate system (ignores the metric).
  Rational coordinate_volume() const;
  // Vertex index sets of all faces of dimension d (0 <= d < dim).
  std::vector<std::vector<std::size_t>> faces(std::size_t d) const;
  RatVec vertex_centroid() const;

  Polytope scaled(const Rational& c) const;
  Polytope translated(const RatVec& t) const;
  // Image under x -> M x; the metric is unchanged.
  Polytope linear_image(const RatMatrix& m) const;
  Polytope with_metric(RatMatrix metric) const;

 private:
  Polytope() = default;
  void sort_and_index();
  std::vector<Bitset> facets_of(const Bitset& face) const;

  friend Polytope polar(const Polytope& p);

  std::size_t dim_ = 0;
  std::vector<RatVec> vertices_;
  std::vector<Halfspace> facets_;
  std::vector<Bitset> incidence_;
  RatMatrix metric_;
};

// Volume with respect to the metric: coordinate volume times sqrt(det metric).
Symbolic volume(const Polytope& p);
Polytope polar(const Polytope& p);
Polytope minkowski_sum(const Polytope& p, const Polytope& q);
// (P - P) / 2
Polytope difference_body(const Polytope& p);
// Orthogonal projection onto the span of the rows of `basis`, in the
// coordinates of that basis (metric basis * G * basis^T).
Polytope project(const Polytope& p, const RatMatrix& basis);
// Mutual containment of vertices in the other body's halfspaces.
bool equal(const Polytope& p, const Polytope& q);

struct ZonotopeTest {
  bool is_zonotope = false;
  std::vector<RatVec> generators;   // one per parallel class of edges
  std::vector<RatVec> failing_face; // vertices of a 2-face that is not centrally symmetric
};
ZonotopeTest is_zonotope(const Polytope& p);
// Sum of segments [-g/2, g/2] translated to `center`.
Polytope zonotope(const std::vector<RatVec>& generators, const RatVec& center, RatMatrix metric = {});

Polytope cube(std::size_t n, const Rational& half_edge = 1);
Polytope cross_polytope(std::size_t n);
// conv{0, f_1, ..., f_n} with f_i = e_i - e_{n+1}: the regular simplex
// conv{e_1, ..., e_{n+1}} translated into sum x = 0, metric I + J.
Polytope regular_simplex(std::size_t n);
// Gram matrix I + J of the basis e_i - e_{n+1} of {x in Z^{n+1} : sum x = 0}.
RatMatrix simplex_lattice_metric(std::size_t n);

struct HannerTree {
  enum class Kind { segment, sum, hull } kind = Kind::segment;
  std::shared_ptr<HannerTree> left, right;
  std::size_t dim() const;
  std::string to_string() const;
};
// "s", "sum(T,T)", "hull(T,T)"
HannerTree parse_hanner(std::string_view text);
Polytope hanner(const HannerTree& tree);
// Every labelled binary tree with n segment leaves.
std::vector<HannerTree> all_hanner_trees(std::size_t n);

struct SimplexCell {
  Polytope cell;                 // coordinates in the basis e_i - e_{n+1}
  std::size_t facets = 0;
  std::size_t facet_pairs = 0;   // antipodal pairs
  Rational volume_squared;
};
// Dirichlet-Voronoi cell of 0 in {j in Z^{n+1} : sum j_i = 0} inside its span.
SimplexCell simplex_dv_cell(std::size_t n);

struct Ellipsoid {
  std::vector<double> center;  // orthonormal coordinates
  DMatrix shape;               // {x : (x-c)^T A (x-c) <= 1}
  double volume = 0;
  int iterations = 0;
  bool converged = false;
};
// Khachiyan's algorithm; coordinates are made orthonormal through the metric.
Ellipsoid mvee(const Polytope& p, bool centered, const Config& cfg = {});
DMatrix orthonormal_vertices(const Polytope& p);

Symbolic volume_product(const Polytope& k);

// V(K) V(((K-K)/2)^*) next to the conjectured floor.

struct DifferenceBodyProduct {
  Symbolic value;
  Symbolic floor;  // 2^n (n+1) / n!
};
DifferenceBodyProduct difference_body_product(const Polytope& k);

}  // namespace latimp
