#pragma once

#include <optional>
#include <string>
#include <vector>

#include "latimp/bounds.hpp"
#include "latimp/config.hpp"
#include "latimp/lattice.hpp"
#include "latimp/sublattice.hpp"

namespace latimp {

// A k-flat disjoint from the balls x + rB (x in L): the translate of
// lin(witness) through the lift of a deep hole of the projected lattice.
struct PassageCertificate {
  std::size_t k = 0;
  SqrtRational r;
  SublatticeWitness witness;
  SqrtRational mu;                    // covering radius of the projection
  double clearance = 0;               // mu - r
  RatVec deep_hole_coeffs;            // in the projected lattice basis
  std::vector<double> deep_hole;      // orthonormal complement coordinates
  std::vector<double> base_point;     // ambient
  DMatrix directions;                 // k orthonormal ambient rows
  DMatrix complement_basis;           // orthonormal ambient rows of the complement
  bool validated = false;
  std::size_t validation_points = 0;  // lattice points checked near the plane
  double validation_min_distance = 0;
};

struct Validation {
  bool ok = false;
  std::size_t points = 0;
  double min_distance = 0;
};
// Brute force over the lattice points whose projections fall within
// mu + r + 1 of the deep hole, using the ambient embedding only.
Validation validate(const Lattice& l, const PassageCertificate& c, double tol = 1e-9);

// Certificate for one direction when it exists (mu > r).
std::optional<PassageCertificate> certificate_for(const Lattice& l, const SqrtRational& r,
                                                  const SublatticeWitness& w, const Config& cfg = {});

struct PassageSearch {
  std::optional<PassageCertificate> first;  // smallest determinant with mu > r
  std::optional<PassageCertificate> best;   // largest clearance
  std::size_t directions = 0;
  double det_bound = 0;
  std::string report;
};
// A missing certificate only means no rational direction up to det_bound works.
PassageSearch passage_certificate(const Lattice& l, const SqrtRational& r, std::size_t k, double det_bound,
                                  const Config& cfg = {});

struct ClearanceResult {
  double clearance = 0;           // best mu - r over searched directions (may be <= 0)
  SqrtRational mu;
  SublatticeWitness witness;
  std::optional<PassageCertificate> certificate;  // present when clearance > 0
  std::size_t directions = 0;
  double det_bound = 0;
};
// Ties between directions are broken by (determinant, canonical form).
ClearanceResult max_clearance(const Lattice& l, const SqrtRational& r, std::size_t k, double det_bound,
                              const Config& cfg = {});

// 3 lambda_1 ... lambda_k
double default_det_bound(const Lattice& l, std::size_t k, const Config& cfg = {});

struct NonseparableResult {
  bool nonseparable = false;
  double margin = 0;               // lambda_1(L^*) - 1/(2r)
  SqrtRational dual_lambda1;
};
// Balls x + rB are met by every hyperplane iff lambda_1(L^*) >= 1/(2r).
NonseparableResult is_nonseparable_ball_lattice(const Lattice& l, const SqrtRational& r, const Config& cfg = {});

struct CylinderWitness {
  std::optional<PassageCertificate> certificate;
  double base_radius = 0;                    // best clearance found, >= 0
  std::optional<Symbolic> floor_exact;       // (d / density)^{1/n} - 1
  double guaranteed_floor = 0;
  bool has_guarantee = false;                // floor > 0
  Symbolic density;                          // kappa_n r^n / D(L)
  double d_value = 0;
  std::optional<Symbolic> d_exact;
  std::string d_formula;
  std::size_t directions = 0;
  double det_bound = 0;
};
// Free cylinder about a k-flat.  d is a lower bound (or exact value) of
// d_{n,k}; the guarantee is a cylinder of radius `guaranteed_floor`.
CylinderWitness free_cylinder(const Lattice& l, const SqrtRational& r, std::size_t k, const BoundReport& d,
                              std::optional<double> det_bound = {}, const Config& cfg = {});

}  // namespace latimp
