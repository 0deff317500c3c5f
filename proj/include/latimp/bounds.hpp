#pragma once

#include <optional>
#include <string>
#include <vector>

#include "latimp/polytope.hpp"
#include "latimp/symbolic.hpp"

namespace latimp {

enum class Strictness { equality, lower_bound, upper_bound, strict_lower_bound, strict_upper_bound };
enum class Source { closed_form, derived_by_oracle, external_catalog, caller };
enum class ConstantKind { packing_density, covering_density, dnk_exact, volume, literal };

const char* to_string(Strictness s);
const char* to_string(Source s);
const char* to_string(ConstantKind k);

struct ConstantEntry {
  std::string id;  // "delta(3)", "theta(2)", "tammela", ...
  ConstantKind kind = ConstantKind::literal;
  int n = 0;
  std::optional<Symbolic> value_exact;
  double value_float = 0;
  Source source = Source::closed_form;
  std::string note;
};

struct ChainMember {
  std::string id;
  std::optional<Symbolic> exact;
  double value = 0;
  Strictness strictness = Strictness::lower_bound;
};

struct BoundReport {
  std::string formula_id;
  int n = 0;
  int k = 0;
  std::optional<Symbolic> value_exact;
  double value_float = 0;
  std::vector<ConstantEntry> inputs;
  Strictness strictness = Strictness::equality;
  std::string notes;
  std::vector<ChainMember> members;
  // Largest member, when it differs from the headline value.
  std::optional<double> best_lower_bound;
};

// Densest lattice packing densities of balls (n <= 8 and 24) and thinnest
// lattice coverings (n <= 5).  Computed from catalog lattices on first use.
ConstantEntry packing_constant(int n);
ConstantEntry covering_constant(int n);
bool has_packing_constant(int n);
bool has_covering_constant(int n);
// Every available constant for dimension n; catalog_miss when there is none.
std::vector<ConstantEntry> constants(int n);

BoundReport kappa_report(int n);
// 2^k (delta/kappa)^{k/n}
BoundReport cnk_upper(int n, int k);
// max of the covering chain and kappa^2/(4^n delta)
BoundReport dnk_lower(int n, int k);
// kappa^2 / (4^n delta): exact thinnest non-separable ball lattice density
BoundReport dnn1_ball(int n);
// V(K) V(((K-K)/2)^*) / (4^n delta_polar) for a caller-supplied
// delta_polar = packing density of ((K-K)/2)^*.
BoundReport dnn1_body(const Polytope& k, const Symbolic& delta_polar);
// Lower bounds on min over (symmetric) convex bodies of d_{n,k}(K) obtained by
// enclosing K in its John ellipsoid.  The headline value is the first
// inequality of the chain; best_lower_bound also weighs the volume-product floor.
BoundReport min_dnk_over_bodies(int n, int k, bool symmetric);
// pi^2 / (16 * 0.8926) from Tammela's packing bound for planar symmetric bodies.
BoundReport max_d21_upper();
// kappa^2/2^n (volume product), kappa^2/8^n (symmetric), kappa^2/(C(2n,n) 4^n)
BoundReport mahler_floors(int n);
// Exact d_{n,k} when known (n = 2 and n = 3 with k = 1, k = n - 1 for
// catalogued packings), otherwise dnk_lower.
BoundReport dnk_best(int n, int k);
// Chain lower bound for n = 2, k = 1; equals sqrt(3) pi / 8.
BoundReport d21_chain();

// Recomputes a report from its recorded inputs only.
BoundReport reevaluate(const BoundReport& r);

struct TableCell {
  int n = 0;
  std::optional<Symbolic> exact;
  double value = 0;
  double printed = 0;    // published four-digit value
  bool matches = false;  // agrees to 4 significant digits (one unit of slack)
};
struct TableRow {
  std::string id;
  std::string label;
  std::vector<TableCell> cells;
};
struct ChainTable {
  std::vector<int> dims;  // 3..8, 24
  std::vector<TableRow> rows;
  std::vector<std::string> notes;
};
// Both first-inequality rows (general, symmetric) and the conjectured minima
// (n+1)/(2^n n!) and 1/n! for k = n-1.
ChainTable chain_table();
bool matches_four_digits(double computed, double printed);

}  // namespace latimp
