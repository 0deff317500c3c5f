/* C interface to the latimp library.
 *
 * Objects are opaque handles released with their *_destroy function.  Every
 * call returns a latimp_status; on failure latimp_last_error() describes the
 * problem for the calling thread.  Reports come back as JSON strings owned by
 * the caller and released with latimp_string_free().
 *
 * Exact values (radii, scale factors, d-values) are passed as text such as
 * "1", "3/5", "sqrt2", "3*sqrt(2)/4" or "9pi/32".
 */
#ifndef LATIMP_H
#define LATIMP_H

#include <stddef.h>

#if defined(_WIN32)
#define LATIMP_API __declspec(dllexport)
#elif defined(LATIMP_BUILDING_LIBRARY)
#define LATIMP_API __attribute__((visibility("default")))
#else
#define LATIMP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum latimp_status {
  LATIMP_OK = 0,
  LATIMP_INVALID_INPUT = 1,
  LATIMP_INVALID_LATTICE = 2,
  LATIMP_UNSUPPORTED_RANK = 3,
  LATIMP_CAPABILITY = 4,
  LATIMP_CATALOG_MISS = 5,
  LATIMP_PROJECTION_MISMATCH = 6,
  LATIMP_POLAR_UNDEFINED = 7,
  LATIMP_UNBOUNDED = 8,
  LATIMP_DEGENERATE = 9,
  LATIMP_DIMENSION_MISMATCH = 10,
  LATIMP_MISSING_CONSTANT = 11,
  LATIMP_NOT_A_PACKING = 12,
  LATIMP_MALFORMED_TREE = 13,
  LATIMP_DOMAIN = 14,
  LATIMP_INTERNAL = 99
} latimp_status;

typedef struct latimp_context latimp_context;
typedef struct latimp_lattice latimp_lattice;
typedef struct latimp_polytope latimp_polytope;

LATIMP_API const char* latimp_version(void);
LATIMP_API const char* latimp_status_name(latimp_status status);
/* Message of the most recent failure on this thread ("" when none). */
LATIMP_API const char* latimp_last_error(void);
LATIMP_API void latimp_string_free(char* s);

/* Context: limits and tolerances.  Keys: tolerance, node_budget,
 * enumeration_rank_limit, voronoi_rank_limit, mvee_tolerance,
 * mvee_max_iterations, threads. */
LATIMP_API latimp_status latimp_context_create(latimp_context** out);
LATIMP_API void latimp_context_destroy(latimp_context* ctx);
LATIMP_API latimp_status latimp_context_set(latimp_context* ctx, const char* key, const char* value);
LATIMP_API latimp_status latimp_context_config(const latimp_context* ctx, char** json);

/* Lattices. */
LATIMP_API latimp_status latimp_lattice_catalog(const char* name, int n, latimp_lattice** out);
LATIMP_API latimp_status latimp_lattice_catalog_names(char** json);
LATIMP_API latimp_status latimp_lattice_from_json(const char* json, latimp_lattice** out);
LATIMP_API latimp_status latimp_lattice_scaled(const latimp_lattice* l, const char* factor, latimp_lattice** out);
LATIMP_API latimp_status latimp_lattice_dual(const latimp_lattice* l, latimp_lattice** out);
LATIMP_API void latimp_lattice_destroy(latimp_lattice* l);
LATIMP_API size_t latimp_lattice_rank(const latimp_lattice* l);

LATIMP_API latimp_status latimp_lattice_info(const latimp_context* ctx, const latimp_lattice* l, char** json);
LATIMP_API latimp_status latimp_svp(const latimp_context* ctx, const latimp_lattice* l, char** json);
LATIMP_API latimp_status latimp_minima(const latimp_context* ctx, const latimp_lattice* l, size_t k, char** json);
LATIMP_API latimp_status latimp_voronoi(const latimp_context* ctx, const latimp_lattice* l, char** json);
LATIMP_API latimp_status latimp_cover(const latimp_context* ctx, const latimp_lattice* l, char** json);
/* target: JSON array of ambient coordinates */
LATIMP_API latimp_status latimp_closest(const latimp_context* ctx, const latimp_lattice* l, const char* target,
                                        char** json);

/* Sublattices.  det_bound <= 0 selects the default for the operation. */
LATIMP_API latimp_status latimp_dk(const latimp_context* ctx, const latimp_lattice* l, size_t k, char** json);
LATIMP_API latimp_status latimp_sublattices(const latimp_context* ctx, const latimp_lattice* l, size_t k,
                                            double det_bound, char** json);
/* witness: {"coeffs": [[...]]} or a bare array of rows */
LATIMP_API latimp_status latimp_project(const latimp_context* ctx, const latimp_lattice* l, const char* witness,
                                        char** json);

/* Passage, clearance, non-separability and free cylinders. */
LATIMP_API latimp_status latimp_impass(const latimp_context* ctx, const latimp_lattice* l, const char* r, size_t k,
                                       double det_bound, char** json);
LATIMP_API latimp_status latimp_max_clearance(const latimp_context* ctx, const latimp_lattice* l, const char* r,
                                              size_t k, double det_bound, char** json);
LATIMP_API latimp_status latimp_nonsep(const latimp_context* ctx, const latimp_lattice* l, const char* r,
                                       char** json);
/* d: exact text for d_{n,k}, or NULL for the best catalogued value/bound. */
LATIMP_API latimp_status latimp_cylinder(const latimp_context* ctx, const latimp_lattice* l, const char* r,
                                         size_t k, const char* d, double det_bound, char** json);

/* Bounds.  formula: kappa, constants, cnk-upper, dnk-lower, dnk-best,
 * dnn1-ball, min-dnk, max-d21-upper, mahler-floors, d21-chain. */
LATIMP_API latimp_status latimp_bound(const char* formula, int n, int k, int symmetric, char** json);
LATIMP_API latimp_status latimp_bound_reevaluate(const char* report_json, char** json);
LATIMP_API latimp_status latimp_chain_table(char** json);

/* Polytopes.  shape: cube, cross, simplex, hexagon, triangle, simplex-cell,
 * or hanner:<tree> such as hanner:hull(sum(s,s),s). */
LATIMP_API latimp_status latimp_polytope_shape(const char* shape, int n, latimp_polytope** out);
LATIMP_API latimp_status latimp_polytope_from_json(const char* json, latimp_polytope** out);
/* op: polar, difference-body */
LATIMP_API latimp_status latimp_polytope_transform(const latimp_polytope* p, const char* op, latimp_polytope** out);
LATIMP_API latimp_status latimp_polytope_equal(const latimp_polytope* p, const latimp_polytope* q, int* equal);
LATIMP_API void latimp_polytope_destroy(latimp_polytope* p);
LATIMP_API latimp_status latimp_polytope_report(const latimp_polytope* p, char** json);
LATIMP_API latimp_status latimp_mahler(const latimp_polytope* p, char** json);
LATIMP_API latimp_status latimp_mvee(const latimp_context* ctx, const latimp_polytope* p, int centered, char** json);
/* delta_polar: exact text for the packing density of ((K-K)/2)^* */
LATIMP_API latimp_status latimp_dnn1_body(const latimp_polytope* p, const char* delta_polar, char** json);

#ifdef __cplusplus
}
#endif

#endif /* LATIMP_H */
