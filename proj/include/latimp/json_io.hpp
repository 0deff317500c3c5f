#pragma once

#include <json.hpp>
#include <string>

#include "latimp/bounds.hpp"
#include "latimp/enumeration.hpp"
#include "latimp/impassability.hpp"
#include "latimp/lattice.hpp"
#include "latimp/polytope.hpp"
#include "latimp/sublattice.hpp"

namespace latimp::io {

using Json = nlohmann::json;

// Rationals travel as "p/q" strings; irrational values as {"exact", "value"}.
Json rational(const Rational& q);
Json sqrt_rational(const SqrtRational& s);
Json symbolic(const Symbolic& s);
Json rat_vec(const RatVec& v);
Json int_matrix(const I64Matrix& m);
Json doubles(const std::vector<double>& v);
Json doubles(const DMatrix& m);

// Accepts JSON numbers (integers or exactly read decimals) and strings.
Rational parse_rational(const Json& j);
// "3/2", "sqrt2", "2*sqrt(3)"; the value must be the square root of a rational.
SqrtRational parse_sqrt(const std::string& text);

// {"ambient_dim", "basis", "exact", optional "scale_sq"} or {"gram"}.
Lattice lattice_from_json(const Json& j);
Json lattice_to_json(const Lattice& l);
Json lattice_info(const Lattice& l, const Config& cfg);

// {"vertices"} or {"halfspaces": [{"a", "b"}]}, optional "metric".
Polytope polytope_from_json(const Json& j);
Json polytope_to_json(const Polytope& p);

SublatticeWitness witness_from_json(const Lattice& l, const Json& j);
Json witness(const SublatticeWitness& w);
Json certificate(const PassageCertificate& c);
Json constant(const ConstantEntry& c);
Json report(const BoundReport& r);
Json table(const ChainTable& t);
Json ellipsoid(const Ellipsoid& e);

Json error(ErrorCode code, const std::string& message);

}  // namespace latimp::io
