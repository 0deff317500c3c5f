#include "latimp/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <mutex>
#include <sstream>

#include "latimp/enumeration.hpp"
#include "latimp/error.hpp"
#include "latimp/lattice.hpp"

namespace latimp {

const char* to_string(Strictness s) {
  switch (s) {
    case Strictness::equality: return "equality";
    case Strictness::lower_bound: return "lower-bound";
    case Strictness::upper_bound: return "upper-bound";
    case Strictness::strict_lower_bound: return "strict-lower-bound";
    case Strictness::strict_upper_bound: return "strict-upper-bound";
  }
  return "?";
}

const char* to_string(Source s) {
  switch (s) {
    case Source::closed_form: return "closed-form";
    case Source::derived_by_oracle: return "derived-by-oracle";
    case Source::external_catalog: return "external-catalog";
    case Source::caller: return "caller";
  }
  return "?";
}

const char* to_string(ConstantKind k) {
  switch (k) {
    case ConstantKind::packing_density: return "packing-density";
    case ConstantKind::covering_density: return "covering-density";
    case ConstantKind::dnk_exact: return "dnk-exact";
    case ConstantKind::volume: return "volume";
    case ConstantKind::literal: return "literal";
  }
  return "?";
}

namespace {

constexpr int kMaxDim = 24;

// Published lower bound for the packing density of planar symmetric bodies.
const Rational kTammela(4463, 5000);

struct Slot {
  std::once_flag once;
  ConstantEntry entry;
};

std::array<Slot, kMaxDim + 1>& packing_slots() {
  static std::array<Slot, kMaxDim + 1> s;
  return s;
}
std::array<Slot, kMaxDim + 1>& covering_slots() {
  static std::array<Slot, kMaxDim + 1> s;
  return s;
}

std::string id_of(const char* stem, int n) { return std::string(stem) + "(" + std::to_string(n) + ")"; }

ConstantEntry make_packing(int n) {
  ConstantEntry e;
  e.id = id_of("delta", n);
  e.kind = ConstantKind::packing_density;
  e.n = n;
  if (n == 24) {
    // Leech lattice: lambda_1 = 2, determinant 1, so the density is kappa_24.
    e.value_exact = kappa(24);
    e.source = Source::external_catalog;
    e.note = "Leech lattice, lambda_1 = 2 from catalog metadata";
  } else {
    static const char* names[] = {"", "Z", "A", "D", "D", "D", "E", "E", "E"};
    const Lattice l = catalog(names[n], n);
    const Density d = packing_density(l);
    e.value_exact = d.exact;
    e.source = Source::derived_by_oracle;
    e.note = std::string("packing density of catalog ") + names[n] + std::to_string(n);
  }
  e.value_float = e.value_exact->to_double();
  return e;
}

ConstantEntry make_covering(int n) {
  ConstantEntry e;
  e.id = id_of("theta", n);
  e.kind = ConstantKind::covering_density;
  e.n = n;
  const Density d = covering_density(catalog("Astar", n));
  e.value_exact = d.exact;
  e.value_float = d.exact.to_double();
  e.source = Source::derived_by_oracle;
  e.note = "covering density of catalog Astar" + std::to_string(n);
  return e;
}

// Exact value when the symbolic layer can carry it, float always.
struct Val {
  std::optional<Symbolic> e;
  double f = 0;

  static Val of(const Symbolic& s) { return Val{s, s.to_double()}; }
  static Val of(const ConstantEntry& c) { return Val{c.value_exact, c.value_float}; }
  static Val flt(double x) { return Val{std::nullopt, x}; }
};

template <class Op>
std::optional<Symbolic> lift(const std::optional<Symbolic>& a, const std::optional<Symbolic>& b, Op op) {
  if (!a || !b) return std::nullopt;
  try {
    return op(*a, *b);
  } catch (const Error&) {
    return std::nullopt;
  }
}

Val operator*(const Val& a, const Val& b) {
  return Val{lift(a.e, b.e, [](const Symbolic& x, const Symbolic& y) { return x * y; }), a.f * b.f};
}
Val operator/(const Val& a, const Val& b) {
  return Val{lift(a.e, b.e, [](const Symbolic& x, const Symbolic& y) { return x / y; }), a.f / b.f};
}
Val pow(const Val& a, const Rational& r) {
  std::optional<Symbolic> e;
  if (a.e) {
    try {
      e = a.e->pow(r);
    } catch (const Error&) {
    }
  }
  return Val{e, std::pow(a.f, r.get_d())};
}

// Source of constants for a formula: either the live catalog (recording what
// was used) or a previously recorded input list.
class Inputs {
 public:
  Inputs() = default;
  explicit Inputs(const std::vector<ConstantEntry>& replay) : replay_(&replay) {}

  Val get(const std::string& id, const std::function<ConstantEntry()>& make) {
    for (const auto& c : used_)
      if (c.id == id) return Val::of(c);
    if (replay_) {
      const auto it = std::find_if(replay_->begin(), replay_->end(), [&](const ConstantEntry& c) { return c.id == id; });
      require(it != replay_->end(), ErrorCode::missing_constant, "report has no recorded input " + id);
      used_.push_back(*it);
    } else {
      require(static_cast<bool>(make), ErrorCode::missing_constant, "no value for input " + id);
      used_.push_back(make());
    }
    return Val::of(used_.back());
  }
  bool has(const std::string& id, bool live_available) const {
    if (!replay_) return live_available;
    return std::any_of(replay_->begin(), replay_->end(), [&](const ConstantEntry& c) { return c.id == id; });
  }

  Val delta(int n) { return get(id_of("delta", n), [n] { return packing_constant(n); }); }
  Val theta(int n) { return get(id_of("theta", n), [n] { return covering_constant(n); }); }
  bool has_delta(int n) const { return has(id_of("delta", n), has_packing_constant(n)); }
  bool has_theta(int n) const { return has(id_of("theta", n), has_covering_constant(n)); }

  const std::vector<ConstantEntry>& recorded() const { return used_; }

 private:
  const std::vector<ConstantEntry>* replay_ = nullptr;
  std::vector<ConstantEntry> used_;
};

Rational frac(long a, long b) {
  Rational q(a, b);
  q.canonicalize();
  return q;
}

Val kap(int n) { return Val::of(kappa(n)); }
Val rat(const Rational& q) { return Val::of(Symbolic(q)); }
Val pow2(const Rational& e) { return Val::of(Symbolic::power(Rational(2), e)); }

void finish(BoundReport& r, const Val& v, Inputs& in) {
  r.value_exact = v.e;
  r.value_float = v.e ? v.e->to_double() : v.f;
  r.inputs = in.recorded();
}

ChainMember member(std::string id, const Val& v, Strictness s) {
  return ChainMember{std::move(id), v.e, v.e ? v.e->to_double() : v.f, s};
}

void check_nk(int n, int k) {
  require(n >= 2 && n <= kMaxDim, ErrorCode::domain, "dimension must lie in 2..24");
  require(k >= 1 && k <= n - 1, ErrorCode::domain, "k must lie in 1..n-1");
}

Val require_delta(Inputs& in, int n) {
  require(in.has_delta(n), ErrorCode::missing_constant,
          "densest lattice packing of balls is not known in dimension " + std::to_string(n));
  return in.delta(n);
}

// 2^k (delta_n / kappa_n)^{k/n}
Val cnk_value(Inputs& in, int n, int k) {
  const Val ratio = require_delta(in, n) / kap(n);
  return pow2(Rational(k)) * pow(ratio, frac(k, n));
}

// kappa_n theta_{n-k}^{n/(n-k)} / (kappa_{n-k}^{n/(n-k)} 2^{kn/(n-k)} (delta_n/kappa_n)^{k/(n-k)})
Val chain_value(Inputs& in, int n, int k) {
  const int m = n - k;
  const Rational e(n, m);
  const Val theta = in.theta(m);
  const Val delta = require_delta(in, n);
  const Val num = kap(n) * pow(theta / kap(m), e);
  const Val den = pow2(frac(k * n, m)) * pow(delta / kap(n), frac(k, m));
  return num / den;
}

// kappa_n^2 / (4^n delta_n)
Val ball_floor(Inputs& in, int n) {
  const Val delta = require_delta(in, n);
  return kap(n) * kap(n) / (rat(Rational(1) * (Integer(1) << (2 * n))) * delta);
}

BoundReport cnk_impl(int n, int k, Inputs& in) {
  check_nk(n, k);
  BoundReport r;
  r.formula_id = "cnk-upper";
  r.n = n;
  r.k = k;
  finish(r, cnk_value(in, n, k), in);
  r.strictness = k == 1 ? Strictness::equality : Strictness::strict_upper_bound;
  r.notes = k == 1 ? "attained by the densest lattice packing" : "strict for k >= 2";
  return r;
}

BoundReport dnk_lower_impl(int n, int k, Inputs& in) {
  check_nk(n, k);
  BoundReport r;
  r.formula_id = "dnk-lower";
  r.n = n;
  r.k = k;
  const Val floor = ball_floor(in, n);
  const Strictness floor_s = k == n - 1 ? Strictness::equality : Strictness::lower_bound;
  std::optional<Val> chain;
  Strictness chain_s = Strictness::lower_bound;
  if (in.has_theta(n - k)) {
    chain = chain_value(in, n, k);
    if (k >= 2 || (n >= 3 && n <= 6)) chain_s = Strictness::strict_lower_bound;
    if (n == 2 && k == 1) chain_s = Strictness::equality;
    r.members.push_back(member("covering-chain", *chain, chain_s));
  }
  r.members.push_back(member("packing-floor", floor, floor_s));
  if (chain && r.members.front().value >= r.members.back().value) {
    finish(r, *chain, in);
    r.strictness = chain_s;
    r.notes = "covering chain with c_{n,k} replaced by its upper bound";
  } else {
    finish(r, floor, in);
    r.strictness = floor_s;
    r.notes = chain ? "packing floor exceeds the covering chain"
                    : "thinnest covering unknown in dimension " + std::to_string(n - k) + "; packing floor only";
  }
  return r;
}

BoundReport dnn1_ball_impl(int n, Inputs& in) {
  require(n >= 1 && n <= kMaxDim, ErrorCode::domain, "dimension must lie in 1..24");
  BoundReport r;
  r.formula_id = "dnn1-ball";
  r.n = n;
  r.k = n - 1;
  finish(r, ball_floor(in, n), in);
  r.strictness = Strictness::equality;
  r.notes = "thinnest non-separable lattice of balls";
  return r;
}

const char* kVolK = "volume(K)";
const char* kVolPolar = "volume(((K-K)/2)^*)";
const char* kDeltaPolar = "delta_polar";

BoundReport dnn1_body_impl(int n, Inputs& in) {
  BoundReport r;
  r.formula_id = "dnn1-body";
  r.n = n;
  r.k = n - 1;
  const Val v = in.get(kVolK, {}) * in.get(kVolPolar, {});
  finish(r, v / (rat(Rational(1) * (Integer(1) << (2 * n))) * in.get(kDeltaPolar, {})), in);
  r.strictness = Strictness::equality;
  r.notes = "delta_polar is the lattice packing density of ((K-K)/2)^*";
  return r;
}

Val ellipsoid_denominator(int n, bool symmetric) {
  if (symmetric) return kap(n) * rat(factorial(n)) / pow2(Rational(n));
  // kappa_n n! n^{n/2} / (n+1)^{(n+1)/2}
  return kap(n) * rat(factorial(n)) * Val::of(Symbolic::power(Rational(n), frac(n, 2))) /
         Val::of(Symbolic::power(Rational(n + 1), frac(n + 1, 2)));
}

BoundReport min_dnk_impl(int n, int k, bool symmetric, Inputs& in) {
  check_nk(n, k);
  BoundReport r;
  r.formula_id = symmetric ? "min-dnk-symmetric" : "min-dnk-general";
  r.n = n;
  r.k = k;
  const Val den = ellipsoid_denominator(n, symmetric);
  Val d;
  if (k == n - 1) {
    d = ball_floor(in, n);
  } else {
    const BoundReport low = dnk_lower_impl(n, k, in);
    d = Val{low.value_exact, low.value_float};
  }
  const Val first = d / den;
  r.members.push_back(member("first", first, Strictness::lower_bound));
  if (in.has_theta(n - k)) {
    r.members.push_back(member("covering-chain", chain_value(in, n, k) / den, Strictness::lower_bound));
  }
  const Val kk = kap(n) * kap(n);
  const Val floor = symmetric ? kk / pow2(Rational(3 * n))
                              : kk / (rat(binomial(2 * n, n)) * pow2(Rational(2 * n)));
  r.members.push_back(member("volume-product-floor", floor, Strictness::strict_lower_bound));
  finish(r, first, in);
  r.strictness = Strictness::lower_bound;
  double best = 0;
  for (const auto& m : r.members) best = std::max(best, m.value);
  if (best > r.value_float) r.best_lower_bound = best;
  r.notes = symmetric ? "enclosing ellipsoid ratio 2^n/(kappa_n n!); floor kappa_n^2/8^n"
                      : "enclosing ellipsoid ratio (n+1)^{(n+1)/2}/(kappa_n n! n^{n/2}); floor kappa_n^2/(C(2n,n) 4^n)";
  return r;
}

BoundReport max_d21_impl(Inputs& in) {
  BoundReport r;
  r.formula_id = "max-d21-upper";
  r.n = 2;
  r.k = 1;
  const Val tam = in.get("tammela", [] {
    ConstantEntry c;
    c.id = "tammela";
    c.kind = ConstantKind::literal;
    c.n = 2;
    c.value_exact = Symbolic(kTammela);
    c.value_float = kTammela.get_d();
    c.source = Source::external_catalog;
    c.note = "lower bound 0.8926 on the lattice packing density of planar symmetric bodies (truncated literal)";
    return c;
  });
  const Val pi2 = Val::of(Symbolic::pi() * Symbolic::pi());
  const Val v = pi2 / (rat(16) * tam);
  r.members.push_back(member("tammela-bound", v, Strictness::upper_bound));
  const double older = M_PI * M_PI / (4 * (3 * std::sqrt(2.0) + std::sqrt(3.0) - std::sqrt(6.0)));
  r.members.push_back(member("previous-bound", Val::flt(older), Strictness::upper_bound));
  r.members.push_back(
      member("circle-conjecture", Val::of(Symbolic::sqrt(3) * Symbolic::pi() / Symbolic(8)), Strictness::equality));
  finish(r, v, in);
  r.strictness = Strictness::upper_bound;
  r.notes = "previous bound pi^2/[4(3 sqrt2 + sqrt3 - sqrt6)]; conjectured maximum sqrt(3) pi/8 for the disc";
  return r;
}

BoundReport mahler_impl(int n) {
  require(n >= 1 && n <= 64, ErrorCode::domain, "dimension out of range");
  BoundReport r;
  r.formula_id = "mahler-floors";
  r.n = n;
  r.k = n - 1;
  const Val kk = kap(n) * kap(n);
  const Val kuperberg = kk / pow2(Rational(n));
  r.members.push_back(member("volume-product", kuperberg, Strictness::strict_lower_bound));
  r.members.push_back(member("dnn1-symmetric", kk / pow2(Rational(3 * n)), Strictness::strict_lower_bound));
  r.members.push_back(
      member("dnn1-general", kk / (rat(binomial(2 * n, n)) * pow2(Rational(2 * n))), Strictness::strict_lower_bound));
  Inputs none;
  finish(r, kuperberg, none);
  r.strictness = Strictness::strict_lower_bound;
  r.notes = "V(K)V(K^*) > kappa^2/2^n for symmetric K; d_{n,n-1}(K) floors for symmetric and general K";
  return r;
}

BoundReport d21_impl(Inputs& in) {
  BoundReport r = dnk_lower_impl(2, 1, in);
  r.formula_id = "d21-chain";
  r.members.clear();
  r.notes = "chain lower bound at n = 2 using theta(1) = 1; sharp";
  r.strictness = Strictness::equality;
  return r;
}

BoundReport dnk_best_impl(int n, int k, Inputs& in) {
  check_nk(n, k);
  if (k == n - 1 && in.has_delta(n)) {
    BoundReport r = dnn1_ball_impl(n, in);
    r.formula_id = "dnk-best";
    return r;
  }
  if (n == 3 && k == 1) {
    BoundReport r;
    r.formula_id = "dnk-best";
    r.n = 3;
    r.k = 1;
    const Val v = in.get("d(3,1)", [] {
      ConstantEntry c;
      c.id = "d(3,1)";
      c.kind = ConstantKind::dnk_exact;
      c.n = 3;
      c.value_exact = Symbolic(9) * Symbolic::pi() / Symbolic(32);
      c.value_float = c.value_exact->to_double();
      c.source = Source::external_catalog;
      c.note = "Bambah-Woods: thinnest 1-impassable lattice of balls in dimension 3";
      return c;
    });
    finish(r, v, in);
    r.strictness = Strictness::equality;
    r.notes = "external catalog value";
    return r;
  }
  BoundReport r = dnk_lower_impl(n, k, in);
  r.formula_id = "dnk-best";
  return r;
}

BoundReport kappa_impl(int n) {
  require(n >= 1, ErrorCode::domain, "dimension must be positive");
  BoundReport r;
  r.formula_id = "kappa";
  r.n = n;
  const Symbolic k = kappa(n);
  r.value_exact = k;
  r.value_float = k.to_double();
  r.notes = "volume of the unit ball";
  return r;
}

}  // namespace

bool has_packing_constant(int n) { return (n >= 1 && n <= 8) || n == 24; }
bool has_covering_constant(int n) { return n >= 1 && n <= 5; }

ConstantEntry packing_constant(int n) {
  require(has_packing_constant(n), ErrorCode::catalog_miss,
          "no densest lattice packing constant for dimension " + std::to_string(n));
  Slot& s = packing_slots()[n];
  std::call_once(s.once, [&] { s.entry = make_packing(n); });
  return s.entry;
}

ConstantEntry covering_constant(int n) {
  require(has_covering_constant(n), ErrorCode::catalog_miss,
          "no thinnest lattice covering constant for dimension " + std::to_string(n));
  Slot& s = covering_slots()[n];
  std::call_once(s.once, [&] { s.entry = make_covering(n); });
  return s.entry;
}

std::vector<ConstantEntry> constants(int n) {
  std::vector<ConstantEntry> out;
  if (has_packing_constant(n)) out.push_back(packing_constant(n));
  if (has_covering_constant(n)) out.push_back(covering_constant(n));
  require(!out.empty(), ErrorCode::catalog_miss, "no catalog constants for dimension " + std::to_string(n));
  return out;
}

BoundReport kappa_report(int n) { return kappa_impl(n); }

BoundReport cnk_upper(int n, int k) {
  Inputs in;
  return cnk_impl(n, k, in);
}

BoundReport dnk_lower(int n, int k) {
  Inputs in;
  return dnk_lower_impl(n, k, in);
}

BoundReport dnn1_ball(int n) {
  Inputs in;
  return dnn1_ball_impl(n, in);
}

BoundReport dnn1_body(const Polytope& k, const Symbolic& delta_polar) {
  require(delta_polar.to_double() > 0, ErrorCode::missing_constant, "delta_polar must be positive");
  const int n = static_cast<int>(k.dim());
  std::vector<ConstantEntry> seed;
  auto add = [&](const char* id, ConstantKind kind, const Symbolic& v, Source src, std::string note) {
    ConstantEntry c;
    c.id = id;
    c.kind = kind;
    c.n = n;
    c.value_exact = v;
    c.value_float = v.to_double();
    c.source = src;
    c.note = std::move(note);
    seed.push_back(std::move(c));
  };
  add(kVolK, ConstantKind::volume, volume(k), Source::derived_by_oracle, "polytope volume");
  add(kVolPolar, ConstantKind::volume, volume(polar(difference_body(k))), Source::derived_by_oracle,
      "volume of the polar of the difference body");
  add(kDeltaPolar, ConstantKind::literal, delta_polar, Source::caller, "supplied by caller");
  Inputs in(seed);
  return dnn1_body_impl(n, in);
}

BoundReport min_dnk_over_bodies(int n, int k, bool symmetric) {
  Inputs in;
  return min_dnk_impl(n, k, symmetric, in);
}

BoundReport max_d21_upper() {
  Inputs in;
  return max_d21_impl(in);
}

BoundReport mahler_floors(int n) { return mahler_impl(n); }

BoundReport dnk_best(int n, int k) {
  Inputs in;
  return dnk_best_impl(n, k, in);
}

BoundReport d21_chain() {
  Inputs in;
  return d21_impl(in);
}

BoundReport reevaluate(const BoundReport& r) {
  Inputs in(r.inputs);
  const std::string& f = r.formula_id;
  if (f == "kappa") return kappa_impl(r.n);
  if (f == "cnk-upper") return cnk_impl(r.n, r.k, in);
  if (f == "dnk-lower") return dnk_lower_impl(r.n, r.k, in);
  if (f == "dnn1-ball") return dnn1_ball_impl(r.n, in);
  if (f == "dnn1-body") return dnn1_body_impl(r.n, in);
  if (f == "min-dnk-general") return min_dnk_impl(r.n, r.k, false, in);
  if (f == "min-dnk-symmetric") return min_dnk_impl(r.n, r.k, true, in);
  if (f == "max-d21-upper") return max_d21_impl(in);
  if (f == "mahler-floors") return mahler_impl(r.n);
  if (f == "d21-chain") return d21_impl(in);
  if (f == "dnk-best") return dnk_best_impl(r.n, r.k, in);
  fail(ErrorCode::invalid_input, "unknown formula id " + f);
}

bool matches_four_digits(double computed, double printed) {
  if (!(printed > 0) || !(computed > 0)) return false;
  const double ulp = std::pow(10.0, std::floor(std::log10(printed)) - 3);
  return std::fabs(std::round(computed / ulp) - std::round(printed / ulp)) <= 1.0;
}

ChainTable chain_table() {
  ChainTable t;
  t.dims = {3, 4, 5, 6, 7, 8, 24};
  struct Spec {
    const char* id;
    const char* label;
    std::array<double, 7> printed;
  };
  const Spec specs[] = {
      {"first-general", "first inequality, convex bodies",
       {0.04538, 0.004548, 0.0003558, 0.00001974, 0.0000008751, 0.00000002909, 4.673e-38}},
      {"first-symmetric", "first inequality, symmetric bodies",
       {0.1179, 0.02083, 0.002947, 0.0003007, 0.00002482, 0.000001550, 9.607e-32}},
      {"conjecture-general", "conjectured minimum (n+1)/(2^n n!), convex bodies",
       {0.08335, 0.01302, 0.001562, 0.0001519, 0.00001240, 0.0000008717, 2.402e-30}},
      {"conjecture-symmetric", "conjectured minimum 1/n!, symmetric bodies",
       {0.1667, 0.04167, 0.008333, 0.001389, 0.0001984, 0.00002480, 1.612e-24}},
  };
  for (const Spec& s : specs) {
    TableRow row;
    row.id = s.id;
    row.label = s.label;
    for (std::size_t i = 0; i < t.dims.size(); ++i) {
      const int n = t.dims[i];
      TableCell c;
      c.n = n;
      c.printed = s.printed[i];
      const std::string id = s.id;
      if (id == "first-general" || id == "first-symmetric") {
        const BoundReport r = min_dnk_over_bodies(n, n - 1, id == "first-symmetric");
        c.exact = r.value_exact;
        c.value = r.value_float;
      } else {
        Symbolic v = id == "conjecture-general"
                         ? Symbolic(Rational(n + 1) / (Rational(Integer(1) << n) * factorial(n)))
                         : Symbolic(1 / factorial(n));
        c.exact = v;
        c.value = v.to_double();
      }
      c.matches = matches_four_digits(c.value, c.printed);
      if (!c.matches) {
        std::ostringstream os;
        os.precision(6);
        os << row.id << " n=" << n << ": computed " << c.value << " (" << c.exact->to_string()
           << "), published " << c.printed;
        t.notes.push_back(os.str());
      }
      row.cells.push_back(std::move(c));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace latimp
