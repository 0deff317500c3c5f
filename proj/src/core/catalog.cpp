#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>

#include "latimp/error.hpp"
#include "latimp/lattice.hpp"

namespace latimp {

namespace {

RatMatrix cartan_a(int n) {
  RatMatrix g(n, n);
  for (int i = 0; i < n; ++i) {
    g(i, i) = 2;
    if (i + 1 < n) g(i, i + 1) = g(i + 1, i) = -1;
  }
  return g;
}

// E6/E7 Cartan matrices; node 1 starts the long chain, node 2 hangs off node 4.
RatMatrix cartan_e(int n) {
  RatMatrix g(n, n);
  for (int i = 0; i < n; ++i) g(i, i) = 2;
  auto edge = [&](int a, int b) { g(a - 1, b - 1) = g(b - 1, a - 1) = -1; };
  edge(1, 3);
  edge(2, 4);
  for (int i = 3; i < n; ++i) edge(i, i + 1);
  return g;
}

RatMatrix d_basis(int n) {
  RatMatrix b(n, n);
  b(0, 0) = 1;
  b(0, 1) = 1;
  b(1, 0) = 1;
  b(1, 1) = -1;
  for (int i = 2; i < n; ++i) {
    b(i, i - 1) = 1;
    b(i, i) = -1;
  }
  return b;
}

RatMatrix e8_basis() {
  RatMatrix b(8, 8);
  b(0, 0) = 2;
  for (int i = 1; i < 7; ++i) {
    b(i, i - 1) = -1;
    b(i, i) = 1;
  }
  for (int j = 0; j < 8; ++j) b(7, j) = Rational(1, 2);
  return b;
}

// Extended binary Golay code generator [I | J - A] with A the icosahedron adjacency.
std::array<std::array<int, 24>, 12> golay_generator() {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<std::array<double, 3>> v;
  for (int s1 : {-1, 1})
    for (int s2 : {-1, 1}) {
      v.push_back({0.0, s1 * 1.0, s2 * phi});
      v.push_back({s1 * 1.0, s2 * phi, 0.0});
      v.push_back({s2 * phi, 0.0, s1 * 1.0});
    }
  std::array<std::array<int, 24>, 12> gen{};
  for (int i = 0; i < 12; ++i) {
    gen[i][i] = 1;
    for (int j = 0; j < 12; ++j) {
      double d2 = 0;
      for (int c = 0; c < 3; ++c) d2 += (v[i][c] - v[j][c]) * (v[i][c] - v[j][c]);
      const bool adjacent = std::fabs(d2 - 4.0) < 1e-9;
      gen[i][12 + j] = adjacent ? 0 : 1;
    }
  }
  return gen;
}

RatMatrix leech_basis_scaled() {
  // Generators of sqrt(8) * Leech: 2c for Golay basis words, 4 * D24 and (-3, 1^23).
  std::vector<std::vector<long>> gens;
  for (const auto& row : golay_generator()) {
    std::vector<long> g(24);
    for (int j = 0; j < 24; ++j) g[j] = 2 * row[j];
    gens.push_back(g);
  }
  {
    std::vector<long> g(24, 0);
    g[0] = 4;
    g[1] = 4;
    gens.push_back(g);
  }
  for (int i = 0; i + 1 < 24; ++i) {
    std::vector<long> g(24, 0);
    g[i] = 4;
    g[i + 1] = -4;
    gens.push_back(g);
  }
  {
    std::vector<long> g(24, 1);
    g[0] = -3;
    gens.push_back(g);
  }
  IntMatrix m(gens.size(), 24);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (int j = 0; j < 24; ++j) m(i, j) = Integer(gens[i][j]);
  IntMatrix h = hermite_normal_form(m);
  require(h.rows() == 24, ErrorCode::internal, "Leech generators do not span R^24");
  return to_rational(h);
}

std::string lower(std::string_view s) {
  std::string out;
  for (char c : s)
    if (c != '_' && c != '-') out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

LatticeInfo info(std::string name, const Rational& lambda_sq) {
  return LatticeInfo{std::move(name), "catalog", SqrtRational(lambda_sq)};
}

void check_range(bool ok, std::string_view name, int n) {
  if (!ok) fail(ErrorCode::catalog_miss, "no catalog lattice " + std::string(name) + " in dimension " + std::to_string(n));
}

}  // namespace

std::vector<std::string> catalog_names() {
  return {"Z", "A", "Astar", "D", "E", "Leech", "BambahWoods", "ThinnestNonseparable"};
}

Lattice catalog(std::string_view name, int n) {
  std::string key = lower(name);
  // "D3", "E8", "A2*" carry the dimension in the name.
  if (key.size() > 1 && key.back() == '*') key = key.substr(0, key.size() - 1) + "star";
  const auto digits = key.find_first_of("0123456789");
  if (digits != std::string::npos && digits > 0 && key.find_first_not_of("0123456789", digits) == std::string::npos) {
    const int named = std::stoi(key.substr(digits));
    require(n == 0 || n == named, ErrorCode::invalid_input, "dimension in name and --n disagree");
    n = named;
    key = key.substr(0, digits);
  } else if (const auto s = key.find("star"); s != std::string::npos && s > 1 && key.size() == s + 4) {
    // "a2star"
    const std::string head = key.substr(0, s);
    const auto d = head.find_first_of("0123456789");
    if (d != std::string::npos && d > 0) {
      const int named = std::stoi(head.substr(d));
      require(n == 0 || n == named, ErrorCode::invalid_input, "dimension in name and --n disagree");
      n = named;
      key = head.substr(0, d) + "star";
    }
  }
  if (key == "z") {
    check_range(n >= 1 && n <= 24, name, n);
    return Lattice::from_rational_basis(RatMatrix::identity(n)).with_info(info("Z" + std::to_string(n), 1));
  }
  if (key == "a") {
    check_range(n >= 1 && n <= 8, name, n);
    return Lattice::from_gram(cartan_a(n)).with_info(info("A" + std::to_string(n), 2));
  }
  if (key == "astar") {
    check_range(n >= 1 && n <= 8, name, n);
    return Lattice::from_gram(inverse(cartan_a(n))).with_info(info("A" + std::to_string(n) + "*", Rational(n, n + 1)));
  }
  if (key == "d") {
    check_range(n >= 3 && n <= 8, name, n);
    return Lattice::from_rational_basis(d_basis(n)).with_info(info("D" + std::to_string(n), 2));
  }
  if (key == "e") {
    check_range(n >= 6 && n <= 8, name, n);
    if (n == 8) return Lattice::from_rational_basis(e8_basis()).with_info(info("E8", 2));
    return Lattice::from_gram(cartan_e(n)).with_info(info("E" + std::to_string(n), 2));
  }
  if (key == "leech") {
    check_range(n == 24 || n == 0, name, n);
    return Lattice::from_rational_basis(leech_basis_scaled(), Rational(1, 8)).with_info(info("Leech", 4));
  }
  if (key == "bambahwoods" || key == "bw") {
    check_range(n == 3 || n == 0, name, n);
    RatMatrix b{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) b(i, j) *= Rational(4, 3);
    return Lattice::from_rational_basis(b).with_info(info("BambahWoods", Rational(32, 9)));
  }
  if (key == "thinnestnonseparable" || key == "nonsep") {
    check_range(n == 3 || n == 0, name, n);
    RatMatrix b{{-1, 1, 1}, {1, -1, 1}, {1, 1, -1}};
    return Lattice::from_rational_basis(b, 2).with_info(info("ThinnestNonseparable", 6));
  }
  fail(ErrorCode::catalog_miss, "unknown catalog lattice: " + std::string(name));
}

}  // namespace latimp
