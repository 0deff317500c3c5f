// latimp command-line front end.  Talks to the library only through latimp.h.
#include <latimp/latimp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

using Json = nlohmann::json;

constexpr int kExitCapability = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitValidation = 3;
constexpr int kExitInternal = 4;

struct Failure {
  latimp_status status;
  std::string message;
};

struct Options {
  std::string catalog;
  int n = 0;
  std::string basis_file;
  std::string scale;
  std::string r = "1";
  int k = 1;
  double det_bound = 0;
  double tol = 0;
  std::string format = "json";
  bool verify = false;
  int threads = 0;
  std::string config_file;
  std::string shape;
  std::string polytope_file;
  std::vector<std::string> transforms;
  std::string formula;
  bool symmetric = false;
  std::string d;
  std::string delta_polar;
  std::string witness;
  std::string target;
  bool centered = false;
  bool list = false;
};

void check(latimp_status s) {
  if (s != LATIMP_OK) throw Failure{s, latimp_last_error()};
}

Json take(char* text) {
  Json j = Json::parse(text);
  latimp_string_free(text);
  return j;
}

template <class F>
Json call(F&& f) {
  char* out = nullptr;
  check(f(&out));
  return take(out);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{LATIMP_INVALID_INPUT, "cannot read " + path};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

using ContextPtr = std::unique_ptr<latimp_context, decltype(&latimp_context_destroy)>;
using LatticePtr = std::unique_ptr<latimp_lattice, decltype(&latimp_lattice_destroy)>;
using PolytopePtr = std::unique_ptr<latimp_polytope, decltype(&latimp_polytope_destroy)>;

// key=value lines; '#' starts a comment.
void apply_config_file(latimp_context* ctx, const std::string& path) {
  std::istringstream in(slurp(path));
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    const auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Failure{LATIMP_INVALID_INPUT, path + ":" + std::to_string(lineno) + ": expected key=value"};
    check(latimp_context_set(ctx, trim(line.substr(0, eq)).c_str(), trim(line.substr(eq + 1)).c_str()));
  }
}

ContextPtr make_context(const Options& o) {
  latimp_context* raw = nullptr;
  check(latimp_context_create(&raw));
  ContextPtr ctx(raw, latimp_context_destroy);
  if (!o.config_file.empty()) apply_config_file(ctx.get(), o.config_file);
  if (o.tol > 0) check(latimp_context_set(ctx.get(), "tolerance", std::to_string(o.tol).c_str()));
  if (o.threads > 0) check(latimp_context_set(ctx.get(), "threads", std::to_string(o.threads).c_str()));
  return ctx;
}

LatticePtr load_lattice(const Options& o) {
  latimp_lattice* raw = nullptr;
  if (!o.catalog.empty() && !o.basis_file.empty())
    throw Failure{LATIMP_INVALID_INPUT, "give either --catalog or --basis, not both"};
  if (!o.catalog.empty()) check(latimp_lattice_catalog(o.catalog.c_str(), o.n, &raw));
  else if (!o.basis_file.empty()) check(latimp_lattice_from_json(slurp(o.basis_file).c_str(), &raw));
  else throw Failure{LATIMP_INVALID_INPUT, "a lattice is required (--catalog NAME or --basis FILE)"};
  LatticePtr l(raw, latimp_lattice_destroy);
  if (!o.scale.empty()) {
    latimp_lattice* scaled = nullptr;
    check(latimp_lattice_scaled(l.get(), o.scale.c_str(), &scaled));
    l.reset(scaled);
  }
  return l;
}

PolytopePtr load_polytope(const Options& o) {
  latimp_polytope* raw = nullptr;
  if (!o.shape.empty()) check(latimp_polytope_shape(o.shape.c_str(), o.n, &raw));
  else if (!o.polytope_file.empty()) check(latimp_polytope_from_json(slurp(o.polytope_file).c_str(), &raw));
  else throw Failure{LATIMP_INVALID_INPUT, "a polytope is required (--shape NAME or --polytope FILE)"};
  PolytopePtr p(raw, latimp_polytope_destroy);
  for (const auto& t : o.transforms) {
    latimp_polytope* next = nullptr;
    check(latimp_polytope_transform(p.get(), t.c_str(), &next));
    p.reset(next);
  }
  return p;
}

std::size_t k_of(const Options& o) {
  if (o.k < 1) throw Failure{LATIMP_INVALID_INPUT, "--k must be positive"};
  return static_cast<std::size_t>(o.k);
}

// Returns false when a reported validation did not pass.
bool certificate_ok(const Json& c) { return c.is_null() || c.value("validated", false); }

// Re-derives mu of a certificate by projecting along its witness and
// computing the covering radius of the image from scratch.
bool cross_check_mu(const latimp_context* ctx, const latimp_lattice* l, const Json& cert, Json& note) {
  if (cert.is_null()) return true;
  const std::string w = cert.at("witness").dump();
  const Json proj = call([&](char** out) { return latimp_project(ctx, l, w.c_str(), out); });
  const Json pl = proj.at("lattice");
  latimp_lattice* raw = nullptr;
  check(latimp_lattice_from_json(pl.dump().c_str(), &raw));
  LatticePtr image(raw, latimp_lattice_destroy);
  const Json cover = call([&](char** out) { return latimp_cover(ctx, image.get(), out); });
  const double a = cover.at("mu").at("value").get<double>();
  const double b = cert.at("mu").at("value").get<double>();
  const bool ok = std::abs(a - b) <= 1e-9 * std::max(1.0, b) && proj.at("determinant_identity").get<bool>();
  note = Json{{"projected_mu", a}, {"determinant_identity", proj.at("determinant_identity")}, {"ok", ok}};
  return ok;
}

struct Outcome {
  Json report;
  bool valid = true;
};

Outcome run(const std::string& verb, const Options& o) {
  const ContextPtr ctx = make_context(o);
  const latimp_context* c = ctx.get();
  Outcome out;
  Json& j = out.report;

  if (verb == "lattice-info") {
    if (o.list) {
      j = call([](char** s) { return latimp_lattice_catalog_names(s); });
    } else {
      const auto l = load_lattice(o);
      j = call([&](char** s) { return latimp_lattice_info(c, l.get(), s); });
    }
  } else if (verb == "svp") {
    const auto l = load_lattice(o);
    j = call([&](char** s) { return latimp_svp(c, l.get(), s); });
  } else if (verb == "minima") {
    const auto l = load_lattice(o);
    const std::size_t k = o.k > 0 ? static_cast<std::size_t>(o.k) : 0;
    j = call([&](char** s) { return latimp_minima(c, l.get(), k, s); });
    if (!o.target.empty())
      j["closest"] = call([&](char** s) { return latimp_closest(c, l.get(), o.target.c_str(), s); });
  } else if (verb == "dk") {
    const auto l = load_lattice(o);
    j = call([&](char** s) { return latimp_dk(c, l.get(), k_of(o), s); });
    if (o.det_bound > 0 || o.verify)
      j["sublattices"] = call([&](char** s) { return latimp_sublattices(c, l.get(), k_of(o), o.det_bound, s); });
  } else if (verb == "voronoi") {
    const auto l = load_lattice(o);
    j = call([&](char** s) { return latimp_voronoi(c, l.get(), s); });
    if (o.verify) out.valid = j.at("volume_verified").get<bool>();
  } else if (verb == "cover") {
    const auto l = load_lattice(o);
    j = call([&](char** s) { return latimp_cover(c, l.get(), s); });
  } else if (verb == "project") {
    const auto l = load_lattice(o);
    if (o.witness.empty()) throw Failure{LATIMP_INVALID_INPUT, "project needs --witness JSON or FILE"};
    const std::string w = o.witness.front() == '[' || o.witness.front() == '{' ? o.witness : slurp(o.witness);
    j = call([&](char** s) { return latimp_project(c, l.get(), w.c_str(), s); });
    out.valid = j.at("determinant_identity").get<bool>();
  } else if (verb == "impass") {
    const auto l = load_lattice(o);
    j = call([&](char** s) { return latimp_impass(c, l.get(), o.r.c_str(), k_of(o), o.det_bound, s); });
    out.valid = j.at("validated").get<bool>();
    if (o.verify) {
      Json note;
      out.valid = cross_check_mu(c, l.get(), j.at("best"), note) && out.valid;
      j["verification"] = note;
    }
  } else if (verb == "nonsep") {
    const auto l = load_lattice(o);
    j = call([&](char** s) { return latimp_nonsep(c, l.get(), o.r.c_str(), s); });
    if (o.verify) {
      const std::size_t n = latimp_lattice_rank(l.get());
      const Json p =
          call([&](char** s) { return latimp_impass(c, l.get(), o.r.c_str(), n - 1, o.det_bound, s); });
      const bool agree = j.at("nonseparable").get<bool>() != p.at("found").get<bool>();
      j["verification"] = Json{{"passage_found", p.at("found")}, {"agrees", agree}};
      out.valid = agree;
    }
  } else if (verb == "cylinder") {
    const auto l = load_lattice(o);
    const char* d = o.d.empty() ? nullptr : o.d.c_str();
    j = call([&](char** s) { return latimp_cylinder(c, l.get(), o.r.c_str(), k_of(o), d, o.det_bound, s); });
    out.valid = certificate_ok(j.at("certificate"));
    if (o.verify) {
      Json note;
      out.valid = cross_check_mu(c, l.get(), j.at("certificate"), note) && out.valid;
      j["verification"] = note;
    }
  } else if (verb == "bounds") {
    if (o.formula.empty()) throw Failure{LATIMP_INVALID_INPUT, "bounds needs --formula"};
    j = call([&](char** s) { return latimp_bound(o.formula.c_str(), o.n, o.k, o.symmetric ? 1 : 0, s); });
    if (o.verify && j.is_object()) {
      const Json again = call([&](char** s) { return latimp_bound_reevaluate(j.dump().c_str(), s); });
      const bool same = again.at("value") == j.at("value") && again.value("exact", "") == j.value("exact", "");
      j["verification"] = Json{{"reevaluated", again.at("value")}, {"identical", same}};
      out.valid = same;
    }
  } else if (verb == "table-321") {
    j = call([](char** s) { return latimp_chain_table(s); });
  } else if (verb == "polytope") {
    const auto p = load_polytope(o);
    j = call([&](char** s) { return latimp_polytope_report(p.get(), s); });
  } else if (verb == "mahler") {
    const auto p = load_polytope(o);
    j = call([&](char** s) { return latimp_mahler(p.get(), s); });
    if (!o.delta_polar.empty())
      j["dnn1_body"] = call([&](char** s) { return latimp_dnn1_body(p.get(), o.delta_polar.c_str(), s); });
  } else if (verb == "mvee") {
    const auto p = load_polytope(o);
    j = call([&](char** s) { return latimp_mvee(c, p.get(), o.centered ? 1 : 0, s); });
    if (o.verify) out.valid = j.at("converged").get<bool>();
  } else {
    throw Failure{LATIMP_INVALID_INPUT, "unknown verb " + verb};
  }
  return out;
}

std::string scalar(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_object() && v.contains("exact") && v.contains("value"))
    return v.at("exact").get<std::string>() + " (" + v.at("value").dump() + ")";
  return v.dump();
}

void flatten(const Json& v, const std::string& path, std::ostream& os) {
  const bool leafish = v.is_object() && v.contains("exact") && v.contains("value") && v.size() == 2;
  if (v.is_object() && !leafish) {
    for (const auto& [key, child] : v.items()) flatten(child, path.empty() ? key : path + "." + key, os);
  } else if (v.is_array() && !v.empty() && (v.front().is_object() || v.front().is_array())) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], path + "[" + std::to_string(i) + "]", os);
  } else {
    os << std::left << std::setw(32) << path << " " << scalar(v) << "\n";
  }
}

void print_chain_table(const Json& t, std::ostream& os) {
  os << std::left << std::setw(22) << "row";
  for (const auto& n : t.at("dims")) os << std::setw(14) << ("n=" + n.dump());
  os << "\n";
  for (const auto& row : t.at("rows")) {
    os << std::setw(22) << row.at("id").get<std::string>();
    for (const auto& cell : row.at("cells")) {
      std::ostringstream v;
      v << std::setprecision(4) << cell.at("value").get<double>();
      os << std::setw(14) << (v.str() + (cell.at("matches").get<bool>() ? "" : "*"));
    }
    os << "\n";
  }
  for (const auto& n : t.at("notes")) os << "* " << n.get<std::string>() << "\n";
}

int exit_code(latimp_status s) {
  switch (s) {
    case LATIMP_CAPABILITY:
    case LATIMP_UNSUPPORTED_RANK:
      return kExitCapability;
    case LATIMP_INTERNAL:
      return kExitInternal;
    default:
      return kExitInvalid;
  }
}

void print_error(const std::string& name, int status, const std::string& message) {
  std::cerr << Json{{"error", name}, {"code", status}, {"message", message}}.dump() << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice impassability toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;

  app.add_option("--catalog", o.catalog, "catalog lattice (Z, A, D, E, Astar, ...)");
  app.add_option("--n", o.n, "dimension for catalog families, shapes and bounds");
  app.add_option("--basis", o.basis_file, "lattice JSON file");
  app.add_option("--scale", o.scale, "scale the lattice by an exact factor such as sqrt2");
  app.add_option("--r", o.r, "ball radius (exact text)");
  app.add_option("--k", o.k, "flat or sublattice dimension");
  app.add_option("--det-bound", o.det_bound, "determinant bound for sublattice searches");
  app.add_option("--tol", o.tol, "numerical tolerance");
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "table"}));
  app.add_flag("--verify", o.verify, "run independent validation paths");
  app.add_option("--threads", o.threads, "worker cap");
  app.add_option("--config", o.config_file, "key=value configuration file");
  app.add_option("--shape", o.shape, "named polytope: cube, cross, simplex, hexagon, triangle, simplex-cell, hanner:TREE");
  app.add_option("--polytope", o.polytope_file, "polytope JSON file");
  app.add_option("--transform", o.transforms, "polar or difference-body, applied in order");
  app.add_option("--formula", o.formula, "bound formula id");
  app.add_flag("--symmetric", o.symmetric, "restrict min-dnk to symmetric bodies");
  app.add_option("--d", o.d, "exact d_{n,k} value for cylinder");
  app.add_option("--delta-polar", o.delta_polar, "packing density of ((K-K)/2)^* for mahler");
  app.add_option("--witness", o.witness, "witness JSON (inline or file) for project");
  app.add_option("--target", o.target, "JSON point for closest-vector query (minima)");
  app.add_flag("--centered", o.centered, "centre the MVEE at the origin");
  app.add_flag("--list", o.list, "list catalog names (lattice-info)");

  const std::vector<std::pair<const char*, const char*>> verbs = {
      {"lattice-info", "lattice invariants"},
      {"svp", "shortest vectors"},
      {"minima", "successive minima"},
      {"dk", "minimal k-sublattice determinant"},
      {"voronoi", "Dirichlet-Voronoi cell"},
      {"cover", "covering radius and densities"},
      {"project", "projection along a sublattice"},
      {"impass", "passage certificate for k-flats"},
      {"nonsep", "non-separability test"},
      {"cylinder", "free cylinder radius"},
      {"bounds", "density bound formulas"},
      {"table-321", "chain and conjecture table for n = 3..8, 24"},
      {"polytope", "polytope report"},
      {"mahler", "volume products"},
      {"mvee", "minimum volume enclosing ellipsoid"}};
  for (const auto& [name, help] : verbs) app.add_subcommand(name, help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("invalid-input", LATIMP_INVALID_INPUT, e.what());
    return kExitInvalid;
  }
  const std::string verb = app.get_subcommands().front()->get_name();

  try {
    const Outcome res = run(verb, o);
    if (o.format == "table" && verb == "table-321") print_chain_table(res.report, std::cout);
    else if (o.format == "table") flatten(res.report, "", std::cout);
    else std::cout << res.report.dump(2) << "\n";
    if (!res.valid) {
      print_error("validation-failed", -1, "a validation check did not pass");
      return kExitValidation;
    }
    return 0;
  } catch (const Failure& f) {
    print_error(latimp_status_name(f.status), f.status, f.message);
    return exit_code(f.status);
  } catch (const Json::exception& e) {
    print_error("internal", LATIMP_INTERNAL, e.what());
    return kExitInternal;
  }
}
