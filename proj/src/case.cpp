#include "stripbound/case.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace stripbound {

namespace {

using nlohmann::json;

[[noreturn]] void schema_fail(const std::string& key, const std::string& what) {
  throw SchemaError("case file: key '" + key + "': " + what);
}

void require_object(const json& j, const std::string& key) {
  if (!j.is_object()) schema_fail(key, "expected an object");
}

void allow_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items()) {
    if (!allowed.contains(k)) schema_fail(where.empty() ? k : where + "." + k, "unknown key");
  }
}

double number(const json& j, const std::string& key) {
  if (!j.is_number()) schema_fail(key, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) schema_fail(key, "must be finite");
  return v;
}

int integer(const json& j, const std::string& key) {
  if (!j.is_number_integer()) schema_fail(key, "expected an integer");
  return j.get<int>();
}

bool boolean(const json& j, const std::string& key) {
  if (!j.is_boolean()) schema_fail(key, "expected true or false");
  return j.get<bool>();
}

Interval interval(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 2) schema_fail(key, "expected [lo, hi]");
  const Interval i{number(j[0], key), number(j[1], key)};
  if (!(i.hi > i.lo)) schema_fail(key, "need lo < hi");
  return i;
}

double positive(const json& j, const std::string& key) {
  const double v = number(j, key);
  if (!(v > 0.0)) throw std::domain_error("case file: key '" + key + "' must be > 0");
  return v;
}

double nonnegative(const json& j, const std::string& key) {
  const double v = number(j, key);
  if (v < 0.0) throw std::domain_error("case file: key '" + key + "' must be >= 0");
  return v;
}

/// "lambda", accepted also as "λ"; exactly one of the two.
double lambda_of(const json& j, const std::string& where) {
  const bool latin = j.contains("lambda");
  const bool greek = j.contains("λ");
  if (latin && greek) schema_fail(where + ".lambda", "given twice (as lambda and λ)");
  if (!latin && !greek) schema_fail(where + ".lambda", "missing");
  return nonnegative(latin ? j["lambda"] : j["λ"], where + ".lambda");
}

Profile profile_of(const json& j, const std::string& where) {
  if (!j.contains("profile")) return Profile::Constant;
  if (!j["profile"].is_string()) schema_fail(where + ".profile", "expected a string");
  try {
    return profile_from_name(j["profile"].get<std::string>());
  } catch (const std::invalid_argument& e) {
    schema_fail(where + ".profile", e.what());
  }
}

PotentialSpec parse_catalog(const json& j, double a) {
  const std::string name = j["catalog"].is_string() ? j["catalog"].get<std::string>() : "";
  if (name == "zero") {
    allow_keys(j, "potential", {"catalog"});
    return PotentialSpec::zero(a);
  }
  if (name == "box") {
    allow_keys(j, "potential", {"catalog", "lambda", "λ", "x1", "x2", "profile"});
    if (!j.contains("x1")) schema_fail("potential.x1", "missing");
    const Interval x2 = j.contains("x2") ? interval(j["x2"], "potential.x2") : Interval{};
    return PotentialSpec::box(a, lambda_of(j, "potential"), interval(j["x1"], "potential.x1"), x2,
                              profile_of(j, "potential"));
  }
  if (name == "multibump") {
    allow_keys(j, "potential", {"catalog", "boxes"});
    if (!j.contains("boxes") || !j["boxes"].is_array() || j["boxes"].empty()) {
      schema_fail("potential.boxes", "expected a nonempty array");
    }
    std::vector<BoxTerm> boxes;
    for (std::size_t k = 0; k < j["boxes"].size(); ++k) {
      const json& b = j["boxes"][k];
      const std::string where = "potential.boxes[" + std::to_string(k) + "]";
      require_object(b, where);
      allow_keys(b, where, {"lambda", "λ", "x1", "x2"});
      if (!b.contains("x1")) schema_fail(where + ".x1", "missing");
      BoxTerm t;
      t.lambda = lambda_of(b, where);
      t.x1 = interval(b["x1"], where + ".x1");
      if (b.contains("x2")) t.x2 = interval(b["x2"], where + ".x2");
      boxes.push_back(t);
    }
    return PotentialSpec::multibump(a, boxes);
  }
  if (name == "gaussian") {
    allow_keys(j, "potential", {"catalog", "lambda", "λ", "center", "sigma", "profile"});
    const double center = j.contains("center") ? number(j["center"], "potential.center") : 0.0;
    if (!j.contains("sigma")) schema_fail("potential.sigma", "missing");
    return PotentialSpec::gaussian(a, lambda_of(j, "potential"), center,
                                   positive(j["sigma"], "potential.sigma"),
                                   profile_of(j, "potential"));
  }
  if (name == "power_tail") {
    allow_keys(j, "potential", {"catalog", "lambda", "λ", "beta", "cutoff", "profile"});
    if (!j.contains("beta")) schema_fail("potential.beta", "missing");
    if (!j.contains("cutoff")) schema_fail("potential.cutoff", "missing");
    return PotentialSpec::power_tail(a, lambda_of(j, "potential"),
                                     positive(j["beta"], "potential.beta"),
                                     positive(j["cutoff"], "potential.cutoff"),
                                     profile_of(j, "potential"));
  }
  schema_fail("potential.catalog", "unknown catalog entry '" + name + "'");
}

CurveSpec parse_curve(const json& j, double a) {
  require_object(j, "potential.curve");
  allow_keys(j, "potential.curve", {"vertices", "density", "segment_density"});
  if (!j.contains("vertices") || !j["vertices"].is_array()) {
    schema_fail("potential.curve.vertices", "expected an array of [x1, x2]");
  }
  const char* key = j.contains("segment_density") ? "segment_density" : "density";
  if (j.contains("density") && j.contains("segment_density")) {
    schema_fail("potential.curve", "give density or segment_density, not both");
  }
  if (!j.contains(key) || !j[key].is_array()) {
    schema_fail(std::string("potential.curve.") + key, "expected an array of numbers");
  }
  CurveSpec c;
  c.a = a;
  for (const auto& v : j["vertices"]) {
    if (!v.is_array() || v.size() != 2) schema_fail("potential.curve.vertices", "expected [x1, x2]");
    c.vertices.push_back({number(v[0], "potential.curve.vertices"),
                          number(v[1], "potential.curve.vertices")});
  }
  auto& target = j.contains("segment_density") ? c.segment_density : c.density;
  for (const auto& d : j[key]) target.push_back(nonnegative(d, std::string("potential.curve.") + key));
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    schema_fail("potential.curve", e.what());
  }
  return c;
}

BoundConstants parse_constants(const json& j) {
  require_object(j, "constants");
  allow_keys(j, "constants",
             {"c", "C", "est1_const", "est1_threshold", "measure_const", "c1", "c2",
              "curve_sqrt_const", "curve_cell_const", "named"});
  BoundConstants k;
  const std::pair<const char*, double*> slots[] = {
      {"c", &k.c},
      {"C", &k.C},
      {"est1_const", &k.est1_const},
      {"est1_threshold", &k.est1_threshold},
      {"measure_const", &k.measure_const},
      {"c1", &k.c1},
      {"c2", &k.c2},
      {"curve_sqrt_const", &k.curve_sqrt_const},
      {"curve_cell_const", &k.curve_cell_const},
  };
  for (const auto& [key, slot] : slots) {
    if (j.contains(key)) *slot = number(j[key], std::string("constants.") + key);
  }
  if (j.contains("named")) {
    const json& named = j["named"];
    require_object(named, "constants.named");
    for (const auto& [key, v] : named.items()) {
      int index = 0;
      if (key.size() < 2 || key[0] != 'C' ||
          std::sscanf(key.c_str() + 1, "%d", &index) != 1 || index < 1 || index > 12 ||
          std::to_string(index) != key.substr(1)) {
        schema_fail("constants.named." + key, "expected C1 ... C12");
      }
      k.named[static_cast<std::size_t>(index - 1)] = number(v, "constants.named." + key);
    }
  }
  try {
    k.validate();
  } catch (const std::invalid_argument& e) {
    schema_fail("constants", e.what());
  }
  return k;
}

}  // namespace

CaseConfig parse_case(const json& j, const std::filesystem::path& base_dir) {
  require_object(j, "<root>");
  allow_keys(j, "", {"schema_version", "name", "a", "L", "grid", "potential", "constants",
                     "n_range", "p", "alphas", "quadrature", "convergence_check", "certify",
                     "output"});
  CaseConfig c;
  if (j.contains("schema_version")) {
    c.schema_version = integer(j["schema_version"], "schema_version");
    if (c.schema_version != kSchemaVersion) schema_fail("schema_version", "unsupported version");
  }
  if (j.contains("name")) {
    if (!j["name"].is_string()) schema_fail("name", "expected a string");
    c.name = j["name"].get<std::string>();
  }
  if (!j.contains("a")) schema_fail("a", "missing");
  c.a = number(j["a"], "a");
  if (!(c.a > 0.0)) schema_fail("a", "must be > 0");

  if (!j.contains("potential")) schema_fail("potential", "missing");
  const json& pot = j["potential"];
  require_object(pot, "potential");
  c.potential_json = pot;
  const int sources = static_cast<int>(pot.contains("catalog")) +
                      static_cast<int>(pot.contains("grid_file")) +
                      static_cast<int>(pot.contains("curve"));
  if (sources != 1) {
    schema_fail("potential", "exactly one of catalog, grid_file, curve is required");
  }
  if (pot.contains("catalog")) {
    c.source = SourceKind::Catalog;
    c.potential = parse_catalog(pot, c.a);
  } else if (pot.contains("grid_file")) {
    allow_keys(pot, "potential", {"grid_file"});
    if (!pot["grid_file"].is_string()) schema_fail("potential.grid_file", "expected a path");
    std::filesystem::path file = pot["grid_file"].get<std::string>();
    if (file.is_relative()) file = base_dir / file;
    c.source = SourceKind::GridFile;
    c.potential = load_grid_potential(file, c.a);
  } else {
    allow_keys(pot, "potential", {"curve"});
    c.source = SourceKind::Curve;
    c.curve = parse_curve(pot["curve"], c.a);
  }

  if (j.contains("constants")) c.constants = parse_constants(j["constants"]);
  if (j.contains("n_range")) {
    const json& r = j["n_range"];
    if (!r.is_array() || r.size() != 2) schema_fail("n_range", "expected [lo, hi]");
    c.n_range = {integer(r[0], "n_range"), integer(r[1], "n_range")};
    if (c.n_range.lo > c.n_range.hi) schema_fail("n_range", "need lo <= hi");
  }
  if (j.contains("p")) {
    c.p = number(j["p"], "p");
    if (!(c.p > 1.0)) throw std::domain_error("case file: key 'p' must be > 1");
  }
  if (j.contains("alphas")) {
    if (!j["alphas"].is_array()) schema_fail("alphas", "expected an array");
    for (const auto& v : j["alphas"]) c.alphas.push_back(positive(v, "alphas"));
    if (!std::is_sorted(c.alphas.begin(), c.alphas.end())) schema_fail("alphas", "must increase");
  }
  if (j.contains("quadrature")) {
    const json& q = j["quadrature"];
    require_object(q, "quadrature");
    allow_keys(q, "quadrature",
               {"inner_panels", "outer_panels_per_unit", "min_outer_panels", "max_outer_panels"});
    const std::pair<const char*, int*> slots[] = {
        {"inner_panels", &c.quad.inner_panels},
        {"outer_panels_per_unit", &c.quad.outer_panels_per_unit},
        {"min_outer_panels", &c.quad.min_outer_panels},
        {"max_outer_panels", &c.quad.max_outer_panels},
    };
    for (const auto& [key, slot] : slots) {
      if (!q.contains(key)) continue;
      *slot = integer(q[key], std::string("quadrature.") + key);
      if (*slot < 1) schema_fail(std::string("quadrature.") + key, "must be >= 1");
    }
  }
  if (j.contains("convergence_check")) {
    c.convergence_check = boolean(j["convergence_check"], "convergence_check");
  }
  if (j.contains("certify")) c.certify = boolean(j["certify"], "certify");
  if (j.contains("output")) {
    const json& o = j["output"];
    require_object(o, "output");
    allow_keys(o, "output", {"dir"});
    if (o.contains("dir")) {
      if (!o["dir"].is_string()) schema_fail("output.dir", "expected a path");
      c.out_dir = o["dir"].get<std::string>();
    }
  }

  // Geometry defaults from the extent of the potential.
  double radius = 0.0;
  double extent = 0.0;
  if (c.curve) {
    const Interval e = c.curve->x1_extent();
    radius = std::max(std::abs(e.lo), std::abs(e.hi));
    extent = e.length();
  } else {
    radius = c.potential->support_radius();
    extent = c.potential->is_zero() ? 0.0 : c.potential->support().length();
  }
  if (j.contains("L")) {
    c.L = number(j["L"], "L");
    if (!(c.L > 0.0)) schema_fail("L", "must be > 0");
  } else {
    c.L = radius > 0.0 ? 4.0 * radius : 4.0 * c.a;
  }
  const double h = extent > 0.0 ? std::min(extent / 64.0, c.a / 16.0) : c.a / 16.0;
  c.nx = static_cast<int>(std::ceil(2.0 * c.L / h - 1e-9));
  c.ny = static_cast<int>(std::ceil(c.a / h - 1e-9));
  if (j.contains("grid")) {
    const json& g = j["grid"];
    require_object(g, "grid");
    allow_keys(g, "grid", {"nx", "ny"});
    if (g.contains("nx")) c.nx = integer(g["nx"], "grid.nx");
    if (g.contains("ny")) c.ny = integer(g["ny"], "grid.ny");
  }
  if (c.nx < 4) schema_fail("grid.nx", "must be >= 4");
  if (c.ny < 2) schema_fail("grid.ny", "must be >= 2");
  return c;
}

CaseConfig load_case(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open case file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("case file " + path.string() + ": " + e.what());
  }
  return parse_case(j, path.parent_path());
}

json case_to_json(const CaseConfig& c) {
  json j;
  j["schema_version"] = c.schema_version;
  j["name"] = c.name;
  j["a"] = c.a;
  j["L"] = c.L;
  j["grid"] = {{"nx", c.nx}, {"ny", c.ny}};
  j["potential"] = c.potential_json;
  const BoundConstants& k = c.constants;
  json constants = {{"c", k.c},
                    {"C", k.C},
                    {"est1_const", k.est1_const},
                    {"est1_threshold", k.est1_threshold},
                    {"measure_const", k.measure_const},
                    {"c1", k.c1},
                    {"c2", k.c2},
                    {"curve_sqrt_const", k.curve_sqrt_const},
                    {"curve_cell_const", k.curve_cell_const}};
  json named = json::object();
  for (std::size_t i = 0; i < k.named.size(); ++i) {
    if (k.named[i]) named["C" + std::to_string(i + 1)] = *k.named[i];
  }
  constants["named"] = named;
  j["constants"] = constants;
  j["n_range"] = {c.n_range.lo, c.n_range.hi};
  j["p"] = c.p;
  j["alphas"] = c.alphas;
  j["quadrature"] = {{"inner_panels", c.quad.inner_panels},
                     {"outer_panels_per_unit", c.quad.outer_panels_per_unit},
                     {"min_outer_panels", c.quad.min_outer_panels},
                     {"max_outer_panels", c.quad.max_outer_panels}};
  j["convergence_check"] = c.convergence_check;
  j["certify"] = c.certify;
  if (!c.out_dir.empty()) j["output"] = {{"dir", c.out_dir}};
  return j;
}

PotentialSpec load_grid_potential(const std::filesystem::path& path, double a) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open grid file " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("grid file " + path.string() + ": empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "x1,x2,V") {
    throw SchemaError("grid file " + path.string() + ": header must be x1,x2,V");
  }
  std::map<std::pair<double, double>, double> samples;
  std::set<double> xs;
  std::set<double> ys;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream s(line);
    double x = 0.0;
    double y = 0.0;
    double v = 0.0;
    char c1 = 0;
    char c2 = 0;
    if (!(s >> x >> c1 >> y >> c2 >> v) || c1 != ',' || c2 != ',') {
      throw SchemaError("grid file " + path.string() + ": malformed row " + std::to_string(row));
    }
    if (!std::isfinite(v) || v < 0.0) {
      throw std::domain_error("grid file " + path.string() + ": V must be finite and >= 0 (row " +
                              std::to_string(row) + ")");
    }
    if (!samples.emplace(std::make_pair(x, y), v).second) {
      throw SchemaError("grid file " + path.string() + ": duplicate node at row " +
                        std::to_string(row));
    }
    xs.insert(x);
    ys.insert(y);
  }
  if (samples.size() != xs.size() * ys.size() || xs.size() < 2 || ys.size() < 2) {
    throw SchemaError("grid file " + path.string() + ": lattice is not rectangular");
  }
  std::vector<double> x1(xs.begin(), xs.end());
  std::vector<double> x2(ys.begin(), ys.end());
  std::vector<double> values;
  values.reserve(samples.size());
  for (double x : x1) {
    for (double y : x2) values.push_back(samples.at({x, y}));
  }
  return PotentialSpec::from_lattice(a, std::move(x1), std::move(x2), std::move(values));
}

}  // namespace stripbound
