#include "stripbound/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>

namespace stripbound {

namespace {

using nlohmann::json;

CheckRow unconditional(std::string name, double lhs, double rhs, bool pass) {
  return {std::move(name), "unconditional", lhs, rhs, pass, std::nullopt};
}

CheckRow le_unconditional(std::string name, double lhs, double rhs, double slack = 0.0) {
  return unconditional(std::move(name), lhs, rhs, lhs <= rhs + slack);
}

CheckRow empirical(std::string name, double lhs, double rhs, std::optional<double> fitted) {
  return {std::move(name), "empirical", lhs, rhs, lhs <= rhs, fitted};
}

std::string source_name(SourceKind k) {
  switch (k) {
    case SourceKind::Catalog:
      return "catalog";
    case SourceKind::GridFile:
      return "grid_file";
    case SourceKind::Curve:
      return "curve";
  }
  return "catalog";
}

std::vector<double> values_of(const std::vector<CellValue>& cells) {
  std::vector<double> v;
  v.reserve(cells.size());
  for (const auto& c : cells) v.push_back(c.value);
  return v;
}

void append(std::vector<std::string>& to, const std::vector<std::string>& from) {
  to.insert(to.end(), from.begin(), from.end());
}

StripGrid coarse_grid(const StripGrid& g) { return {g.a, g.L, g.nx / 2, g.ny / 2}; }

bool coarse_possible(const StripGrid& g) { return g.nx / 2 >= 4 && g.ny / 2 >= 2; }

/// Smallest prefactor making count <= offset + C * sum hold.
std::optional<double> fitted(int count, double offset, double sum) {
  const double excess = count - offset;
  if (excess <= 0.0) return 0.0;
  if (sum <= 0.0) return std::nullopt;
  return excess / sum;
}

void run_potential_case(const CaseConfig& config, BoundReport& r) {
  const PotentialSpec& v = *config.potential;
  const BoundConstants& k = config.constants;
  const NRange range = config.n_range;
  const QuadratureSpec& quad = config.quad;

  const Gest2Bound gest2 = bound_gest2(v, k, range, quad);
  append(r.warnings, gest2.warnings);
  const auto records = unit_cell_records(v, config.p, quad);
  const ReducedPotential reduced = reduced_potential(v, quad);
  const Est1Bound est1 =
      bound_est1_1d(reduced.mean.scaled(2.0), range, quad, k.est1_const, k.est1_threshold);
  const BoundVariants variants = bound_variants(v, config.p, range, k, quad);

  std::map<int, CellRow> rows;
  for (const auto& g : gest2.g) rows[g.n].g = g.value;
  double d_sum = 0.0;
  double d_lux_sum = 0.0;
  for (const auto& rec : records) {
    rows[rec.n].d = rec.d;
    rows[rec.n].b = rec.b;
    d_sum += rec.d;
    d_lux_sum += rec.d_luxemburg;
  }
  for (int n : gest2.sqrt_part.indices) rows[n].contributes_sqrt = true;
  for (int n : gest2.cell_part.indices) rows[n].contributes_cell = true;
  for (auto& [n, row] : rows) {
    row.n = n;
    r.cells.push_back(row);
  }

  const std::vector<double> g_values = values_of(gest2.g);
  auto& q = r.quantities;
  q["gest2"] = gest2.value;
  q["gest2_sqrt_sum"] = gest2.sqrt_part.sum;
  q["gest2_cell_sum"] = gest2.cell_part.sum;
  q["est1_line"] = est1.value;
  q["est1_sqrt_sum"] = est1.sqrt_part.sum;
  q["quasinorm"] = variants.quasinorm;
  q["mixed_norm"] = variants.mixed_norm;
  q["mixed_norm_star"] = variants.mixed_norm_star;
  q["mixed_norm_luxemburg"] = d_lux_sum;
  q["lp_mixed"] = variants.lp_mixed;
  q["lp_mixed_star"] = variants.lp_mixed_star;
  q["mean_integral"] = variants.mean_integral;
  q["thresholded_cell_sum"] = variants.thresholded_cell_sum;
  q["rhs_est2"] = variants.rhs_est2;
  q["rhs_est3"] = variants.rhs_est3;
  q["rhs_est4"] = variants.rhs_est4;
  q["rhs_est5"] = variants.rhs_est5;
  q["lp_gap"] = variants.lp_gap;
  q["lp_gap_bound"] = variants.lp_gap_bound;

  const StripGrid grid = config.grid();
  r.counts.nx = grid.nx;
  r.counts.ny = grid.ny;
  r.counts.full = count_negative(assemble_form(v, grid));
  const SubspaceCounts sub = subspace_counts(v, grid);
  r.counts.n1 = sub.n1;
  r.counts.n2 = sub.n2;
  if (config.convergence_check && coarse_possible(grid)) {
    r.counts.coarse_full = count_negative(assemble_form(v, coarse_grid(grid)));
    r.counts.grid_converged = *r.counts.coarse_full == r.counts.full;
  }

  auto& c = r.checks;
  c.push_back(le_unconditional("decomposition: N <= N1 + N2", r.counts.full,
                               r.counts.n1 + r.counts.n2));
  c.push_back(le_unconditional("explicit line bound: N1 <= 1 + C sum sqrt G_n(2 V~)", r.counts.n1,
                               est1.value));
  c.push_back(empirical("strip bound: N <= 1 + C (sum sqrt G_n + sum D_n)", r.counts.full,
                        gest2.value,
                        fitted(r.counts.full, 1.0, gest2.sqrt_part.sum + gest2.cell_part.sum)));
  c.push_back(le_unconditional("weak threshold: sum_{G_n > c} sqrt G_n <= 2/sqrt(c) ||G||_{1,w}",
                               threshold_sqrt_sum(g_values, k.c),
                               2.0 / std::sqrt(k.c) * weak_l1_quasinorm(g_values), 1e-12));
  c.push_back(le_unconditional("domination: sum_{D_n > c} D_n <= ||V||_{L1(L_B)}",
                               variants.thresholded_cell_sum, variants.mixed_norm,
                               1e-12 * std::max(1.0, variants.mixed_norm)));
  c.push_back(le_unconditional("L^p gap: |Lp(V) - Lp(V_*)| <= a^(1/p) int V~", variants.lp_gap,
                               variants.lp_gap_bound, 1e-9 * std::max(1.0, variants.lp_gap_bound)));
  c.push_back(le_unconditional("norm equivalence: Luxemburg <= Orlicz (mixed)", d_lux_sum, d_sum,
                               1e-9 * std::max(1.0, d_sum)));
  c.push_back(le_unconditional("norm equivalence: Orlicz <= 2 Luxemburg (mixed)", d_sum,
                               2.0 * d_lux_sum, 1e-9 * std::max(1.0, d_sum)));

  if (config.certify) {
    const CertifierReport cert = certify_lower_bound(v, range, quad);
    append(r.warnings, cert.warnings);
    r.certifier = summarize(cert);
    c.push_back(unconditional("certifier: G_n > 5a implies q[u_n] < 0",
                              static_cast<double>(cert.exceeding.size()),
                              static_cast<double>(cert.certified.size()),
                              cert.threshold_implies_negative));
    c.push_back(le_unconditional("certifier: disjoint packing <= N", cert.lower_bound,
                                 r.counts.full));
    c.push_back(le_unconditional("certifier: ceil(card{G_n > 5a} / 3) <= N",
                                 cert.third_of_exceeding, r.counts.full));
  }
}

void run_curve_case(const CaseConfig& config, BoundReport& r) {
  const CurveSpec& curve = *config.curve;
  const BoundConstants& k = config.constants;
  const NRange range = config.n_range;

  const Gest3Bound gest3 = bound_gest3(curve, k, range, config.quad);
  append(r.warnings, gest3.warnings);
  const Est1Bound es3 = bound_measure_1d(curve, range, k.measure_const, k.est1_threshold);

  std::map<int, CellRow> rows;
  for (const auto& f : gest3.f) rows[f.n].f = f.value;
  for (const auto& cn : gest3.c) rows[cn.n].c = cn.value;
  for (int n : gest3.sqrt_part.indices) rows[n].contributes_sqrt = true;
  for (int n : gest3.cell_part.indices) rows[n].contributes_cell = true;
  for (auto& [n, row] : rows) {
    row.n = n;
    r.cells.push_back(row);
  }

  const auto sigma = detect_sigma(curve);
  CurveSummary summary;
  for (const auto& s : sigma) {
    summary.sigma_x1.push_back(s.x1);
    summary.sigma_mass.push_back(s.mass);
  }

  const std::vector<double> f_values = values_of(gest3.f);
  auto& q = r.quantities;
  q["gest3"] = gest3.value;
  q["gest3_sqrt_sum"] = gest3.sqrt_part.sum;
  q["gest3_cell_sum"] = gest3.cell_part.sum;
  q["sigma_count"] = gest3.sigma_count;
  q["measure_line_bound"] = es3.value;
  q["quasinorm"] = weak_l1_quasinorm(f_values);
  q["total_nu"] = arc_measure_nu(curve, {-std::numeric_limits<double>::max(),
                                         std::numeric_limits<double>::max()});

  const StripGrid grid = config.grid();
  const CurveSplitCounts split = curve_split_counts(curve, grid);
  r.counts.nx = grid.nx;
  r.counts.ny = grid.ny;
  r.counts.full = split.full;
  r.counts.n1 = split.n1;
  r.counts.n2 = split.n2;
  summary.n1_continuous = split.n1_continuous;
  summary.n1_sigma = split.n1_sigma;
  r.curve = summary;
  if (config.convergence_check && coarse_possible(grid)) {
    r.counts.coarse_full = count_negative(assemble_curve_form(curve, coarse_grid(grid)));
    r.counts.grid_converged = *r.counts.coarse_full == r.counts.full;
  }

  auto& c = r.checks;
  c.push_back(le_unconditional("decomposition: N <= N1 + N2", split.full, split.n1 + split.n2));
  c.push_back(le_unconditional("vertical rank: N1 <= N1(nu off Sigma) + card Sigma", split.n1,
                               split.n1_continuous + split.sigma_count));
  c.push_back(le_unconditional("finite Sigma: N(point interactions) <= card Sigma",
                               split.n1_sigma, split.sigma_count));
  c.push_back(empirical("literal sum: N1 <= N1(nu off Sigma) + N(point interactions)", split.n1,
                        split.n1_continuous + split.n1_sigma, std::nullopt));
  c.push_back(le_unconditional("measure line bound: N1(nu off Sigma) <= 1 + C sum sqrt G_n(2 nu / a)",
                               split.n1_continuous, es3.value));
  c.push_back(empirical("curve bound: N <= 1 + N_Sigma + C sum sqrt F_n + C' sum C_n", split.full,
                        gest3.value,
                        fitted(split.full, 1.0 + gest3.sigma_count,
                               gest3.sqrt_part.sum + gest3.cell_part.sum)));
  c.push_back(le_unconditional("weak threshold: sum_{F_n > c1} sqrt F_n <= 2/sqrt(c1) ||F||_{1,w}",
                               threshold_sqrt_sum(f_values, k.c1),
                               2.0 / std::sqrt(k.c1) * weak_l1_quasinorm(f_values), 1e-12));
}

}  // namespace

CertifierSummary summarize(const CertifierReport& cert) {
  CertifierSummary s;
  s.threshold = cert.threshold;
  for (const auto& e : cert.entries) {
    s.entries.push_back({e.n, e.g, e.energy, e.potential, e.q, e.exceeds_threshold});
  }
  s.exceeding = cert.exceeding;
  s.certified = cert.certified;
  s.packing = cert.packing;
  s.lower_bound = cert.lower_bound;
  s.third_of_exceeding = cert.third_of_exceeding;
  s.threshold_implies_negative = cert.threshold_implies_negative;
  return s;
}

ScanSummary run_scan(const CaseConfig& config) {
  ScanSummary out;
  if (config.alphas.empty()) return out;
  const StripGrid grid = config.grid();
  if (config.potential) {
    const ScanResult scan =
        semiclassical_scan(*config.potential, grid, config.alphas, config.n_range, config.quad);
    for (const auto& row : scan.rows) {
      out.rows.push_back({row.alpha, row.count, row.count_over_alpha, row.weak_quasinorm,
                          row.cells_over_threshold});
    }
    out.max_ratio = scan.max_ratio;
    out.min_ratio = scan.min_ratio;
    out.monotone = scan.monotone;
    return out;
  }
  const CurveSpec& curve = *config.curve;
  std::vector<double> f;
  for (int n = config.n_range.lo; n <= config.n_range.hi; ++n) f.push_back(f_n(curve, n));
  const double quasinorm = weak_l1_quasinorm(f);
  for (double alpha : config.alphas) {
    ScanSummaryRow row;
    row.alpha = alpha;
    row.count = count_negative(assemble_curve_form(curve, grid, alpha));
    row.count_over_alpha = row.count / alpha;
    row.weak_quasinorm = alpha * quasinorm;
    for (double fn : f) {
      if (alpha * fn > 5.0 * grid.a) ++row.cells_over_threshold;
    }
    if (!out.rows.empty() && row.count < out.rows.back().count) out.monotone = false;
    out.rows.push_back(row);
  }
  out.max_ratio = out.min_ratio = out.rows.front().count_over_alpha;
  for (const auto& row : out.rows) {
    out.max_ratio = std::max(out.max_ratio, row.count_over_alpha);
    out.min_ratio = std::min(out.min_ratio, row.count_over_alpha);
  }
  return out;
}

BoundReport run_case(const CaseConfig& config) {
  BoundReport r;
  r.name = config.name;
  r.source = source_name(config.source);
  r.config = case_to_json(config);
  try {
    if (config.curve) {
      run_curve_case(config, r);
    } else {
      run_potential_case(config, r);
    }
    if (!config.alphas.empty()) {
      r.scan = run_scan(config);
      r.checks.push_back(unconditional("scan: counts nondecreasing in alpha",
                                       r.scan->monotone ? 0.0 : 1.0, 0.0, r.scan->monotone));
      r.checks.push_back(empirical("scan: max N/alpha <= 4 min N/alpha", r.scan->max_ratio,
                                   4.0 * r.scan->min_ratio, std::nullopt));
    }
  } catch (const std::exception& e) {
    throw std::runtime_error("case '" + config.name + "': " + e.what());
  }
  if (r.counts.coarse_full) {
    r.checks.push_back(empirical("grid convergence: N(coarse) == N",
                                 std::abs(*r.counts.coarse_full - r.counts.full), 0.0,
                                 std::nullopt));
  }
  for (const auto& row : r.checks) {
    if (row.kind == "unconditional" && !row.pass) r.unconditional_pass = false;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Serialisation

namespace {

template <class T>
json optional_to_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> optional_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

json to_json_value(const CertifierSummary& s) {
  json entries = json::array();
  for (const auto& e : s.entries) {
    entries.push_back({{"n", e.n},
                       {"G_n", e.g},
                       {"energy", e.energy},
                       {"potential", e.potential},
                       {"q", e.q},
                       {"exceeds_threshold", e.exceeds_threshold}});
  }
  return {{"threshold", s.threshold},
          {"entries", entries},
          {"exceeding", s.exceeding},
          {"certified", s.certified},
          {"packing", s.packing},
          {"lower_bound", s.lower_bound},
          {"third_of_exceeding", s.third_of_exceeding},
          {"threshold_implies_negative", s.threshold_implies_negative}};
}

CertifierSummary certifier_from_json(const json& j) {
  CertifierSummary s;
  s.threshold = j.at("threshold").get<double>();
  for (const auto& e : j.at("entries")) {
    s.entries.push_back({e.at("n").get<int>(), e.at("G_n").get<double>(),
                         e.at("energy").get<double>(), e.at("potential").get<double>(),
                         e.at("q").get<double>(), e.at("exceeds_threshold").get<bool>()});
  }
  s.exceeding = j.at("exceeding").get<std::vector<int>>();
  s.certified = j.at("certified").get<std::vector<int>>();
  s.packing = j.at("packing").get<std::vector<int>>();
  s.lower_bound = j.at("lower_bound").get<int>();
  s.third_of_exceeding = j.at("third_of_exceeding").get<int>();
  s.threshold_implies_negative = j.at("threshold_implies_negative").get<bool>();
  return s;
}

json to_json_value(const ScanSummary& s) {
  json rows = json::array();
  for (const auto& r : s.rows) {
    rows.push_back({{"alpha", r.alpha},
                    {"count", r.count},
                    {"count_over_alpha", r.count_over_alpha},
                    {"weak_quasinorm", r.weak_quasinorm},
                    {"cells_over_threshold", r.cells_over_threshold}});
  }
  return {{"rows", rows},
          {"max_ratio", s.max_ratio},
          {"min_ratio", s.min_ratio},
          {"monotone", s.monotone}};
}

ScanSummary scan_from_json(const json& j) {
  ScanSummary s;
  for (const auto& r : j.at("rows")) {
    s.rows.push_back({r.at("alpha").get<double>(), r.at("count").get<int>(),
                      r.at("count_over_alpha").get<double>(), r.at("weak_quasinorm").get<double>(),
                      r.at("cells_over_threshold").get<int>()});
  }
  s.max_ratio = j.at("max_ratio").get<double>();
  s.min_ratio = j.at("min_ratio").get<double>();
  s.monotone = j.at("monotone").get<bool>();
  return s;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_cell(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

}  // namespace

json report_to_json(const BoundReport& r) {
  json cells = json::array();
  for (const auto& c : r.cells) {
    cells.push_back({{"n", c.n},
                     {"G_n", optional_to_json(c.g)},
                     {"D_n", optional_to_json(c.d)},
                     {"b_n", optional_to_json(c.b)},
                     {"F_n", optional_to_json(c.f)},
                     {"C_n", optional_to_json(c.c)},
                     {"contributes_sqrt", c.contributes_sqrt},
                     {"contributes_cell", c.contributes_cell}});
  }
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"kind", c.kind},
                      {"lhs", c.lhs},
                      {"rhs", c.rhs},
                      {"pass", c.pass},
                      {"fitted_constant", optional_to_json(c.fitted_constant)}});
  }
  json counts = {{"full", r.counts.full},
                 {"n1", r.counts.n1},
                 {"n2", r.counts.n2},
                 {"nx", r.counts.nx},
                 {"ny", r.counts.ny},
                 {"coarse_full", optional_to_json(r.counts.coarse_full)},
                 {"grid_converged", r.counts.grid_converged}};
  json curve = nullptr;
  if (r.curve) {
    curve = {{"sigma_x1", r.curve->sigma_x1},
             {"sigma_mass", r.curve->sigma_mass},
             {"n1_continuous", r.curve->n1_continuous},
             {"n1_sigma", r.curve->n1_sigma}};
  }
  return {{"schema_version", r.schema_version},
          {"name", r.name},
          {"source", r.source},
          {"config", r.config},
          {"cells", cells},
          {"quantities", r.quantities},
          {"counts", counts},
          {"certifier", r.certifier ? to_json_value(*r.certifier) : json(nullptr)},
          {"scan", r.scan ? to_json_value(*r.scan) : json(nullptr)},
          {"curve", curve},
          {"checks", checks},
          {"warnings", r.warnings},
          {"unconditional_pass", r.unconditional_pass}};
}

BoundReport report_from_json(const json& j) {
  BoundReport r;
  r.schema_version = j.at("schema_version").get<int>();
  if (r.schema_version != kSchemaVersion) {
    throw SchemaError("report: unsupported schema_version " + std::to_string(r.schema_version));
  }
  r.name = j.at("name").get<std::string>();
  r.source = j.at("source").get<std::string>();
  r.config = j.at("config");
  for (const auto& c : j.at("cells")) {
    CellRow row;
    row.n = c.at("n").get<int>();
    row.g = optional_from_json<double>(c.at("G_n"));
    row.d = optional_from_json<double>(c.at("D_n"));
    row.b = optional_from_json<double>(c.at("b_n"));
    row.f = optional_from_json<double>(c.at("F_n"));
    row.c = optional_from_json<double>(c.at("C_n"));
    row.contributes_sqrt = c.at("contributes_sqrt").get<bool>();
    row.contributes_cell = c.at("contributes_cell").get<bool>();
    r.cells.push_back(row);
  }
  r.quantities = j.at("quantities").get<std::map<std::string, double>>();
  const json& counts = j.at("counts");
  r.counts.full = counts.at("full").get<int>();
  r.counts.n1 = counts.at("n1").get<int>();
  r.counts.n2 = counts.at("n2").get<int>();
  r.counts.nx = counts.at("nx").get<int>();
  r.counts.ny = counts.at("ny").get<int>();
  r.counts.coarse_full = optional_from_json<int>(counts.at("coarse_full"));
  r.counts.grid_converged = counts.at("grid_converged").get<bool>();
  if (!j.at("certifier").is_null()) r.certifier = certifier_from_json(j.at("certifier"));
  if (!j.at("scan").is_null()) r.scan = scan_from_json(j.at("scan"));
  if (!j.at("curve").is_null()) {
    const json& c = j.at("curve");
    CurveSummary s;
    s.sigma_x1 = c.at("sigma_x1").get<std::vector<double>>();
    s.sigma_mass = c.at("sigma_mass").get<std::vector<double>>();
    s.n1_continuous = c.at("n1_continuous").get<int>();
    s.n1_sigma = c.at("n1_sigma").get<int>();
    r.curve = s;
  }
  for (const auto& c : j.at("checks")) {
    r.checks.push_back({c.at("name").get<std::string>(), c.at("kind").get<std::string>(),
                        c.at("lhs").get<double>(), c.at("rhs").get<double>(),
                        c.at("pass").get<bool>(), optional_from_json<double>(c.at("fitted_constant"))});
  }
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  r.unconditional_pass = j.at("unconditional_pass").get<bool>();
  return r;
}

std::string report_json_text(const BoundReport& report) {
  return report_to_json(report).dump(2) + "\n";
}

std::string report_csv_text(const BoundReport& r) {
  std::string out = std::string(kCsvHeader) + "\n";
  double sums[5] = {0, 0, 0, 0, 0};
  int sqrt_count = 0;
  int cell_count = 0;
  for (const auto& c : r.cells) {
    const std::optional<double> cols[5] = {c.g, c.d, c.b, c.f, c.c};
    out += std::to_string(c.n);
    for (int k = 0; k < 5; ++k) {
      out += "," + csv_cell(cols[k]);
      if (cols[k]) sums[k] += *cols[k];
    }
    out += std::string(",") + (c.contributes_sqrt ? "1" : "0") + "," +
           (c.contributes_cell ? "1" : "0") + "\n";
    sqrt_count += c.contributes_sqrt;
    cell_count += c.contributes_cell;
  }
  out += "summary";
  for (double s : sums) out += "," + format_number(s);
  out += "," + std::to_string(sqrt_count) + "," + std::to_string(cell_count) + "\n";
  return out;
}

std::string scan_csv_text(const ScanSummary& scan) {
  std::string out = "alpha,count,count_over_alpha,weak_quasinorm,cells_over_threshold\n";
  for (const auto& r : scan.rows) {
    out += format_number(r.alpha) + "," + std::to_string(r.count) + "," +
           format_number(r.count_over_alpha) + "," + format_number(r.weak_quasinorm) + "," +
           std::to_string(r.cells_over_threshold) + "\n";
  }
  return out;
}

std::vector<std::filesystem::path> emit_report(const BoundReport& report, const std::string& format,
                                               const std::filesystem::path& dir) {
  if (format != "json" && format != "csv") {
    throw std::invalid_argument("report format must be json or csv");
  }
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string());
  std::string stem = report.name.empty() ? "case" : report.name;
  std::replace_if(stem.begin(), stem.end(), [](char ch) { return ch == '/' || ch == '\\'; }, '_');

  std::vector<std::pair<std::filesystem::path, std::string>> files;
  if (format == "json") {
    files.emplace_back(dir / (stem + ".report.json"), report_json_text(report));
  } else {
    files.emplace_back(dir / (stem + ".report.csv"), report_csv_text(report));
    if (report.scan) files.emplace_back(dir / (stem + ".scan.csv"), scan_csv_text(*report.scan));
  }
  std::vector<std::filesystem::path> written;
  for (const auto& [path, text] : files) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path.string());
    written.push_back(path);
  }
  return written;
}

}  // namespace stripbound
