#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "stripbound/case.hpp"

namespace stripbound {

/// One row of the per-n table. G_n and F_n belong to the dyadic cell I_n;
/// D_n, b_n and C_n to the unit cell (n, n + 1).
struct CellRow {
  int n = 0;
  std::optional<double> g;
  std::optional<double> d;
  std::optional<double> b;
  std::optional<double> f;
  std::optional<double> c;
  bool contributes_sqrt = false;
  bool contributes_cell = false;

  friend bool operator==(const CellRow&, const CellRow&) = default;
};

/// An inequality lhs <= rhs. "unconditional" rows are proven statements
/// with explicit data; "empirical" rows depend on constants the theory only
/// asserts to exist, and carry the smallest prefactor that would make them
/// hold.
struct CheckRow {
  std::string name;
  std::string kind;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = true;
  std::optional<double> fitted_constant;

  friend bool operator==(const CheckRow&, const CheckRow&) = default;
};

struct CountSummary {
  int full = 0;
  int n1 = 0;
  int n2 = 0;
  int nx = 0;
  int ny = 0;
  std::optional<int> coarse_full;  // same case on the grid (nx/2, ny/2)
  bool grid_converged = true;

  friend bool operator==(const CountSummary&, const CountSummary&) = default;
};

struct CertifierRow {
  int n = 0;
  double g = 0.0;
  double energy = 0.0;
  double potential = 0.0;
  double q = 0.0;
  bool exceeds_threshold = false;

  friend bool operator==(const CertifierRow&, const CertifierRow&) = default;
};

struct CertifierSummary {
  double threshold = 0.0;
  std::vector<CertifierRow> entries;
  std::vector<int> exceeding;
  std::vector<int> certified;
  std::vector<int> packing;
  int lower_bound = 0;
  int third_of_exceeding = 0;
  bool threshold_implies_negative = true;

  friend bool operator==(const CertifierSummary&, const CertifierSummary&) = default;
};

struct ScanSummaryRow {
  double alpha = 0.0;
  int count = 0;
  double count_over_alpha = 0.0;
  double weak_quasinorm = 0.0;
  int cells_over_threshold = 0;

  friend bool operator==(const ScanSummaryRow&, const ScanSummaryRow&) = default;
};

struct ScanSummary {
  std::vector<ScanSummaryRow> rows;
  double max_ratio = 0.0;
  double min_ratio = 0.0;
  bool monotone = true;

  friend bool operator==(const ScanSummary&, const ScanSummary&) = default;
};

struct CurveSummary {
  std::vector<double> sigma_x1;
  std::vector<double> sigma_mass;
  int n1_continuous = 0;
  int n1_sigma = 0;

  friend bool operator==(const CurveSummary&, const CurveSummary&) = default;
};

struct BoundReport {
  int schema_version = kSchemaVersion;
  std::string name;
  std::string source;       // "catalog", "grid_file" or "curve"
  nlohmann::json config;    // case with defaults filled in; echoes the constants
  std::vector<CellRow> cells;
  std::map<std::string, double> quantities;  // quasinorms, norms and bound values
  CountSummary counts;
  std::optional<CertifierSummary> certifier;
  std::optional<ScanSummary> scan;
  std::optional<CurveSummary> curve;
  std::vector<CheckRow> checks;
  std::vector<std::string> warnings;
  bool unconditional_pass = true;

  friend bool operator==(const BoundReport&, const BoundReport&) = default;
};

/// Runs every applicable evaluator and solver for the case. Errors from the
/// modules are rethrown with the case name attached.
BoundReport run_case(const CaseConfig& config);

/// Scan over config.alphas (for curves the scale multiplies the density).
ScanSummary run_scan(const CaseConfig& config);

CertifierSummary summarize(const CertifierReport& report);

nlohmann::json report_to_json(const BoundReport& report);
BoundReport report_from_json(const nlohmann::json& j);

/// Pretty JSON with a trailing newline; identical reports give identical bytes.
std::string report_json_text(const BoundReport& report);

inline constexpr const char* kCsvHeader = "n,G_n,D_n,b_n,F_n,C_n,contributes_sqrt,contributes_cell";

/// Per-n table plus a final "summary" row of column sums and contributor counts.
std::string report_csv_text(const BoundReport& report);
std::string scan_csv_text(const ScanSummary& scan);

/// Writes <dir>/<name>.report.json or <dir>/<name>.report.csv (plus
/// <name>.scan.csv when a scan ran). Returns the paths written.
std::vector<std::filesystem::path> emit_report(const BoundReport& report, const std::string& format,
                                               const std::filesystem::path& dir);

}  // namespace stripbound
