#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "stripbound/curves.hpp"
#include "stripbound/dyadic.hpp"
#include "stripbound/potential.hpp"
#include "stripbound/strip_solver.hpp"

namespace stripbound {

inline constexpr int kSchemaVersion = 1;

/// Thrown for malformed case files; the message names the offending key.
class SchemaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class SourceKind { Catalog, GridFile, Curve };

struct CaseConfig {
  int schema_version = kSchemaVersion;
  std::string name = "case";
  double a = 1.0;
  // Resolved truncation and grid (defaults applied by parse_case).
  double L = 0.0;
  int nx = 0;
  int ny = 0;
  SourceKind source = SourceKind::Catalog;
  nlohmann::json potential_json;             // the potential block as given
  std::optional<PotentialSpec> potential;    // catalog or grid file
  std::optional<CurveSpec> curve;
  BoundConstants constants;
  NRange n_range;
  double p = 2.0;
  std::vector<double> alphas;
  QuadratureSpec quad;
  bool convergence_check = true;
  bool certify = true;
  std::string out_dir;

  StripGrid grid() const { return {a, L, nx, ny}; }
};

/// Validates `j` and applies defaults:
///   c = 0.046, C = 7.61, n_range = [-20, 20], p = 2,
///   L = 4 * support radius,
///   h = min(support length / 64, a / 16), nx = ceil(2L / h), ny = ceil(a / h).
/// Relative grid-file paths resolve against `base_dir`.
/// Throws SchemaError for unknown or mistyped keys and std::domain_error
/// for negative potential parameters.
CaseConfig parse_case(const nlohmann::json& j, const std::filesystem::path& base_dir = {});

CaseConfig load_case(const std::filesystem::path& path);

/// The config with every default filled in, in the input schema.
nlohmann::json case_to_json(const CaseConfig& config);

/// Lattice potential from a CSV file with header "x1,x2,V". The lattice
/// must be rectangular; values are interpolated bilinearly.
PotentialSpec load_grid_potential(const std::filesystem::path& path, double a);

}  // namespace stripbound
