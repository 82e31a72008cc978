// Command-line front end: bound evaluation, eigenvalue counting, scans,
// the lower-bound certifier and the brute-force oracle suites.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stripbound/case.hpp"
#include "stripbound/oracle.hpp"
#include "stripbound/report.hpp"

namespace {

using namespace stripbound;

constexpr int kExitFailedRows = 1;
constexpr int kExitError = 2;

void print_checks(const BoundReport& r) {
  for (const auto& c : r.checks) {
    std::cout << (c.pass ? "pass " : "FAIL ") << "[" << c.kind << "] " << c.name << ": " << c.lhs
              << " <= " << c.rhs;
    if (c.fitted_constant) std::cout << " (fitted constant " << *c.fitted_constant << ")";
    std::cout << "\n";
  }
  for (const auto& w : r.warnings) std::cout << "warning: " << w << "\n";
}

int compute(const std::string& config_path, const std::string& format, std::string out_dir) {
  const CaseConfig config = load_case(config_path);
  const BoundReport report = run_case(config);
  if (out_dir.empty()) out_dir = config.out_dir.empty() ? "." : config.out_dir;
  for (const auto& path : emit_report(report, format, out_dir)) {
    std::cout << "wrote " << path.string() << "\n";
  }
  std::cout << "N = " << report.counts.full << ", N1 = " << report.counts.n1
            << ", N2 = " << report.counts.n2 << " on " << report.counts.nx << " x "
            << report.counts.ny << " panels\n";
  print_checks(report);
  return report.unconditional_pass ? 0 : kExitFailedRows;
}

std::vector<double> parse_alphas(const std::string& text) {
  std::vector<double> alphas;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad alpha '" + item + "'");
    alphas.push_back(v);
  }
  return alphas;
}

int scan(const std::string& config_path, const std::string& alphas) {
  CaseConfig config = load_case(config_path);
  if (!alphas.empty()) config.alphas = parse_alphas(alphas);
  if (config.alphas.empty()) throw std::invalid_argument("scan: no alphas given");
  const ScanSummary s = run_scan(config);
  std::cout << scan_csv_text(s);
  std::cout << "max N/alpha = " << s.max_ratio << ", min N/alpha = " << s.min_ratio
            << (s.monotone ? ", monotone" : ", NOT monotone") << "\n";
  return s.monotone ? 0 : kExitFailedRows;
}

int certify(const std::string& config_path) {
  const CaseConfig config = load_case(config_path);
  if (!config.potential) throw std::invalid_argument("certify: needs a strip potential, not a curve");
  const CertifierReport cert = certify_lower_bound(*config.potential, config.n_range, config.quad);
  const int count = count_negative(assemble_form(*config.potential, config.grid()));
  const CertifierSummary s = summarize(cert);
  std::cout << "threshold 5a = " << s.threshold << "\n";
  std::cout << "n,G_n,energy,potential,q,exceeds_threshold\n";
  for (const auto& e : s.entries) {
    std::cout << e.n << "," << e.g << "," << e.energy << "," << e.potential << "," << e.q << ","
              << (e.exceeds_threshold ? 1 : 0) << "\n";
  }
  std::cout << "certified lower bound " << s.lower_bound << " (ceil(card/3) = "
            << s.third_of_exceeding << "), numeric count " << count << "\n";
  for (const auto& w : cert.warnings) std::cout << "warning: " << w << "\n";
  const bool ok = s.threshold_implies_negative && s.lower_bound <= count &&
                  s.third_of_exceeding <= count;
  return ok ? 0 : kExitFailedRows;
}

int oracle(const std::string& suite) {
  std::vector<OracleLine> lines;
  if (suite == "orlicz") {
    lines = run_orlicz_oracle();
  } else if (suite == "inertia") {
    lines = run_inertia_oracle();
  } else {
    throw std::invalid_argument("unknown oracle suite '" + suite + "'");
  }
  bool ok = true;
  for (const auto& l : lines) {
    std::cout << (l.pass ? "PASS " : "FAIL ") << l.name << ": " << l.detail << "\n";
    ok = ok && l.pass;
  }
  return ok ? 0 : kExitFailedRows;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Negative-eigenvalue bounds for Schrodinger operators on a strip"};
  app.require_subcommand(1);

  std::string config_path;
  std::string format = "json";
  std::string out_dir;
  auto* compute_cmd = app.add_subcommand("compute", "Evaluate all bounds and counts for a case");
  compute_cmd->add_option("--config", config_path, "Case file (JSON)")->required();
  compute_cmd->add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));
  compute_cmd->add_option("--out", out_dir, "Output directory");

  std::string alphas;
  auto* scan_cmd = app.add_subcommand("scan", "Count N(alpha V) over coupling constants");
  scan_cmd->add_option("--config", config_path, "Case file (JSON)")->required();
  scan_cmd->add_option("--alphas", alphas, "Comma-separated increasing alphas, e.g. 1,2,4,8");

  auto* certify_cmd = app.add_subcommand("certify", "Run the test-function lower-bound certifier");
  certify_cmd->add_option("--config", config_path, "Case file (JSON)")->required();

  std::string suite;
  auto* oracle_cmd = app.add_subcommand("oracle", "Run a brute-force oracle suite");
  oracle_cmd->add_option("--suite", suite, "orlicz or inertia")
      ->required()
      ->check(CLI::IsMember({"orlicz", "inertia"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*compute_cmd) return compute(config_path, format, out_dir);
    if (*scan_cmd) return scan(config_path, alphas);
    if (*certify_cmd) return certify(config_path);
    if (*oracle_cmd) return oracle(suite);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
