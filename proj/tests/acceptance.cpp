// Acceptance battery: one PASS/FAIL line per criterion, exit status 1 if
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "stripbound/case.hpp"
#include "stripbound/curves.hpp"
#include "stripbound/delta1d.hpp"
#include "stripbound/dyadic.hpp"
#include "stripbound/oracle.hpp"
#include "stripbound/orlicz.hpp"
#include "stripbound/report.hpp"
#include "stripbound/strip_solver.hpp"

using namespace stripbound;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Result {
  bool pass = true;
  std::ostringstream detail;
};

int failures = 0;

void report(int criterion, const std::string& title, Result& r) {
  std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << criterion << ": " << title << " ("
            << r.detail.str() << ")" << std::endl;
  if (!r.pass) ++failures;
}

template <class F>
void run(int criterion, const std::string& title, F body) {
  Result r;
  try {
    body(r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail << "exception: " << e.what();
  }
  report(criterion, title, r);
}

// ---------------------------------------------------------------------------

void orlicz_oracle(Result& r) {
  const auto t0 = Clock::now();
  for (const auto& line : run_orlicz_oracle(20240601, 100)) {
    r.pass = r.pass && line.pass;
    r.detail << line.name << ": " << line.detail << "; ";
  }
  r.detail << "total " << seconds_since(t0) << " s";
}

void norm_equivalence(Result& r) {
  std::mt19937 rng(101);
  std::uniform_real_distribution<double> u(0.05, 5.0);
  int sandwich = 0, implication = 0, pre = 0, checked = 0;
  for (int i = 0; i < 100; ++i) {
    const MeasuredFunction f = random_measured_function(rng, 6, 6.0);
    for (NFunction psi : {NFunction::llogl(), NFunction::exp_minus()}) {
      ++checked;
      const double lux = luxemburg_norm(f, psi);
      const double orl = orlicz_norm(f, psi);
      if (!(lux <= orl + 1e-9 && orl <= 2.0 * lux + 1e-9)) ++sandwich;
      const double kappa0 = u(rng);
      const double m0 = modular(f, psi, kappa0);
      const double c0 = std::max(1.0, m0);
      if (std::isfinite(c0) && !(lux <= c0 * kappa0 + 1e-9)) ++implication;
      const double m1 = modular(f, psi, 1.0);
      if (std::isfinite(m1) && !(lux <= std::max(1.0, m1) + 1e-9)) ++pre;
    }
  }
  r.pass = sandwich == 0 && implication == 0 && pre == 0;
  r.detail << checked << " checks for B and A; violations: sandwich " << sandwich
           << ", modular implication " << implication << ", max(1, modular) bound " << pre;
}

// ---------------------------------------------------------------------------

std::vector<PotentialSpec> line_catalog() {
  std::vector<PotentialSpec> v;
  for (double lambda : {0.5, 3.0, 12.0, 40.0}) v.push_back(PotentialSpec::box(1.0, lambda, {1, 2}));
  v.push_back(PotentialSpec::box(1.0, 8.0, {-3, 0.5}));
  for (double lambda : {1.0, 6.0, 25.0}) v.push_back(PotentialSpec::gaussian(1.0, lambda, 0.5, 1.0));
  v.push_back(PotentialSpec::gaussian(1.0, 10.0, -4.0, 0.3));
  v.push_back(PotentialSpec::gaussian(1.0, 3.0, 2.0, 3.0));
  v.push_back(PotentialSpec::multibump(1.0, {{4, {-6, -5}, {}}, {9, {0, 1}, {}}, {2, {7, 9}, {}}}));
  v.push_back(PotentialSpec::multibump(1.0, {{20, {1, 1.2}, {}}, {20, {2, 2.2}, {}}, {20, {4, 4.2}, {}}}));
  v.push_back(PotentialSpec::multibump(1.0, {{1, {-2, 2}, {}}, {30, {-0.25, 0.25}, {}}}));
  v.push_back(PotentialSpec::multibump(1.0, {{5, {-12, -10}, {}}, {5, {10, 12}, {}}}));
  for (double beta : {2.5, 3.0, 4.0}) v.push_back(PotentialSpec::power_tail(1.0, 5.0, beta, 16.0));
  v.push_back(PotentialSpec::power_tail(1.0, 30.0, 2.5, 32.0));
  v.push_back(PotentialSpec::power_tail(1.0, 0.2, 3.0, 8.0));
  // A genuinely two-dimensional one: the line sees only its x2-average.
  v.push_back(PotentialSpec::gaussian(1.0, 15.0, 0.0, 0.7, Profile::Cos2));
  return v;
}

void explicit_line_bound(Result& r) {
  int violations = 0, unconverged = 0, worst_case = 0;
  double worst_ratio = 0.0, max_seconds = 0.0;
  int max_unknowns = 0;
  const auto catalog = line_catalog();
  for (std::size_t k = 0; k < catalog.size(); ++k) {
    const auto t0 = Clock::now();
    const PotentialSpec& v = catalog[k];
    const Potential1D w = reduced_potential(v).mean.scaled(2.0);
    const double L = 4.0 * v.support_radius();
    const int start = static_cast<int>(std::ceil(2.0 * L / (v.support().length() / 64.0)));
    const ConvergedCount count = converged_line_count(w, L, start, 1 << 18);
    const Est1Bound bound = bound_est1_1d(w, NRange{-20, 20});
    if (!count.converged) ++unconverged;
    if (count.count > bound.value) ++violations;
    const double ratio = count.count / bound.value;
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      worst_case = static_cast<int>(k);
    }
    max_unknowns = std::max(max_unknowns, count.panels + 1);
    max_seconds = std::max(max_seconds, seconds_since(t0));
  }
  r.pass = violations == 0 && unconverged == 0 && max_seconds < 60.0;
  r.detail << catalog.size() << " line potentials W = 2 V~, violations " << violations
           << ", unconverged " << unconverged << ", largest count/bound " << worst_ratio
           << " (case " << worst_case << "), max unknowns " << max_unknowns
           << ", slowest case " << max_seconds << " s";
}

// ---------------------------------------------------------------------------

StripGrid grid_for(const PotentialSpec& v, int nx, int ny) {
  return {v.width(), 4.0 * v.support_radius(), nx, ny};
}

void decomposition(Result& r) {
  std::vector<std::pair<PotentialSpec, bool>> cases = {
      {PotentialSpec::box(1.0, 4.0, {1, 2}), true},
      {PotentialSpec::gaussian(1.0, 4.5, 0.0, 1.0), true},
      {PotentialSpec::multibump(1.0, {{3, {-3, -2}, {}}, {4, {0, 1}, {}}}), true},
      {PotentialSpec::power_tail(1.0, 4.0, 3.0, 6.0), true},
      {PotentialSpec::box(1.0, 30.0, {-1, 1}, {0.0, 0.3}), false},
      {PotentialSpec::gaussian(1.0, 25.0, 0.5, 0.8, Profile::Cos2), false},
      {PotentialSpec::gaussian(1.0, 12.0, -1.0, 1.5, Profile::CosOffset), false},
      {PotentialSpec::multibump(1.0, {{40, {-2, -1}, {0.0, 0.5}}, {40, {1, 2}, {0.5, 1.0}}}), false},
      {PotentialSpec::power_tail(1.0, 20.0, 2.5, 5.0, Profile::Cos2), false},
      {PotentialSpec::box(0.5, 60.0, {0, 1}, {0.0, 0.1}), false},
  };
  int violations = 0, n2_nonzero = 0, flat = 0;
  std::ostringstream rows;
  for (const auto& [v, x2_independent] : cases) {
    const StripGrid grid = grid_for(v, 256, 16);
    const int full = count_negative(assemble_form(v, grid));
    const SubspaceCounts s = subspace_counts(v, grid);
    if (full > s.n1 + s.n2) ++violations;
    if (x2_independent) {
      ++flat;
      if (s.n2 != 0) ++n2_nonzero;
    }
    rows << " " << full << "<=" << s.n1 << "+" << s.n2;
  }
  r.pass = violations == 0 && n2_nonzero == 0;
  r.detail << "10 cases on 256 x 16, violations " << violations << ", x2-independent cases "
           << flat << " with N2 != 0: " << n2_nonzero << ";" << rows.str();
}

// ---------------------------------------------------------------------------

/// Height of a full-width box on I_n with G_n = target.
double box_height(double a, int n, double target) {
  const Interval cell = dyadic_interval(n);
  // int_{I_n} |x1| dx1, or |I_0| for n = 0
  const double weight = n == 0 ? 2.0 : 0.5 * std::abs(cell.hi * cell.hi - cell.lo * cell.lo);
  return target / (a * weight);
}

void certifier(Result& r) {
  struct Construction {
    double a;
    std::vector<std::pair<int, double>> cells;  // n, G_n / a
  };
  const std::vector<Construction> cases = {
      {1.0, {{1, 6}}},
      {1.0, {{2, 10}}},
      {1.0, {{0, 6}}},
      {1.0, {{1, 6}, {4, 10}}},
      {1.0, {{-2, 10}, {3, 6}}},
      {1.0, {{1, 6}, {2, 6}, {3, 6}}},
      {1.0, {{1, 10}, {2, 10}, {3, 10}, {4, 10}}},
      {0.5, {{-3, 6}, {-2, 10}, {-1, 6}, {1, 6}, {2, 10}, {3, 6}}},
      {0.5, {{2, 10}}},
      {0.5, {{-1, 6}, {0, 10}, {1, 6}, {4, 10}}},
  };
  int bad_certificate = 0, bad_count = 0, checked = 0;
  std::ostringstream rows;
  for (const auto& c : cases) {
    std::vector<BoxTerm> boxes;
    for (const auto& [n, ratio] : c.cells) {
      BoxTerm t;
      t.lambda = box_height(c.a, n, ratio * c.a);
      t.x1 = dyadic_interval(n);
      boxes.push_back(t);
    }
    const PotentialSpec v = PotentialSpec::multibump(c.a, boxes);
    const CertifierReport cert = certify_lower_bound(v, NRange{-8, 8});
    for (const auto& e : cert.entries) {
      if (e.exceeds_threshold) {
        ++checked;
        if (!(e.q < 0.0)) ++bad_certificate;
      }
    }
    const double L = 1.25 * v.support_radius();
    const StripGrid grid{c.a, L, static_cast<int>(std::ceil(2.0 * L * 16.0)), 4};
    const int count = count_negative(assemble_form(v, grid));
    if (count < cert.third_of_exceeding || count < cert.lower_bound) ++bad_count;
    rows << " " << count << ">=" << cert.third_of_exceeding << "/" << cert.lower_bound;
  }
  r.pass = bad_certificate == 0 && bad_count == 0 && checked > 0;
  r.detail << checked << " cells with G_n > 5a, nonnegative q " << bad_certificate
           << ", counts below ceil(card/3) or packing " << bad_count
           << "; N vs ceil(card/3)/packing:" << rows.str();
}

// ---------------------------------------------------------------------------

void delta_wells(Result& r) {
  const DeltaConfig single{{0.0}, {1.0}, 40.0, 1e-3};
  const DeltaForm form = assemble_delta_form(single);
  const int count = count_negative(form);
  const double e = lowest_eigenvalue(form);
  const bool single_ok = count == 1 && std::abs(e + 0.25) <= 0.01 * 0.25;

  std::vector<double> alphas;
  for (int k = 1; k <= 8; ++k) alphas.push_back(1.0 / k);
  const SpacingConstruction s = spaced_wells(alphas, 2.0);
  bool certificates_ok = s.all_negative && s.certificates.size() == 8;
  double worst = -1e300;
  for (const auto& c : s.certificates) {
    certificates_ok = certificates_ok && c.analytic < 0.0 && c.discrete < 0.0;
    worst = std::max({worst, c.analytic, c.discrete});
  }
  const int spaced_count = count_negative_delta(s.config);

  std::mt19937 rng(106);
  std::uniform_real_distribution<double> alpha(0.01, 50.0);
  std::uniform_real_distribution<double> spread(0.05, 3.0);
  int exceeded = 0, max_seen = 0;
  for (int draw = 0; draw < 20; ++draw) {
    DeltaConfig c;
    c.L = 40.0;
    c.h = 1e-3;
    double x = -5.0;
    for (int k = 0; k < 5; ++k) {
      c.points.push_back(x);
      c.intensities.push_back(alpha(rng));
      x += spread(rng);
    }
    const FiniteSigmaCheck f = finite_sigma_count_check(c);
    if (!f.pass || f.count > 5) ++exceeded;
    max_seen = std::max(max_seen, f.count);
  }
  r.pass = single_ok && certificates_ok && spaced_count >= 8 && exceeded == 0;
  r.detail << "single well count " << count << ", eigenvalue " << e << "; spacing construction "
           << s.certificates.size() << " certificates, largest " << worst << ", count "
           << spaced_count << "; 5-point draws over count 5: " << exceeded << " (max " << max_seen
           << ")";
}

// ---------------------------------------------------------------------------

void inertia(Result& r) {
  bool random_ok = true;
  for (const auto& line : run_inertia_oracle(20240602, 50)) {
    random_ok = random_ok && line.pass;
    r.detail << line.name << ": " << line.detail << "; ";
  }
  const std::vector<PotentialSpec> strips = {
      PotentialSpec::gaussian(1.0, 200.0, 0.0, 0.5),
      PotentialSpec::box(1.0, 80.0, {-1, 1}, {0.2, 0.6}),
      PotentialSpec::gaussian(1.0, 60.0, 0.5, 1.0, Profile::Cos2),
      PotentialSpec::multibump(1.0, {{50, {-2, -1}, {}}, {90, {0.5, 1.5}, {0.0, 0.5}}}),
      PotentialSpec::power_tail(1.0, 100.0, 3.0, 2.5, Profile::CosOffset),
  };
  int agree = 0, fallbacks = 0;
  std::ostringstream counts;
  for (const auto& v : strips) {
    const StripProblem p = assemble_form(v, StripGrid{1.0, 3.0, 60, 20});
    const InertiaCount sparse = count_negative_sparse(p.matrix);
    const int dense = count_negative_dense(Eigen::MatrixXd(p.matrix));
    const int spectral = count_negative_spectral(Eigen::MatrixXd(p.matrix));
    if (sparse.negative == spectral && dense == spectral) ++agree;
    if (sparse.used_fallback) ++fallbacks;
    counts << " " << spectral;
  }
  r.pass = random_ok && agree == 5 && fallbacks == 0;
  r.detail << "strip problems 60 x 20 agreeing " << agree << "/5 (counts" << counts.str()
           << "), sparse fallbacks " << fallbacks;
}

// ---------------------------------------------------------------------------

CurveSpec make_curve(double a, std::vector<CurvePoint> v, double density) {
  CurveSpec c;
  c.a = a;
  c.vertices = std::move(v);
  c.density.assign(c.vertices.size(), density);
  c.validate();
  return c;
}

void curve_suite(Result& r) {
  struct SigmaCase {
    CurveSpec curve;
    std::vector<double> expected;
  };
  const std::vector<SigmaCase> sigma_cases = {
      {make_curve(1, {{0, 0.5}, {3, 0.5}}, 1), {}},
      {make_curve(1, {{-2, 0}, {0, 1}, {2, 0}}, 1), {}},
      {make_curve(1, {{0, 0}, {1e-6, 1}}, 1), {}},
      {make_curve(1, {{0, 0.1}, {1, 0.1}, {1, 0.9}, {2, 0.9}}, 1), {1}},
      {make_curve(2, {{2, 0}, {2, 1}, {3, 2}}, 3), {2}},
      {make_curve(1, {{0, 0}, {0, 0.4}, {0, 1}, {1, 1}}, 1), {0}},
      {make_curve(1, {{-1, 0}, {-1, 1}, {1, 1}, {1, 0}}, 1), {-1, 1}},
      {make_curve(1, {{0, 0}, {1, 0}, {1, 0.3}, {2, 0.3}, {2, 0.6}, {3, 0.6}}, 1), {1, 2}},
      {make_curve(1, {{0, 0}, {0, 0.2}, {1, 0.2}, {1, 0.4}, {2, 0.4}, {2, 0.6}, {3, 0.6}}, 1),
       {0, 1, 2}},
      {make_curve(1, {{0, 0}, {1, 0}, {1, 0.2}, {2, 0.2}, {2, 0.4}, {3, 0.4}, {3, 0.6},
                      {4, 0.6}, {4, 0.8}, {5, 0.9}}, 1),
       {1, 2, 3, 4}},
  };
  int sigma_wrong = 0;
  for (const auto& c : sigma_cases) {
    std::vector<double> got;
    for (const auto& s : detect_sigma(c.curve)) got.push_back(s.x1);
    if (got != c.expected) ++sigma_wrong;
  }

  const double f1 = f_n(make_curve(1, {{1, 0.3}, {2, 0.3}}, 1), 1);
  const double nu_diag = arc_measure_nu(make_curve(1, {{0, 0}, {1, 1}}, 1), {0, 1});
  const bool analytic_ok = std::abs(f1 - 1.5) <= 1e-6 && std::abs(nu_diag - std::sqrt(2.0)) <= 1e-6;

  const StripGrid grid{1.0, 6.0, 192, 16};
  const std::vector<CurveSpec> count_cases = {
      make_curve(1, {{-2, 0.5}, {2, 0.5}}, 3),
      make_curve(1, {{-3, 0.2}, {-1, 0.8}, {1, 0.1}, {3, 0.7}}, 4),
      make_curve(1, {{-2, 0}, {-1, 0}, {-1, 0.5}, {1, 0.5}, {1, 1}, {2, 1}}, 2),
      make_curve(1, {{-2, 0}, {-2, 1}, {2, 1}, {2, 0}}, 4),
      make_curve(1, {{-1, 0.5}, {0, 0.5}, {0, 0.0}}, 10),
  };
  int nonmonotone = 0, split_fail = 0, rank_fail = 0;
  std::ostringstream rows;
  for (const auto& c : count_cases) {
    int previous = -1;
    std::ostringstream seq;
    for (double scale : {1.0, 2.0, 4.0, 8.0}) {
      const int n = count_negative(assemble_curve_form(c, grid, scale));
      if (n < previous) ++nonmonotone;
      previous = n;
      seq << (scale == 1.0 ? "" : ",") << n;
    }
    const CurveSplitCounts s = curve_split_counts(c, grid);
    if (!s.split_holds) ++split_fail;
    if (!s.rank_bound_holds || !s.sigma_bound_holds) ++rank_fail;
    rows << " [" << seq.str() << "; " << s.full << "<=" << s.n1 << "+" << s.n2 << "]";
  }
  r.pass = sigma_wrong == 0 && analytic_ok && nonmonotone == 0 && split_fail == 0 && rank_fail == 0;
  r.detail << "sigma mismatches " << sigma_wrong << "/10, F_1 = " << f1 << ", nu(diagonal) = "
           << nu_diag << ", monotonicity breaks " << nonmonotone << ", split failures "
           << split_fail << ", rank-bound failures " << rank_fail << ";" << rows.str();
}

// ---------------------------------------------------------------------------

void semiclassical(Result& r) {
  const PotentialSpec v = PotentialSpec::gaussian(1.0, 20.0, 0.0, 2.0);
  const nlohmann::json j = {
      {"a", 1.0}, {"potential", {{"catalog", "gaussian"}, {"lambda", 20.0}, {"sigma", 2.0}}}};
  const CaseConfig config = parse_case(j);
  const ScanResult s =
      semiclassical_scan(v, config.grid(), {1, 2, 4, 8, 16, 32}, config.n_range, config.quad);
  r.pass = s.monotone && s.min_ratio > 0.0 && s.max_ratio <= 4.0 * s.min_ratio;
  r.detail << "grid " << config.nx << " x " << config.ny << ", N/alpha:";
  for (const auto& row : s.rows) r.detail << " " << row.count_over_alpha;
  r.detail << ", max/min " << (s.min_ratio > 0 ? s.max_ratio / s.min_ratio : 0.0);
}

// ---------------------------------------------------------------------------

void determinism(Result& r) {
  const std::filesystem::path data = STRIPBOUND_TEST_DATA;
  std::ifstream golden_in(data / "box_benchmark.report.json", std::ios::binary);
  if (!golden_in) throw std::runtime_error("golden report missing");
  std::stringstream golden;
  golden << golden_in.rdbuf();
  const CaseConfig config = load_case(data / "box_benchmark.json");
  const std::string first = report_json_text(run_case(config));
  const std::string second = report_json_text(run_case(config));
  r.pass = first == golden.str() && second == first;
  r.detail << "golden " << golden.str().size() << " bytes, rerun identical "
           << (second == first ? "yes" : "no") << ", matches golden "
           << (first == golden.str() ? "yes" : "no");
}

}  // namespace

int main() {
  run(1, "Amemiya norms match the brute-force dual ball", orlicz_oracle);
  run(2, "Luxemburg/Orlicz equivalence and Luxemburg implications", norm_equivalence);
  run(3, "explicit 1D bound on the line", explicit_line_bound);
  run(4, "decomposition N <= N1 + N2", decomposition);
  run(5, "test-function certifier", certifier);
  run(6, "delta interactions", delta_wells);
  run(7, "inertia versus dense eigensolver", inertia);
  run(8, "curve suite", curve_suite);
  run(9, "semiclassical growth N(alpha V) / alpha", semiclassical);
  run(10, "golden report determinism", determinism);
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
