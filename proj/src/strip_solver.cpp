#include "stripbound/strip_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace stripbound {

void StripGrid::validate() const {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("grid: a must be > 0");
  if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("grid: L must be > 0");
  if (nx < 4) throw std::invalid_argument("grid: nx must be >= 4");
  if (ny < 2) throw std::invalid_argument("grid: ny must be >= 2 (grid too coarse)");
}

namespace {

double trapezoid_weight(int k, int last) { return (k == 0 || k == last) ? 0.5 : 1.0; }

}  // namespace

SparseMatrix assemble_stiffness(const StripGrid& grid) {
  grid.validate();
  const double h1 = grid.h1();
  const double h2 = grid.h2();
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(static_cast<std::size_t>(grid.size()) * 9);
  const auto edge = [&t](int p, int q, double c) {
    t.emplace_back(p, p, c);
    t.emplace_back(q, q, c);
    t.emplace_back(p, q, -c);
    t.emplace_back(q, p, -c);
  };
  for (int i = 0; i < grid.rows(); ++i) {
    for (int j = 0; j < grid.cols(); ++j) {
      if (i + 1 < grid.rows()) {
        edge(grid.index(i, j), grid.index(i + 1, j), trapezoid_weight(j, grid.ny) * h2 / h1);
      }
      if (j + 1 < grid.cols()) {
        edge(grid.index(i, j), grid.index(i, j + 1), trapezoid_weight(i, grid.nx) * h1 / h2);
      }
    }
  }
  SparseMatrix k(grid.size(), grid.size());
  k.setFromTriplets(t.begin(), t.end());
  return k;
}

StripProblem assemble_form(const PotentialSpec& v, const StripGrid& grid, double scale) {
  grid.validate();
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw std::invalid_argument("assemble_form: scale must be finite and > 0");
  }
  if (std::abs(v.width() - grid.a) > 1e-12 * grid.a) {
    throw std::invalid_argument("assemble_form: potential and grid have different widths");
  }
  StripProblem out{grid, assemble_stiffness(grid), Eigen::VectorXd(grid.size())};
  const double cell = grid.h1() * grid.h2();
  for (int i = 0; i < grid.rows(); ++i) {
    for (int j = 0; j < grid.cols(); ++j) {
      const int p = grid.index(i, j);
      out.mass[p] = trapezoid_weight(i, grid.nx) * trapezoid_weight(j, grid.ny) * cell;
      const double value = v(grid.x1(i), grid.x2(j));
      if (!std::isfinite(value)) {
        throw std::domain_error("assemble_form: potential is not finite at a node");
      }
      if (value < 0.0) throw std::domain_error("assemble_form: potential is negative at a node");
      if (value != 0.0) out.matrix.coeffRef(p, p) -= scale * value * out.mass[p];
    }
  }
  out.matrix.makeCompressed();
  return out;
}

int count_negative(const StripProblem& problem) {
  return count_negative_sparse(problem.matrix).negative;
}

SparseMatrix restrict_to_mean_zero(const StripProblem& problem) {
  const StripGrid& g = problem.grid;
  const int modes = g.ny;
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(static_cast<std::size_t>(g.size()) * modes);
  for (int i = 0; i < g.rows(); ++i) {
    for (int j = 0; j < g.cols(); ++j) {
      for (int k = 1; k <= modes; ++k) {
        const double c = std::cos(std::numbers::pi * k * j / g.ny);
        t.emplace_back(g.index(i, j), i * modes + (k - 1), c);
      }
    }
  }
  SparseMatrix q(g.size(), g.rows() * modes);
  q.setFromTriplets(t.begin(), t.end());
  SparseMatrix b = SparseMatrix(q.transpose()) * problem.matrix * q;
  const double norm = max_abs_entry(b);
  b.prune(1e-14 * norm, 1.0);
  // Symmetrise away product round-off.
  SparseMatrix bt = b.transpose();
  SparseMatrix sym = 0.5 * (b + bt);
  sym.makeCompressed();
  return sym;
}

LineOperator assemble_line_operator(std::span<const double> samples, double L, int panels) {
  if (!(L > 0.0)) throw std::invalid_argument("line operator: L must be > 0");
  if (panels < 2) throw std::invalid_argument("line operator: need at least 2 panels");
  if (samples.size() != static_cast<std::size_t>(panels) + 1) {
    throw std::invalid_argument("line operator: need panels + 1 samples");
  }
  LineOperator op;
  op.L = L;
  op.panels = panels;
  const double h = op.h();
  const int n = panels + 1;
  op.diag.assign(n, 0.0);
  op.off.assign(n - 1, -1.0 / h);
  op.mass.resize(n);
  for (int i = 0; i < n; ++i) {
    const double weight = trapezoid_weight(i, panels) * h;
    op.mass[i] = weight;
    if (i > 0) op.diag[i] += 1.0 / h;
    if (i + 1 < n) op.diag[i] += 1.0 / h;
    const double w = samples[i];
    if (!std::isfinite(w)) throw std::domain_error("line operator: potential not finite");
    op.diag[i] -= w * weight;
  }
  return op;
}

LineOperator assemble_line_operator(const Potential1D& w, double L, int panels) {
  std::vector<double> samples(static_cast<std::size_t>(panels) + 1);
  const double h = 2.0 * L / panels;
  for (int i = 0; i <= panels; ++i) samples[i] = w(-L + i * h);
  return assemble_line_operator(samples, L, panels);
}

int count_negative(const LineOperator& op) { return count_negative_tridiagonal(op.diag, op.off); }

std::vector<double> nodal_mean(const PotentialSpec& v, const StripGrid& grid) {
  grid.validate();
  std::vector<double> mean(static_cast<std::size_t>(grid.rows()), 0.0);
  const double h2 = grid.h2();
  for (int i = 0; i < grid.rows(); ++i) {
    double s = 0.0;
    for (int j = 0; j < grid.cols(); ++j) {
      s += trapezoid_weight(j, grid.ny) * h2 * v(grid.x1(i), grid.x2(j));
    }
    mean[i] = s / grid.a;
  }
  return mean;
}

SubspaceCounts subspace_counts(const PotentialSpec& v, const StripGrid& grid) {
  SubspaceCounts out;
  if (v.is_zero()) return out;
  const auto doubled = assemble_form(v, grid, 2.0);
  out.n2 = count_negative_sparse(restrict_to_mean_zero(doubled)).negative;

  auto samples = nodal_mean(v, grid);
  for (double& s : samples) s *= 2.0;
  out.n1 = count_negative(assemble_line_operator(samples, grid.L, grid.nx));
  return out;
}

ConvergedCount converged_line_count(const Potential1D& w, double L, int panels, int max_panels) {
  ConvergedCount out;
  int previous = count_negative(assemble_line_operator(w, L, panels));
  out.count = previous;
  out.panels = panels;
  while (2 * out.panels <= max_panels) {
    out.panels *= 2;
    const int next = count_negative(assemble_line_operator(w, L, out.panels));
    out.count = next;
    if (next == previous) {
      out.converged = true;
      return out;
    }
    previous = next;
  }
  return out;
}

// ---------------------------------------------------------------------------

double certifier_profile(int n, double x1) {
  if (n == 0) {
    const double r = std::abs(x1);
    if (r <= 1.0) return 1.0;
    if (r < 2.0) return 2.0 - r;
    return 0.0;
  }
  const double x = n > 0 ? x1 : -x1;
  const int m = std::abs(n);
  const double start = std::ldexp(1.0, m - 2);
  const double rise = std::ldexp(1.0, m - 1);
  const double top = std::ldexp(1.0, m);
  const double end = std::ldexp(1.0, m + 1);
  if (x <= start || x >= end) return 0.0;
  if (x < rise) return 4.0 * (x - start);
  if (x <= top) return top;
  return end - x;
}

Interval certifier_support(int n) {
  if (n == 0) return {-2.0, 2.0};
  const int m = std::abs(n);
  const Interval pos{std::ldexp(1.0, m - 2), std::ldexp(1.0, m + 1)};
  return n > 0 ? pos : Interval{-pos.hi, -pos.lo};
}

double certifier_energy(int n, double a) {
  if (n == 0) return 2.0 * a;
  return 5.0 * a * std::ldexp(1.0, std::abs(n));
}

namespace {

std::vector<double> profile_kinks(int n) {
  if (n == 0) return {-2.0, -1.0, 1.0, 2.0};
  const int m = std::abs(n);
  std::vector<double> k{std::ldexp(1.0, m - 2), std::ldexp(1.0, m - 1), std::ldexp(1.0, m),
                        std::ldexp(1.0, m + 1)};
  if (n < 0) {
    for (double& x : k) x = -x;
  }
  return k;
}

}  // namespace

CertifierReport certify_lower_bound(const PotentialSpec& v, NRange range,
                                    const QuadratureSpec& quad) {
  CertifierReport out;
  const double a = v.width();
  out.threshold = 5.0 * a;
  if (!v.is_zero()) {
    const Interval reach{certifier_support(range.lo).lo, certifier_support(range.hi).hi};
    const Interval covered{dyadic_interval(range.lo).lo, dyadic_interval(range.hi).hi};
    if (v.support().lo < covered.lo || v.support().hi > covered.hi) {
      std::ostringstream msg;
      msg << "potential extends beyond [" << reach.lo << ", " << reach.hi
          << "]; certifier cells truncated";
      out.warnings.push_back(msg.str());
    }
  }
  if (v.is_zero()) return out;

  const auto inner = transverse_nodes(v, quad);
  for (int n = range.lo; n <= range.hi; ++n) {
    const Interval support = certifier_support(n);
    const Interval piece = intersect(support, v.support());
    if (piece.empty()) continue;
    CertifierEntry e;
    e.n = n;
    e.support = support;
    e.g = g_n(v, n, quad);
    e.energy = certifier_energy(n, a);
    auto breaks = v.x1_breakpoints();
    const auto kinks = profile_kinks(n);
    breaks.insert(breaks.end(), kinks.begin(), kinks.end());
    const auto outer = midpoint_rule(piece, breaks, quad.outer_panels_per_unit,
                                     quad.min_outer_panels, quad.max_outer_panels);
    for (const auto& q : outer) {
      const double w = certifier_profile(n, q.x);
      if (w == 0.0) continue;
      double column = 0.0;
      for (const auto& r : inner) column += v(q.x, r.x) * r.w;
      e.potential += w * w * column * q.w;
    }
    e.q = e.energy - e.potential;
    e.exceeds_threshold = e.g > out.threshold;
    if (e.exceeds_threshold) out.exceeding.push_back(n);
    if (e.q < 0.0) out.certified.push_back(n);
    if (e.exceeds_threshold && !(e.q < 0.0)) out.threshold_implies_negative = false;
    out.entries.push_back(e);
  }

  // Largest family of certified test functions with pairwise disjoint
  // supports: interval scheduling by right end point.
  std::vector<std::pair<Interval, int>> candidates;
  for (int n : out.certified) candidates.emplace_back(certifier_support(n), n);
  std::sort(candidates.begin(), candidates.end(),
            [](const auto& l, const auto& r) { return l.first.hi < r.first.hi; });
  double last_end = -std::numeric_limits<double>::infinity();
  for (const auto& [support, n] : candidates) {
    if (support.lo >= last_end) {
      out.packing.push_back(n);
      last_end = support.hi;
    }
  }
  std::sort(out.packing.begin(), out.packing.end());
  out.lower_bound = static_cast<int>(out.packing.size());
  out.third_of_exceeding = static_cast<int>((out.exceeding.size() + 2) / 3);
  return out;
}

ScanResult semiclassical_scan(const PotentialSpec& v, const StripGrid& grid,
                              const std::vector<double>& alphas, NRange range,
                              const QuadratureSpec& quad) {
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    if (!(alphas[k] > 0.0) || !std::isfinite(alphas[k])) {
      throw std::invalid_argument("scan: alphas must be finite and > 0");
    }
    if (k > 0 && alphas[k] < alphas[k - 1]) {
      throw std::invalid_argument("scan: alphas must be increasing");
    }
  }
  std::vector<double> g;
  for (int n = range.lo; n <= range.hi; ++n) g.push_back(g_n(v, n, quad));
  const double quasinorm = weak_l1_quasinorm(g);

  ScanResult out;
  for (double alpha : alphas) {
    ScanRow row;
    row.alpha = alpha;
    row.count = v.is_zero() ? 0 : count_negative(assemble_form(v, grid, alpha));
    row.count_over_alpha = row.count / alpha;
    row.weak_quasinorm = alpha * quasinorm;
    for (double gn : g) {
      if (alpha * gn > 5.0 * grid.a) ++row.cells_over_threshold;
    }
    if (!out.rows.empty() && row.count < out.rows.back().count) out.monotone = false;
    out.rows.push_back(row);
  }
  if (!out.rows.empty()) {
    out.max_ratio = out.rows.front().count_over_alpha;
    out.min_ratio = out.rows.front().count_over_alpha;
    for (const auto& row : out.rows) {
      out.max_ratio = std::max(out.max_ratio, row.count_over_alpha);
      out.min_ratio = std::min(out.min_ratio, row.count_over_alpha);
    }
  }
  return out;
}

}  // namespace stripbound
