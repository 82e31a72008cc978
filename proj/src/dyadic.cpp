#include "stripbound/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace stripbound {

namespace {

constexpr NFunction kB = NFunction::llogl();

struct ColumnNorms {
  double orlicz = 0.0;
  double luxemburg = 0.0;
};

// Catalog potentials are mostly separable, so consecutive x1 columns are
// often exact multiples of one another. Norms are homogeneous; reuse them.
class ColumnNormCache {
 public:
  ColumnNormCache(std::vector<double> weights, bool want_luxemburg)
      : weights_(std::move(weights)), want_luxemburg_(want_luxemburg) {}

  ColumnNorms operator()(const std::vector<double>& column) {
    double scale = 0.0;
    for (double v : column) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return {};
    normalized_.resize(column.size());
    for (std::size_t j = 0; j < column.size(); ++j) normalized_[j] = std::abs(column[j]) / scale;
    if (!matches_reference()) {
      reference_ = normalized_;
      const auto f = MeasuredFunction::from_samples(reference_, weights_);
      reference_norms_.orlicz = orlicz_norm(f, kB);
      reference_norms_.luxemburg = want_luxemburg_ ? luxemburg_norm(f, kB) : 0.0;
    }
    return {reference_norms_.orlicz * scale, reference_norms_.luxemburg * scale};
  }

 private:
  bool matches_reference() const {
    if (reference_.size() != normalized_.size()) return false;
    for (std::size_t j = 0; j < reference_.size(); ++j) {
      if (std::abs(reference_[j] - normalized_[j]) > 1e-14) return false;
    }
    return true;
  }

  std::vector<double> weights_;
  bool want_luxemburg_;
  std::vector<double> normalized_;
  std::vector<double> reference_;
  ColumnNorms reference_norms_;
};

std::vector<double> weights_of(const std::vector<QuadNode>& nodes) {
  std::vector<double> w;
  w.reserve(nodes.size());
  for (const auto& q : nodes) w.push_back(q.w);
  return w;
}

std::vector<QuadNode> outer_nodes(const PotentialSpec& v, Interval range,
                                  const QuadratureSpec& quad) {
  const Interval piece = intersect(range, v.support());
  return midpoint_rule(piece, v.x1_breakpoints(), quad.outer_panels_per_unit,
                       quad.min_outer_panels, quad.max_outer_panels);
}

void sample_column(const PotentialSpec& v, double x1, const std::vector<QuadNode>& inner,
                   bool allow_signed, std::vector<double>& column) {
  column.resize(inner.size());
  for (std::size_t j = 0; j < inner.size(); ++j) {
    const double value = v(x1, inner[j].x);
    if (!std::isfinite(value)) {
      throw std::domain_error("potential is not finite at a quadrature node");
    }
    if (value < 0.0 && !allow_signed) {
      std::ostringstream msg;
      msg << "potential is negative at (" << x1 << ", " << inner[j].x << ")";
      throw std::domain_error(msg.str());
    }
    column[j] = value;
  }
}

double lp_of_column(const std::vector<double>& column, const std::vector<QuadNode>& inner,
                    double p) {
  double s = 0.0;
  for (std::size_t j = 0; j < column.size(); ++j) {
    s += std::pow(std::abs(column[j]), p) * inner[j].w;
  }
  return s;
}

void require_p(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw std::domain_error("L^p exponent must be finite and > 1");
  }
}

}  // namespace

double mixed_norm_L1_LB(const PotentialSpec& v, Interval i1, Interval i2,
                        const QuadratureSpec& quad, InnerNorm kind, bool allow_signed) {
  if (i1.empty() || i2.empty()) {
    throw std::invalid_argument("mixed_norm_L1_LB: intervals must be nonempty");
  }
  const auto outer = outer_nodes(v, i1, quad);
  if (outer.empty()) return 0.0;
  const auto inner = midpoint_rule_total(i2, v.x2_breakpoints(), quad.inner_panels);
  ColumnNormCache norms(weights_of(inner), kind == InnerNorm::Luxemburg);
  std::vector<double> column;
  double total = 0.0;
  for (const auto& q : outer) {
    sample_column(v, q.x, inner, allow_signed, column);
    const auto n = norms(column);
    total += q.w * (kind == InnerNorm::Orlicz ? n.orlicz : n.luxemburg);
  }
  return total;
}

Interval dyadic_interval(int n) {
  if (n == 0) return {-1.0, 1.0};
  const int m = std::abs(n);
  const double inner = std::ldexp(1.0, m - 1);
  const double outer = std::ldexp(1.0, m);
  return n > 0 ? Interval{inner, outer} : Interval{-outer, -inner};
}

int dyadic_index_of(double x) {
  if (!std::isfinite(x)) throw std::domain_error("dyadic_index_of: non-finite x");
  if (x >= -1.0 && x < 1.0) return 0;
  if (x >= 1.0) {
    int e = 0;
    std::frexp(x, &e);  // x = m 2^e, m in [0.5, 1): x in [2^(e-1), 2^e)
    return e;
  }
  // x < -1: I_n = [-2^|n|, -2^(|n|-1)) for n < 0.
  int e = 0;
  const double m = std::frexp(-x, &e);  // -x in [2^(e-1), 2^e)
  return m == 0.5 ? -(e - 1) : -e;
}

double g_n(const PotentialSpec& v, int n, const QuadratureSpec& quad) {
  const auto outer = outer_nodes(v, dyadic_interval(n), quad);
  if (outer.empty()) return 0.0;
  const auto inner = transverse_nodes(v, quad);
  std::vector<double> column;
  double total = 0.0;
  for (const auto& q : outer) {
    sample_column(v, q.x, inner, false, column);
    double s = 0.0;
    for (std::size_t j = 0; j < column.size(); ++j) s += column[j] * inner[j].w;
    total += (n == 0 ? 1.0 : std::abs(q.x)) * s * q.w;
  }
  return total;
}

double g_n_1d(const Potential1D& w, int n, const QuadratureSpec& quad) {
  const Interval piece = intersect(dyadic_interval(n), w.support);
  const auto nodes = midpoint_rule(piece, w.breakpoints, quad.outer_panels_per_unit,
                                   quad.min_outer_panels, quad.max_outer_panels);
  double total = 0.0;
  for (const auto& q : nodes) {
    const double value = w(q.x);
    if (!(value >= 0.0) || !std::isfinite(value)) {
      throw std::domain_error("1D potential must be finite and >= 0");
    }
    total += (n == 0 ? 1.0 : std::abs(q.x)) * value * q.w;
  }
  return total;
}

double d_n(const PotentialSpec& v, int n, const QuadratureSpec& quad) {
  return mixed_norm_L1_LB(v, {static_cast<double>(n), n + 1.0}, {0.0, v.width()}, quad);
}

double b_n_lp(const PotentialSpec& v, int n, double p, const QuadratureSpec& quad) {
  require_p(p);
  const auto outer = outer_nodes(v, {static_cast<double>(n), n + 1.0}, quad);
  const auto inner = transverse_nodes(v, quad);
  std::vector<double> column;
  double total = 0.0;
  for (const auto& q : outer) {
    sample_column(v, q.x, inner, false, column);
    total += lp_of_column(column, inner, p) * q.w;
  }
  return std::pow(total, 1.0 / p);
}

double weak_l1_quasinorm(std::span<const double> seq) {
  std::vector<double> a;
  a.reserve(seq.size());
  for (double x : seq) a.push_back(std::abs(x));
  std::sort(a.begin(), a.end(), std::greater<>());
  double best = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    best = std::max(best, static_cast<double>(k + 1) * a[k]);
  }
  return best;
}

double threshold_sqrt_sum(std::span<const double> seq, double threshold) {
  double s = 0.0;
  for (double x : seq) {
    if (x > threshold) s += std::sqrt(x);
  }
  return s;
}

void BoundConstants::validate() const {
  const auto check = [](double value, const std::string& name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw std::invalid_argument("constant '" + name + "' must be finite and > 0");
    }
  };
  check(c, "c");
  check(C, "C");
  check(est1_const, "est1_const");
  check(est1_threshold, "est1_threshold");
  check(measure_const, "measure_const");
  check(c1, "c1");
  check(c2, "c2");
  check(curve_sqrt_const, "curve_sqrt_const");
  check(curve_cell_const, "curve_cell_const");
  for (std::size_t i = 0; i < named.size(); ++i) {
    if (named[i]) check(*named[i], "C" + std::to_string(i + 1));
  }
}

ThresholdSum threshold_sqrt_terms(std::span<const CellValue> cells, double threshold) {
  ThresholdSum out;
  for (const auto& cell : cells) {
    if (cell.value > threshold) {
      out.sum += std::sqrt(cell.value);
      out.indices.push_back(cell.n);
    }
  }
  return out;
}

ThresholdSum threshold_linear_terms(std::span<const CellValue> cells, double threshold) {
  ThresholdSum out;
  for (const auto& cell : cells) {
    if (cell.value > threshold) {
      out.sum += cell.value;
      out.indices.push_back(cell.n);
    }
  }
  return out;
}

namespace {

// Flags truncation of `cells` to `range` when its two end cells carry more
// than 1e-6 of the total.
void boundary_check(const std::vector<CellValue>& cells, NRange range, const std::string& what,
                    std::vector<std::string>& warnings) {
  double total = 0.0;
  double boundary = 0.0;
  for (const auto& cell : cells) {
    total += cell.value;
    if (cell.n == range.lo || cell.n == range.hi) boundary += cell.value;
  }
  if (total > 0.0 && boundary > 1e-6 * total) {
    std::ostringstream msg;
    msg << what << ": boundary cells n=" << range.lo << "," << range.hi << " carry "
        << boundary / total << " of the total; widen n_range";
    warnings.push_back(msg.str());
  }
}

}  // namespace

NRange unit_cells_covering(const PotentialSpec& v) {
  if (v.is_zero()) return {0, -1};
  const Interval s = v.support();
  const int lo = static_cast<int>(std::floor(s.lo));
  int hi = static_cast<int>(std::ceil(s.hi)) - 1;
  if (hi < lo) hi = lo;
  return {lo, hi};
}

std::vector<std::string> coverage_warnings(const PotentialSpec& v, NRange range) {
  std::vector<std::string> warnings;
  if (v.is_zero()) return warnings;
  const Interval covered{dyadic_interval(range.lo).lo, dyadic_interval(range.hi).hi};
  const Interval s = v.support();
  if (s.lo < covered.lo || s.hi > covered.hi) {
    warnings.push_back("support of V extends beyond the dyadic cells of n_range");
  }
  const NRange cells = unit_cells_covering(v);
  if (cells.lo < range.lo || cells.hi > range.hi) {
    warnings.push_back("support of V extends beyond the unit cells J_n of n_range");
  }
  return warnings;
}

std::vector<UnitCellRecord> unit_cell_records(const PotentialSpec& v, double p,
                                              const QuadratureSpec& quad) {
  require_p(p);
  std::vector<UnitCellRecord> records;
  const NRange cells = unit_cells_covering(v);
  if (cells.size() <= 0) return records;

  const double a = v.width();
  const auto inner = transverse_nodes(v, quad);
  const auto weights = weights_of(inner);
  ColumnNormCache plain(weights, true);
  ColumnNormCache star(weights, false);
  std::vector<double> column;
  std::vector<double> centered;

  for (int n = cells.lo; n <= cells.hi; ++n) {
    UnitCellRecord rec;
    rec.n = n;
    double b_power = 0.0;
    for (const auto& q : outer_nodes(v, {static_cast<double>(n), n + 1.0}, quad)) {
      sample_column(v, q.x, inner, false, column);
      double mass = 0.0;
      for (std::size_t j = 0; j < column.size(); ++j) mass += column[j] * inner[j].w;
      const double mean = mass / a;
      centered.resize(column.size());
      for (std::size_t j = 0; j < column.size(); ++j) centered[j] = column[j] - mean;

      const auto n_plain = plain(column);
      const auto n_star = star(centered);
      const double lp_power = lp_of_column(column, inner, p);
      rec.d += q.w * n_plain.orlicz;
      rec.d_luxemburg += q.w * n_plain.luxemburg;
      rec.d_star += q.w * n_star.orlicz;
      rec.lp += q.w * std::pow(lp_power, 1.0 / p);
      rec.lp_star += q.w * std::pow(lp_of_column(centered, inner, p), 1.0 / p);
      rec.mean_integral += q.w * mean;
      b_power += q.w * lp_power;
    }
    rec.b = std::pow(b_power, 1.0 / p);
    records.push_back(rec);
  }
  return records;
}

Gest2Bound bound_gest2(const PotentialSpec& v, const BoundConstants& consts, NRange range,
                       const QuadratureSpec& quad) {
  consts.validate();
  Gest2Bound out;
  out.warnings = coverage_warnings(v, range);
  for (int n = range.lo; n <= range.hi; ++n) out.g.push_back({n, g_n(v, n, quad)});
  const NRange cells = unit_cells_covering(v);
  for (int n = std::max(range.lo, cells.lo); n <= std::min(range.hi, cells.hi); ++n) {
    out.d.push_back({n, d_n(v, n, quad)});
  }
  boundary_check(out.g, range, "G_n", out.warnings);
  boundary_check(out.d, range, "D_n", out.warnings);
  out.sqrt_part = threshold_sqrt_terms(out.g, consts.c);
  out.cell_part = threshold_linear_terms(out.d, consts.c);
  out.value = 1.0 + consts.C * (out.sqrt_part.sum + out.cell_part.sum);
  return out;
}

Est1Bound bound_est1_1d(std::span<const CellValue> g, double prefactor, double threshold) {
  if (!(prefactor > 0.0) || !(threshold > 0.0)) {
    throw std::invalid_argument("bound_est1_1d: prefactor and threshold must be > 0");
  }
  Est1Bound out;
  out.g.assign(g.begin(), g.end());
  out.sqrt_part = threshold_sqrt_terms(g, threshold);
  out.value = 1.0 + prefactor * out.sqrt_part.sum;
  return out;
}

Est1Bound bound_est1_1d(const Potential1D& w, NRange range, const QuadratureSpec& quad,
                        double prefactor, double threshold) {
  std::vector<CellValue> g;
  for (int n = range.lo; n <= range.hi; ++n) g.push_back({n, g_n_1d(w, n, quad)});
  auto out = bound_est1_1d(g, prefactor, threshold);
  if (!w.support.empty()) {
    const Interval covered{dyadic_interval(range.lo).lo, dyadic_interval(range.hi).hi};
    if (w.support.lo < covered.lo || w.support.hi > covered.hi) {
      out.warnings.push_back("support of W extends beyond the dyadic cells of n_range");
    }
  }
  boundary_check(out.g, range, "G_n", out.warnings);
  return out;
}

BoundVariants bound_variants(const PotentialSpec& v, double p, NRange range,
                             const BoundConstants& consts, const QuadratureSpec& quad) {
  BoundVariants out;
  out.p = p;
  std::vector<double> g;
  for (int n = range.lo; n <= range.hi; ++n) g.push_back(g_n(v, n, quad));
  out.quasinorm = weak_l1_quasinorm(g);

  std::vector<CellValue> d;
  for (const auto& rec : unit_cell_records(v, p, quad)) {
    out.mixed_norm += rec.d;
    out.mixed_norm_star += rec.d_star;
    out.lp_mixed += rec.lp;
    out.lp_mixed_star += rec.lp_star;
    out.mean_integral += rec.mean_integral;
    d.push_back({rec.n, rec.d});
  }
  out.thresholded_cell_sum = threshold_linear_terms(d, consts.c).sum;
  out.rhs_est2 = out.quasinorm + out.mixed_norm;
  out.rhs_est3 = out.quasinorm + out.lp_mixed;
  out.rhs_est4 = out.quasinorm + out.lp_mixed_star;
  out.rhs_est5 = out.quasinorm + out.mixed_norm_star;

  const double slack = 1e-12 * (1.0 + out.mixed_norm);
  out.domination_chain_holds = out.thresholded_cell_sum <= out.mixed_norm + slack;

  out.lp_gap = std::abs(out.lp_mixed - out.lp_mixed_star);
  out.lp_gap_bound = std::pow(v.width(), 1.0 / p) * out.mean_integral;
  out.lp_gap_holds = out.lp_gap <= out.lp_gap_bound * (1.0 + 1e-10) + 1e-12;
  return out;
}

}  // namespace stripbound
