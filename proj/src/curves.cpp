#include "stripbound/curves.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace stripbound {

namespace {

double cross(CurvePoint o, CurvePoint p, CurvePoint q) {
  return (p.x1 - o.x1) * (q.x2 - o.x2) - (p.x2 - o.x2) * (q.x1 - o.x1);
}

bool on_segment(CurvePoint p, CurvePoint q, CurvePoint r) {
  return std::min(p.x1, q.x1) <= r.x1 && r.x1 <= std::max(p.x1, q.x1) &&
         std::min(p.x2, q.x2) <= r.x2 && r.x2 <= std::max(p.x2, q.x2);
}

bool segments_meet(CurvePoint p1, CurvePoint p2, CurvePoint q1, CurvePoint q2) {
  const double d1 = cross(q1, q2, p1);
  const double d2 = cross(q1, q2, p2);
  const double d3 = cross(p1, p2, q1);
  const double d4 = cross(p1, p2, q2);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  if (d1 == 0 && on_segment(q1, q2, p1)) return true;
  if (d2 == 0 && on_segment(q1, q2, p2)) return true;
  if (d3 == 0 && on_segment(p1, p2, q1)) return true;
  if (d4 == 0 && on_segment(p1, p2, q2)) return true;
  return false;
}

struct Segment {
  CurvePoint p;
  CurvePoint q;
  double vp;
  double vq;

  double dx() const { return q.x1 - p.x1; }
  double length() const { return std::hypot(q.x1 - p.x1, q.x2 - p.x2); }
  bool vertical() const { return q.x1 == p.x1; }
  double density(double t) const { return vp + t * (vq - vp); }
  CurvePoint at(double t) const { return {p.x1 + t * (q.x1 - p.x1), p.x2 + t * (q.x2 - p.x2)}; }
};

Segment segment(const CurveSpec& c, std::size_t k) {
  if (!c.segment_density.empty()) {
    return {c.vertices[k], c.vertices[k + 1], c.segment_density[k], c.segment_density[k]};
  }
  return {c.vertices[k], c.vertices[k + 1], c.density[k], c.density[k + 1]};
}

/// Parameter range of the part of a slanted segment with x1 in [lo, hi].
bool clip(const Segment& s, double lo, double hi, double& t0, double& t1) {
  double a = (lo - s.p.x1) / s.dx();
  double b = (hi - s.p.x1) / s.dx();
  if (a > b) std::swap(a, b);
  t0 = std::max(0.0, a);
  t1 = std::min(1.0, b);
  return t1 > t0;
}

/// int over the segment part with x1 in [lo, hi] of weight(x1) V ds, where
/// weight is 1 or |x1| (sign-definite there). The integrand is at most
/// quadratic in t, so Simpson's rule is exact.
double slanted_integral(const Segment& s, double lo, double hi, bool weighted) {
  double t0 = 0.0;
  double t1 = 0.0;
  if (!clip(s, lo, hi, t0, t1)) return 0.0;
  const auto g = [&](double t) {
    const double w = weighted ? std::abs(s.at(t).x1) : 1.0;
    return w * s.density(t);
  };
  const double tm = 0.5 * (t0 + t1);
  return s.length() * (t1 - t0) * (g(t0) + 4.0 * g(tm) + g(t1)) / 6.0;
}

double vertical_mass(const Segment& s) { return s.length() * 0.5 * (s.vp + s.vq); }

bool in_half_open(double x, Interval i) { return x >= i.lo && x < i.hi; }

double cell_integral(const CurveSpec& curve, int n, bool include_vertical) {
  curve.validate();
  const Interval cell = dyadic_interval(n);
  const bool weighted = n != 0;
  double sum = 0.0;
  for (std::size_t k = 0; k < curve.segments(); ++k) {
    const Segment s = segment(curve, k);
    if (s.vertical()) {
      if (include_vertical && dyadic_index_of(s.p.x1) == n) {
        sum += (weighted ? std::abs(s.p.x1) : 1.0) * vertical_mass(s);
      }
    } else {
      sum += slanted_integral(s, cell.lo, cell.hi, weighted);
    }
  }
  return sum;
}

enum class Pieces { All, Slanted, Vertical };

/// Lumped trace mass int_curve V |u|^2 ds with bilinear interpolation of u.
SparseMatrix curve_mass(const CurveSpec& curve, const StripGrid& grid, Pieces pieces) {
  const double h1 = grid.h1();
  const double h2 = grid.h2();
  const double step = 0.25 * std::min(h1, h2);
  const double g = 0.5 / std::sqrt(3.0);
  std::vector<Eigen::Triplet<double>> t;
  for (std::size_t k = 0; k < curve.segments(); ++k) {
    const Segment s = segment(curve, k);
    if (pieces == Pieces::Slanted && s.vertical()) continue;
    if (pieces == Pieces::Vertical && !s.vertical()) continue;
    const int m = std::max(1, static_cast<int>(std::ceil(s.length() / step)));
    const double w = 0.5 * s.length() / m;
    for (int piece = 0; piece < m; ++piece) {
      for (double offset : {0.5 - g, 0.5 + g}) {
        const double tt = (piece + offset) / m;
        const double v = s.density(tt);
        if (v == 0.0) continue;
        const CurvePoint x = s.at(tt);
        const double u1 = (x.x1 + grid.L) / h1;
        const double u2 = x.x2 / h2;
        const int i = std::clamp(static_cast<int>(std::floor(u1)), 0, grid.nx - 1);
        const int j = std::clamp(static_cast<int>(std::floor(u2)), 0, grid.ny - 1);
        const double s1 = u1 - i;
        const double s2 = u2 - j;
        const int idx[4] = {grid.index(i, j), grid.index(i + 1, j), grid.index(i, j + 1),
                            grid.index(i + 1, j + 1)};
        const double b[4] = {(1 - s1) * (1 - s2), s1 * (1 - s2), (1 - s1) * s2, s1 * s2};
        for (int p = 0; p < 4; ++p) {
          for (int q = 0; q < 4; ++q) {
            const double c = w * v * b[p] * b[q];
            if (c != 0.0) t.emplace_back(idx[p], idx[q], c);
          }
        }
      }
    }
  }
  SparseMatrix mass(grid.size(), grid.size());
  mass.setFromTriplets(t.begin(), t.end());
  return mass;
}

void check_window(const CurveSpec& curve, const StripGrid& grid) {
  curve.validate();
  grid.validate();
  if (std::abs(curve.a - grid.a) > 1e-12 * grid.a) {
    throw std::invalid_argument("curve and grid have different widths");
  }
  const Interval ext = curve.x1_extent();
  if (ext.lo < -grid.L || ext.hi > grid.L) {
    std::ostringstream msg;
    msg << "curve leaves the truncation window [" << -grid.L << ", " << grid.L << "]";
    throw std::invalid_argument(msg.str());
  }
}

/// Restriction of a strip matrix to x2-constant functions.
SparseMatrix restrict_to_columns(const SparseMatrix& a, const StripGrid& grid) {
  std::vector<Eigen::Triplet<double>> t;
  for (int i = 0; i < grid.rows(); ++i) {
    for (int j = 0; j < grid.cols(); ++j) t.emplace_back(grid.index(i, j), i, 1.0);
  }
  SparseMatrix p(grid.size(), grid.rows());
  p.setFromTriplets(t.begin(), t.end());
  SparseMatrix r = SparseMatrix(p.transpose()) * a * p;
  r.makeCompressed();
  return r;
}

}  // namespace

void CurveSpec::validate() const {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("curve: a must be > 0");
  if (vertices.size() < 2) throw std::invalid_argument("curve: need at least two vertices");
  if (segment_density.empty() && density.size() != vertices.size()) {
    throw std::invalid_argument("curve: need one density value per vertex");
  }
  if (!segment_density.empty() && segment_density.size() + 1 != vertices.size()) {
    throw std::invalid_argument("curve: need one segment_density value per segment");
  }
  if (!segment_density.empty() && !density.empty()) {
    throw std::invalid_argument("curve: give density or segment_density, not both");
  }
  for (double d : segment_density) {
    if (!(d >= 0.0) || !std::isfinite(d)) {
      throw std::invalid_argument("curve: density must be finite and >= 0");
    }
  }
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    const auto& v = vertices[k];
    if (!std::isfinite(v.x1) || !std::isfinite(v.x2)) {
      throw std::invalid_argument("curve: vertex not finite");
    }
    if (v.x2 < 0.0 || v.x2 > a) throw std::invalid_argument("curve: vertex outside 0 <= x2 <= a");
    if (!density.empty() && (!(density[k] >= 0.0) || !std::isfinite(density[k]))) {
      throw std::invalid_argument("curve: density must be finite and >= 0");
    }
    if (k > 0 && v.x1 == vertices[k - 1].x1 && v.x2 == vertices[k - 1].x2) {
      throw std::invalid_argument("curve: repeated consecutive vertex");
    }
  }
  const std::size_t s = vertices.size() - 1;
  for (std::size_t i = 0; i + 1 < s; ++i) {
    // Adjacent segments may only share their common vertex.
    const CurvePoint p = vertices[i];
    const CurvePoint q = vertices[i + 1];
    const CurvePoint r = vertices[i + 2];
    if (cross(p, q, r) == 0.0) {
      const double dot = (q.x1 - p.x1) * (r.x1 - q.x1) + (q.x2 - p.x2) * (r.x2 - q.x2);
      if (dot < 0.0) throw std::invalid_argument("curve: polyline folds back on itself");
    }
    for (std::size_t j = i + 2; j < s; ++j) {
      if (segments_meet(vertices[i], vertices[i + 1], vertices[j], vertices[j + 1])) {
        throw std::invalid_argument("curve: polyline intersects itself");
      }
    }
  }
}

Interval CurveSpec::x1_extent() const {
  Interval e{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& v : vertices) {
    e.lo = std::min(e.lo, v.x1);
    e.hi = std::max(e.hi, v.x1);
  }
  return e;
}

double CurveSpec::length() const {
  double l = 0.0;
  for (std::size_t k = 0; k < segments(); ++k) {
    l += std::hypot(vertices[k + 1].x1 - vertices[k].x1, vertices[k + 1].x2 - vertices[k].x2);
  }
  return l;
}

CurveSpec CurveSpec::scaled(double factor) const {
  CurveSpec c = *this;
  for (double& d : c.density) d *= factor;
  for (double& d : c.segment_density) d *= factor;
  return c;
}

double arc_measure_nu(const CurveSpec& curve, Interval i) {
  curve.validate();
  if (i.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t k = 0; k < curve.segments(); ++k) {
    const Segment s = segment(curve, k);
    if (s.vertical()) {
      if (in_half_open(s.p.x1, i)) sum += vertical_mass(s);
    } else {
      sum += slanted_integral(s, i.lo, i.hi, false);
    }
  }
  return sum;
}

std::vector<SigmaPoint> detect_sigma(const CurveSpec& curve) {
  curve.validate();
  std::map<double, SigmaPoint> merged;
  for (std::size_t k = 0; k < curve.segments(); ++k) {
    const Segment s = segment(curve, k);
    if (!s.vertical()) continue;
    auto& p = merged[s.p.x1];
    p.x1 = s.p.x1;
    p.length += s.length();
    p.mass += vertical_mass(s);
  }
  std::vector<SigmaPoint> out;
  for (const auto& [x, p] : merged) out.push_back(p);
  return out;
}

double f_n(const CurveSpec& curve, int n) { return cell_integral(curve, n, true); }

double f_n_continuous(const CurveSpec& curve, int n) { return cell_integral(curve, n, false); }

CellNorm c_n(const CurveSpec& curve, int n, const QuadratureSpec& quad) {
  curve.validate();
  const Interval cell{static_cast<double>(n), static_cast<double>(n) + 1.0};
  std::vector<Atom> atoms;
  CellNorm out;
  const auto add_piece = [&](const Segment& s, double t0, double t1) {
    const double len = s.length() * (t1 - t0);
    const int panels = std::clamp(static_cast<int>(std::ceil(len * quad.outer_panels_per_unit)),
                                  quad.min_outer_panels, quad.max_outer_panels);
    const double dt = (t1 - t0) / panels;
    for (int p = 0; p < panels; ++p) {
      atoms.push_back({s.density(t0 + (p + 0.5) * dt), len / panels});
    }
    out.length += len;
  };
  bool touches = false;
  for (std::size_t k = 0; k < curve.segments(); ++k) {
    const Segment s = segment(curve, k);
    if (s.vertical()) {
      if (in_half_open(s.p.x1, cell)) add_piece(s, 0.0, 1.0);
      continue;
    }
    double t0 = 0.0;
    double t1 = 0.0;
    if (clip(s, cell.lo, cell.hi, t0, t1)) {
      add_piece(s, t0, t1);
    } else if (std::min(s.p.x1, s.q.x1) <= cell.hi && std::max(s.p.x1, s.q.x1) >= cell.lo) {
      touches = touches || s.vp > 0.0 || s.vq > 0.0;
    }
  }
  if (atoms.empty()) {
    out.degenerate = touches;
    return out;
  }
  out.value = average_orlicz_norm(MeasuredFunction(std::move(atoms)), NFunction::llogl());
  return out;
}

NRange curve_unit_cells(const CurveSpec& curve) {
  const Interval e = curve.x1_extent();
  return {static_cast<int>(std::floor(e.lo)), static_cast<int>(std::floor(e.hi))};
}

Gest3Bound bound_gest3(const CurveSpec& curve, const BoundConstants& consts, NRange range,
                       const QuadratureSpec& quad) {
  consts.validate();
  curve.validate();
  Gest3Bound out;
  out.sigma_count = static_cast<int>(detect_sigma(curve).size());
  double total = 0.0;
  for (int n = range.lo; n <= range.hi; ++n) {
    const double f = f_n(curve, n);
    out.f.push_back({n, f});
    total += f;
  }
  const Interval covered{dyadic_interval(range.lo).lo, dyadic_interval(range.hi).hi};
  const Interval e = curve.x1_extent();
  if (e.lo < covered.lo || e.hi >= covered.hi) {
    out.warnings.push_back("curve extends beyond the dyadic cells of n_range; F_n truncated");
  }
  if (total > 0.0 && !out.f.empty()) {
    const double edge = std::max(out.f.front().value, out.f.back().value);
    if (edge > 1e-6 * total) {
      out.warnings.push_back("boundary cells of n_range carry more than 1e-6 of sum F_n");
    }
  }
  const NRange cells = curve_unit_cells(curve);
  for (int n = cells.lo; n <= cells.hi; ++n) {
    const CellNorm c = c_n(curve, n, quad);
    if (c.degenerate) {
      std::ostringstream msg;
      msg << "C_" << n << ": curve meets the cell in a set of zero length";
      out.warnings.push_back(msg.str());
    }
    out.c.push_back({n, c.value});
  }
  out.sqrt_part = threshold_sqrt_terms(out.f, consts.c1);
  out.cell_part = threshold_linear_terms(out.c, consts.c2);
  out.value = 1.0 + out.sigma_count + consts.curve_sqrt_const * out.sqrt_part.sum +
              consts.curve_cell_const * out.cell_part.sum;
  return out;
}

StripProblem assemble_curve_form(const CurveSpec& curve, const StripGrid& grid, double scale) {
  check_window(curve, grid);
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw std::invalid_argument("assemble_curve_form: scale must be finite and > 0");
  }
  StripProblem out{grid, assemble_stiffness(grid), Eigen::VectorXd(grid.size())};
  const double cell = grid.h1() * grid.h2();
  for (int i = 0; i < grid.rows(); ++i) {
    for (int j = 0; j < grid.cols(); ++j) {
      const double wi = (i == 0 || i == grid.nx) ? 0.5 : 1.0;
      const double wj = (j == 0 || j == grid.ny) ? 0.5 : 1.0;
      out.mass[grid.index(i, j)] = wi * wj * cell;
    }
  }
  out.matrix -= scale * curve_mass(curve, grid, Pieces::All);
  out.matrix.makeCompressed();
  return out;
}

CurveSplitCounts curve_split_counts(const CurveSpec& curve, const StripGrid& grid) {
  check_window(curve, grid);
  CurveSplitCounts out;
  out.sigma_count = static_cast<int>(detect_sigma(curve).size());
  const SparseMatrix k = assemble_stiffness(grid);
  const SparseMatrix slanted = curve_mass(curve, grid, Pieces::Slanted);
  const SparseMatrix vertical = curve_mass(curve, grid, Pieces::Vertical);

  const SparseMatrix single = k - (slanted + vertical);
  out.full = count_negative_sparse(single).negative;

  const StripProblem doubled{grid, k - 2.0 * (slanted + vertical), Eigen::VectorXd()};
  out.n2 = count_negative_sparse(restrict_to_mean_zero(doubled)).negative;
  out.n1 = count_negative_sparse(restrict_to_columns(doubled.matrix, grid)).negative;
  out.n1_continuous =
      count_negative_sparse(restrict_to_columns(k - 2.0 * slanted, grid)).negative;
  out.n1_sigma = count_negative_sparse(restrict_to_columns(k - 2.0 * vertical, grid)).negative;

  out.split_holds = out.full <= out.n1 + out.n2;
  out.rank_bound_holds = out.n1 <= out.n1_continuous + out.sigma_count;
  out.literal_sum_holds = out.n1 <= out.n1_continuous + out.n1_sigma;
  out.sigma_bound_holds = out.n1_sigma <= out.sigma_count;
  return out;
}

Est1Bound bound_measure_1d(const CurveSpec& curve, NRange range, double prefactor,
                           double threshold) {
  std::vector<CellValue> g;
  for (int n = range.lo; n <= range.hi; ++n) {
    g.push_back({n, 2.0 / curve.a * f_n_continuous(curve, n)});
  }
  return bound_est1_1d(g, prefactor, threshold);
}

}  // namespace stripbound
