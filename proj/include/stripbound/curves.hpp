#pragma once

#include <string>
#include <vector>

#include "stripbound/dyadic.hpp"
#include "stripbound/strip_solver.hpp"

namespace stripbound {

struct CurvePoint {
  double x1 = 0.0;
  double x2 = 0.0;
};

/// Polyline in the closed strip R x [0, a] carrying a line density V >= 0,
/// given at the vertices and linear in arc length along each segment, or
/// constant per segment when `segment_density` is set.
struct CurveSpec {
  double a = 1.0;
  std::vector<CurvePoint> vertices;
  std::vector<double> density;          // one value per vertex
  std::vector<double> segment_density;  // one value per segment; overrides `density`

  /// Throws std::invalid_argument for fewer than two vertices, repeated
  /// consecutive vertices, vertices outside 0 <= x2 <= a, negative or
  /// non-finite densities, or a self-intersecting polyline.
  void validate() const;

  std::size_t segments() const { return vertices.empty() ? 0 : vertices.size() - 1; }
  Interval x1_extent() const;
  double length() const;
  CurveSpec scaled(double factor) const;
};

/// nu(I) = int over the part of the curve with x1 in I of V ds. Slanted
/// pieces are clipped exactly; a vertical segment at x1 counts when
/// I.lo <= x1 < I.hi, so nu is additive over adjacent intervals.
double arc_measure_nu(const CurveSpec& curve, Interval i);

struct SigmaPoint {
  double x1 = 0.0;
  double length = 0.0;  // |gamma_k|
  double mass = 0.0;    // c_k = int_{gamma_k} V dx2
};

/// Abscissae of vertical segments of positive length. All vertical pieces at
/// the same x1 are merged into one point. Only exactly vertical segments
/// count; a slope of 1e6 is still a graph.
std::vector<SigmaPoint> detect_sigma(const CurveSpec& curve);

/// F_n = int_{I_n} |x1| d nu (unweighted for n = 0); the cells are
/// half-open as in dyadic_index_of.
double f_n(const CurveSpec& curve, int n);

/// Same with the vertical segments left out.
double f_n_continuous(const CurveSpec& curve, int n);

struct CellNorm {
  double value = 0.0;
  double length = 0.0;  // |l_n|
  bool degenerate = false;  // |l_n| = 0 with positive density
};

/// C_n: averaged B-norm of V over l_n = curve cut to n <= x1 < n + 1, with the
/// arc-length measure.
CellNorm c_n(const CurveSpec& curve, int n, const QuadratureSpec& quad = {});

/// Integer cells meeting the curve.
NRange curve_unit_cells(const CurveSpec& curve);

struct Gest3Bound {
  double value = 1.0;
  int sigma_count = 0;       // N
  ThresholdSum sqrt_part;    // sum_{F_n > c1} sqrt(F_n)
  ThresholdSum cell_part;    // sum_{C_n > c2} C_n
  std::vector<CellValue> f;
  std::vector<CellValue> c;
  std::vector<std::string> warnings;
};

/// 1 + N + curve_sqrt_const sum sqrt(F_n) + curve_cell_const sum C_n.
Gest3Bound bound_gest3(const CurveSpec& curve, const BoundConstants& consts, NRange range,
                       const QuadratureSpec& quad = {});

/// Strip stiffness minus scale * int_curve V |u|^2 ds, the trace taken by
/// bilinear interpolation. Throws std::invalid_argument when the curve
/// leaves [-L, L] x [0, a] or the widths differ.
StripProblem assemble_curve_form(const CurveSpec& curve, const StripGrid& grid,
                                 double scale = 1.0);

/// Counts of the split of the curve problem. The line pieces come from the
/// exact restriction of the discrete 2V form to x2-constant functions:
///   a K - 2 M_nu - 2 M_sigma,
/// where M_nu is the slanted part and M_sigma the vertical part (rank <= N).
struct CurveSplitCounts {
  int full = 0;            // N_-(q_{V,l})
  int n1 = 0;              // line part with 2V
  int n2 = 0;              // mean-zero part with 2V
  int n1_continuous = 0;   // line part without the verticals
  int n1_sigma = 0;        // verticals alone, intensities 2 c_k / a
  int sigma_count = 0;     // N
  bool split_holds = true;    // full <= n1 + n2
  bool rank_bound_holds = true;   // n1 <= n1_continuous + N
  bool literal_sum_holds = true;  // n1 <= n1_continuous + n1_sigma
  bool sigma_bound_holds = true;  // n1_sigma <= N
};

CurveSplitCounts curve_split_counts(const CurveSpec& curve, const StripGrid& grid);

/// Estimate for the slanted line part with the explicit measure constant:
/// the line form sees the measure (2 / a) nu off Sigma, so
///   bound = 1 + measure_const sum_{G_n > threshold} sqrt(G_n),
///   G_n = (2 / a) F_n (continuous part).
Est1Bound bound_measure_1d(const CurveSpec& curve, NRange range, double prefactor = 7.16,
                           double threshold = 0.046);

}  // namespace stripbound
