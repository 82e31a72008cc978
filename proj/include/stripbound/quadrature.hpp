#pragma once

#include <span>
#include <vector>

namespace stripbound {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool empty() const { return !(hi > lo); }
  bool contains(double x) const { return x >= lo && x <= hi; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Intersection; empty (lo == hi) when the intervals do not overlap.
Interval intersect(Interval a, Interval b);

struct QuadNode {
  double x;
  double w;
};

/// Panel counts for the composite midpoint rules.
struct QuadratureSpec {
  int inner_panels = 256;            // across the strip width (0, a)
  int outer_panels_per_unit = 256;   // along x1
  int min_outer_panels = 8;          // per breakpoint-free piece
  int max_outer_panels = 4096;       // per breakpoint-free piece
};

/// Composite midpoint rule on `range`, split at every breakpoint strictly
/// inside it. Each piece gets clamp(ceil(len * per_unit), min, max) panels.
std::vector<QuadNode> midpoint_rule(Interval range, std::span<const double> breakpoints,
                                    int per_unit, int min_panels, int max_panels);

/// Composite midpoint rule with `total_panels` distributed over the
/// breakpoint-free pieces in proportion to their length (at least one each).
std::vector<QuadNode> midpoint_rule_total(Interval range, std::span<const double> breakpoints,
                                          int total_panels);

}  // namespace stripbound
