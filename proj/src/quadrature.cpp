#include "stripbound/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stripbound {

Interval intersect(Interval a, Interval b) {
  const double lo = std::max(a.lo, b.lo);
  const double hi = std::min(a.hi, b.hi);
  if (hi <= lo) return {lo, lo};
  return {lo, hi};
}

namespace {

std::vector<double> split_points(Interval range, std::span<const double> breakpoints) {
  std::vector<double> cuts{range.lo};
  for (double b : breakpoints) {
    if (b > range.lo && b < range.hi) cuts.push_back(b);
  }
  cuts.push_back(range.hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

void append_panels(std::vector<QuadNode>& out, double lo, double hi, int panels) {
  const double h = (hi - lo) / panels;
  for (int k = 0; k < panels; ++k) {
    out.push_back({lo + (k + 0.5) * h, h});
  }
}

}  // namespace

std::vector<QuadNode> midpoint_rule(Interval range, std::span<const double> breakpoints,
                                    int per_unit, int min_panels, int max_panels) {
  if (per_unit < 1 || min_panels < 1 || max_panels < min_panels) {
    throw std::invalid_argument("midpoint_rule: bad panel counts");
  }
  std::vector<QuadNode> out;
  if (range.empty()) return out;
  const auto cuts = split_points(range, breakpoints);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double len = cuts[i + 1] - cuts[i];
    const double want = std::ceil(len * per_unit);
    const int panels = static_cast<int>(std::clamp<double>(want, min_panels, max_panels));
    append_panels(out, cuts[i], cuts[i + 1], panels);
  }
  return out;
}

std::vector<QuadNode> midpoint_rule_total(Interval range, std::span<const double> breakpoints,
                                          int total_panels) {
  if (total_panels < 1) {
    throw std::invalid_argument("midpoint_rule_total: total_panels must be >= 1");
  }
  std::vector<QuadNode> out;
  if (range.empty()) return out;
  const auto cuts = split_points(range, breakpoints);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double len = cuts[i + 1] - cuts[i];
    const int panels =
        std::max(1, static_cast<int>(std::lround(total_panels * len / range.length())));
    append_panels(out, cuts[i], cuts[i + 1], panels);
  }
  return out;
}

}  // namespace stripbound
