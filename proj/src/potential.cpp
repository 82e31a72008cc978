#include "stripbound/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stripbound {

double profile_value(Profile profile, double x2, double a) {
  switch (profile) {
    case Profile::Constant:
      return 1.0;
    case Profile::Cos2: {
      const double c = std::cos(std::numbers::pi * x2 / a);
      return c * c;
    }
    case Profile::CosOffset:
      return 1.0 + std::cos(std::numbers::pi * x2 / a);
  }
  return 1.0;
}

Profile profile_from_name(const std::string& name) {
  if (name == "constant") return Profile::Constant;
  if (name == "cos2") return Profile::Cos2;
  if (name == "cos_offset") return Profile::CosOffset;
  throw std::invalid_argument("unknown x2 profile '" + name + "'");
}

std::string profile_name(Profile profile) {
  switch (profile) {
    case Profile::Constant:
      return "constant";
    case Profile::Cos2:
      return "cos2";
    case Profile::CosOffset:
      return "cos_offset";
  }
  return "constant";
}

namespace {

void require_width(double width) {
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw std::invalid_argument("strip width must be finite and > 0");
  }
}

void require_nonnegative(double value, const char* what) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw std::domain_error(std::string(what) + " must be finite and >= 0");
  }
}

std::vector<double> merged(std::vector<double> a, const std::vector<double>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

}  // namespace

PotentialSpec::PotentialSpec(double width, Evaluator fn, Interval support,
                             std::vector<double> x1_breaks, std::vector<double> x2_breaks)
    : width_(width),
      fn_(std::make_shared<const Evaluator>(std::move(fn))),
      support_(support),
      x1_breaks_(std::move(x1_breaks)),
      x2_breaks_(std::move(x2_breaks)) {
  require_width(width);
  std::sort(x1_breaks_.begin(), x1_breaks_.end());
  std::sort(x2_breaks_.begin(), x2_breaks_.end());
}

PotentialSpec PotentialSpec::zero(double width) {
  return PotentialSpec(width, [](double, double) { return 0.0; }, {0.0, 0.0}, {}, {});
}

PotentialSpec PotentialSpec::box(double width, double lambda, Interval x1, Interval x2,
                                 Profile profile) {
  require_width(width);
  require_nonnegative(lambda, "box lambda");
  if (x1.empty()) throw std::invalid_argument("box needs x1 with hi > lo");
  const Interval across = x2.empty() ? Interval{0.0, width} : x2;
  if (across.lo < 0.0 || across.hi > width) {
    throw std::invalid_argument("box x2 range must lie inside [0, a]");
  }
  std::vector<double> x2_breaks;
  if (!x2.empty()) x2_breaks = {across.lo, across.hi};
  return PotentialSpec(
      width,
      [=](double s, double t) {
        if (s < x1.lo || s > x1.hi || t < across.lo || t > across.hi) return 0.0;
        return lambda * profile_value(profile, t, width);
      },
      x1, {x1.lo, x1.hi}, std::move(x2_breaks));
}

PotentialSpec PotentialSpec::multibump(double width, const std::vector<BoxTerm>& boxes) {
  require_width(width);
  PotentialSpec total = zero(width);
  for (const auto& b : boxes) {
    require_nonnegative(b.lambda, "multibump lambda");
    if (b.x1.empty()) throw std::invalid_argument("multibump box needs x1 with hi > lo");
    const Interval across = b.x2.empty() ? Interval{0.0, width} : b.x2;
    if (across.lo < 0.0 || across.hi > width) {
      throw std::invalid_argument("multibump x2 range must lie inside [0, a]");
    }
    std::vector<double> x2_breaks;
    if (!b.x2.empty()) x2_breaks = {across.lo, across.hi};
    const double lambda = b.lambda;
    const Interval x1 = b.x1;
    PotentialSpec term(
        width,
        [=](double s, double t) {
          if (s < x1.lo || s > x1.hi || t < across.lo || t > across.hi) return 0.0;
          return lambda;
        },
        x1, {x1.lo, x1.hi}, std::move(x2_breaks));
    total = total.plus(term);
  }
  return total;
}

PotentialSpec PotentialSpec::gaussian(double width, double lambda, double center, double sigma,
                                      Profile profile) {
  require_width(width);
  require_nonnegative(lambda, "gaussian lambda");
  if (!(sigma > 0.0)) throw std::domain_error("gaussian sigma must be > 0");
  const Interval support{center - 6.0 * sigma, center + 6.0 * sigma};
  return PotentialSpec(
      width,
      [=](double s, double t) {
        if (s < support.lo || s > support.hi) return 0.0;
        const double z = (s - center) / sigma;
        return lambda * std::exp(-z * z) * profile_value(profile, t, width);
      },
      support, {support.lo, support.hi}, {});
}

PotentialSpec PotentialSpec::power_tail(double width, double lambda, double beta, double cutoff,
                                        Profile profile) {
  require_width(width);
  require_nonnegative(lambda, "power_tail lambda");
  require_nonnegative(beta, "power_tail beta");
  if (!(cutoff > 0.0)) throw std::domain_error("power_tail cutoff must be > 0");
  const Interval support{-cutoff, cutoff};
  return PotentialSpec(
      width,
      [=](double s, double t) {
        if (s < -cutoff || s > cutoff) return 0.0;
        return lambda * std::pow(1.0 + std::abs(s), -beta) * profile_value(profile, t, width);
      },
      support, {-cutoff, 0.0, cutoff}, {});
}

PotentialSpec PotentialSpec::from_lattice(double width, std::vector<double> x1_nodes,
                                          std::vector<double> x2_nodes,
                                          std::vector<double> values) {
  require_width(width);
  if (x1_nodes.size() < 2 || x2_nodes.size() < 2) {
    throw std::invalid_argument("lattice needs at least 2 nodes per axis");
  }
  if (values.size() != x1_nodes.size() * x2_nodes.size()) {
    throw std::invalid_argument("lattice value count does not match the node counts");
  }
  if (!std::is_sorted(x1_nodes.begin(), x1_nodes.end()) ||
      !std::is_sorted(x2_nodes.begin(), x2_nodes.end()) ||
      std::adjacent_find(x1_nodes.begin(), x1_nodes.end()) != x1_nodes.end() ||
      std::adjacent_find(x2_nodes.begin(), x2_nodes.end()) != x2_nodes.end()) {
    throw std::invalid_argument("lattice nodes must be strictly increasing");
  }
  if (x2_nodes.front() < 0.0 || x2_nodes.back() > width) {
    throw std::invalid_argument("lattice x2 nodes must lie inside [0, a]");
  }
  for (double v : values) require_nonnegative(v, "lattice potential value");

  const Interval support{x1_nodes.front(), x1_nodes.back()};
  auto xs = std::make_shared<const std::vector<double>>(x1_nodes);
  auto ys = std::make_shared<const std::vector<double>>(x2_nodes);
  auto vs = std::make_shared<const std::vector<double>>(std::move(values));
  const auto locate = [](const std::vector<double>& nodes, double x) {
    auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
    std::size_t i = static_cast<std::size_t>(std::distance(nodes.begin(), it));
    i = std::clamp<std::size_t>(i, 1, nodes.size() - 1) - 1;
    return i;
  };
  return PotentialSpec(
      width,
      [=](double s, double t) {
        const auto& x = *xs;
        const auto& y = *ys;
        if (s < x.front() || s > x.back() || t < y.front() || t > y.back()) return 0.0;
        const std::size_t i = locate(x, s);
        const std::size_t j = locate(y, t);
        const double u = (s - x[i]) / (x[i + 1] - x[i]);
        const double w = (t - y[j]) / (y[j + 1] - y[j]);
        const std::size_t ny = y.size();
        const auto& v = *vs;
        return (1 - u) * (1 - w) * v[i * ny + j] + u * (1 - w) * v[(i + 1) * ny + j] +
               (1 - u) * w * v[i * ny + j + 1] + u * w * v[(i + 1) * ny + j + 1];
      },
      support, std::move(x1_nodes), std::move(x2_nodes));
}

double PotentialSpec::operator()(double x1, double x2) const {
  if (support_.empty() || x1 < support_.lo || x1 > support_.hi) return 0.0;
  return (*fn_)(x1, x2);
}

double PotentialSpec::support_radius() const {
  if (support_.empty()) return 0.0;
  return std::max(std::abs(support_.lo), std::abs(support_.hi));
}

PotentialSpec PotentialSpec::scaled(double factor) const {
  auto fn = fn_;
  return PotentialSpec(
      width_, [fn, factor](double s, double t) { return factor * (*fn)(s, t); }, support_,
      x1_breaks_, x2_breaks_);
}

PotentialSpec PotentialSpec::plus(const PotentialSpec& other) const {
  if (other.width_ != width_) {
    throw std::invalid_argument("cannot add potentials on strips of different width");
  }
  if (other.is_zero()) return *this;
  if (is_zero()) return other;
  const Interval hull{std::min(support_.lo, other.support_.lo),
                      std::max(support_.hi, other.support_.hi)};
  auto lhs = *this;
  auto rhs = other;
  return PotentialSpec(
      width_, [lhs, rhs](double s, double t) { return lhs(s, t) + rhs(s, t); }, hull,
      merged(x1_breaks_, other.x1_breaks_), merged(x2_breaks_, other.x2_breaks_));
}

Potential1D Potential1D::zero() {
  return {[](double) { return 0.0; }, {0.0, 0.0}, {}};
}

Potential1D Potential1D::scaled(double factor) const {
  auto inner = fn;
  return {[inner, factor](double x) { return factor * inner(x); }, support, breakpoints};
}

std::vector<QuadNode> transverse_nodes(const PotentialSpec& v, const QuadratureSpec& quad) {
  return midpoint_rule_total({0.0, v.width()}, v.x2_breakpoints(), quad.inner_panels);
}

ReducedPotential reduced_potential(const PotentialSpec& v, const QuadratureSpec& quad) {
  const double a = v.width();
  auto nodes = std::make_shared<const std::vector<QuadNode>>(transverse_nodes(v, quad));
  auto mean_fn = [v, nodes, a](double x1) {
    double sum = 0.0;
    for (const auto& q : *nodes) sum += v(x1, q.x) * q.w;
    return sum / a;
  };
  Potential1D mean{mean_fn, v.support(), v.x1_breakpoints()};
  if (v.is_zero()) {
    return {Potential1D::zero(), PotentialSpec::zero(a)};
  }
  PotentialSpec remainder(
      a, [v, mean_fn](double s, double t) { return v(s, t) - mean_fn(s); }, v.support(),
      v.x1_breakpoints(), v.x2_breakpoints());
  return {std::move(mean), std::move(remainder)};
}

}  // namespace stripbound
