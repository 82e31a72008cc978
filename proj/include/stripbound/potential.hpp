#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "stripbound/quadrature.hpp"

namespace stripbound {

/// Dependence of a catalog potential on the transverse variable x2 in (0, a).
enum class Profile {
  Constant,   // 1
  Cos2,       // cos^2(pi x2 / a), mean 1/2
  CosOffset,  // 1 + cos(pi x2 / a), mean 1
};

double profile_value(Profile profile, double x2, double a);
Profile profile_from_name(const std::string& name);
std::string profile_name(Profile profile);

struct BoxTerm {
  double lambda = 0.0;
  Interval x1;
  /// Transverse extent; an empty interval means the whole width (0, a).
  Interval x2;
};

/// A potential on the strip R x (0, a). Values may be signed (the mean-zero
/// remainder V_* is one); operations that need V >= 0 check samples.
///
/// Outside `support()` (an x1 interval) the potential vanishes identically.
/// `x1_breakpoints()` and `x2_breakpoints()` list the lines where the
/// potential or its derivative jumps; quadrature splits there.
class PotentialSpec {
 public:
  using Evaluator = std::function<double(double, double)>;

  PotentialSpec(double width, Evaluator fn, Interval support, std::vector<double> x1_breaks,
                std::vector<double> x2_breaks);

  static PotentialSpec zero(double width);
  static PotentialSpec box(double width, double lambda, Interval x1, Interval x2 = {},
                           Profile profile = Profile::Constant);
  static PotentialSpec multibump(double width, const std::vector<BoxTerm>& boxes);
  /// lambda exp(-((x1 - center) / sigma)^2) profile(x2), cut to zero past 6 sigma.
  static PotentialSpec gaussian(double width, double lambda, double center, double sigma,
                                Profile profile = Profile::Constant);
  /// lambda (1 + |x1|)^(-beta) profile(x2) on |x1| <= cutoff.
  static PotentialSpec power_tail(double width, double lambda, double beta, double cutoff,
                                  Profile profile = Profile::Constant);
  /// Bilinear interpolation of values on a rectangular lattice, zero outside.
  /// values[i * x2_nodes.size() + j] = V(x1_nodes[i], x2_nodes[j]).
  static PotentialSpec from_lattice(double width, std::vector<double> x1_nodes,
                                    std::vector<double> x2_nodes, std::vector<double> values);

  double operator()(double x1, double x2) const;
  double width() const { return width_; }
  Interval support() const { return support_; }
  /// max(|support.lo|, |support.hi|); 0 for the zero potential.
  double support_radius() const;
  const std::vector<double>& x1_breakpoints() const { return x1_breaks_; }
  const std::vector<double>& x2_breakpoints() const { return x2_breaks_; }
  bool is_zero() const { return support_.empty(); }

  PotentialSpec scaled(double factor) const;
  PotentialSpec plus(const PotentialSpec& other) const;

 private:
  double width_;
  std::shared_ptr<const Evaluator> fn_;
  Interval support_;
  std::vector<double> x1_breaks_;
  std::vector<double> x2_breaks_;
};

/// A function of x1 alone (the reduced potential, or a line potential).
struct Potential1D {
  std::function<double(double)> fn;
  Interval support;
  std::vector<double> breakpoints;

  double operator()(double x) const { return support.contains(x) ? fn(x) : 0.0; }
  static Potential1D zero();
  Potential1D scaled(double factor) const;
};

/// Transverse midpoint nodes over (0, a), split at the potential's x2 breakpoints.
std::vector<QuadNode> transverse_nodes(const PotentialSpec& v, const QuadratureSpec& quad);

/// Result of splitting V into its x2-average and the mean-zero remainder.
struct ReducedPotential {
  Potential1D mean;        // V~(x1) = (1/a) int_0^a V(x1, x2) dx2
  PotentialSpec remainder;  // V_*(x) = V(x) - V~(x1), integrates to 0 in x2
};

ReducedPotential reduced_potential(const PotentialSpec& v, const QuadratureSpec& quad = {});

}  // namespace stripbound
