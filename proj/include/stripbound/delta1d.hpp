#pragma once

#include <string>
#include <vector>

#include "stripbound/inertia.hpp"

namespace stripbound {

/// Finite family of attractive point interactions on [-L, L]:
///   q[w] = int |w'|^2 - sum_k alpha_k |w(x_k)|^2,  Neumann ends.
struct DeltaConfig {
  std::vector<double> points;       // strictly increasing
  std::vector<double> intensities;  // alpha_k > 0
  double L = 40.0;
  double h = 1e-3;

  /// Throws std::invalid_argument unless the points increase strictly, every
  /// alpha_k is finite and > 0, and every point lies at least 10 h inside
  /// (-L, L).
  void validate() const;
};

/// Tridiagonal form matrix of the discretised q with its lumped mass.
struct DeltaForm {
  double L = 0.0;
  double h = 0.0;  // actual mesh size 2L / panels
  int panels = 0;
  std::vector<double> diag;
  std::vector<double> off;
  std::vector<double> mass;
  std::vector<int> nodes;           // node i(k) of x_k
  std::vector<double> snap_errors;  // |x_k - node(i(k))|
  std::vector<std::string> warnings;

  double node(int i) const { return -L + i * h; }
  SparseMatrix to_sparse() const;
};

/// Stiffness sum (w_{i+1} - w_i)^2 / h minus alpha_k at the node nearest to
/// x_k. Throws std::invalid_argument when two points land on the same node.
DeltaForm assemble_delta_form(const DeltaConfig& config);

int count_negative_delta(const DeltaConfig& config);
int count_negative(const DeltaForm& form);

/// Lowest eigenvalue of the pencil (form, lumped mass), by Sturm bisection.
double lowest_eigenvalue(const DeltaForm& form);

/// Smooth cut-off: psi = 1 on |t| <= 1/2, psi = 0 on |t| >= 1, built from
/// f(x) = exp(-1/x) as f(1 - |t|) / (f(1 - |t|) + f(|t| - 1/2)).
struct BumpFunction {
  static double profile(double t);
  static double derivative(double t);
  /// int |psi'|^2 dt, computed once.
  static double dirichlet_energy();
};

struct SpacingCertificate {
  int k = 0;               // 1-based index
  double x = 0.0;          // x_k
  double gap = 0.0;        // x_k - x_{k-1}
  double analytic = 0.0;   // (2 / gap) E - alpha_k
  double discrete = 0.0;   // form of the nodal interpolant of phi_k
};

struct SpacingConstruction {
  DeltaConfig config;
  std::vector<SpacingCertificate> certificates;
  bool all_negative = true;
};

/// Points x_0 = 0, x_k = x_{k-1} + gap_k with
///   gap_k = max(margin * 2 E / alpha_k, gap_{k-1}),
/// so the bumps phi_k(x) = psi(2 (x - x_k) / gap_k) have disjoint supports
/// and q[phi_k] = 2 E / gap_k - alpha_k <= alpha_k (1 / margin - 1) < 0.
/// The window and mesh of the returned config resolve every bump.
/// Throws std::domain_error for margin <= 1.
SpacingConstruction spaced_wells(const std::vector<double>& intensities, double margin);

struct FiniteSigmaCheck {
  int count = 0;
  int points = 0;
  bool pass = true;  // count <= points
};

FiniteSigmaCheck finite_sigma_count_check(const DeltaConfig& config);

}  // namespace stripbound
