#pragma once

#include <vector>

#include "stripbound/dyadic.hpp"
#include "stripbound/inertia.hpp"
#include "stripbound/potential.hpp"

namespace stripbound {

/// Node lattice on the truncated strip [-L, L] x [0, a]. Nodes include both
/// walls x2 = 0, a and both artificial ends x1 = +-L.
struct StripGrid {
  double a = 1.0;
  double L = 8.0;
  int nx = 64;
  int ny = 8;

  double h1() const { return 2.0 * L / nx; }
  double h2() const { return a / ny; }
  int rows() const { return nx + 1; }
  int cols() const { return ny + 1; }
  int size() const { return rows() * cols(); }
  int index(int i, int j) const { return i * cols() + j; }
  double x1(int i) const { return -L + i * h1(); }
  double x2(int j) const { return j * h2(); }

  /// Throws std::invalid_argument unless a > 0, L > 0, nx >= 4, ny >= 2.
  void validate() const;
};

/// Discretised q_{V,S}: `matrix` is the symmetric form matrix
/// (stiffness - scale * lumped potential mass), `mass` the lumped nodal
/// measure (trapezoidal weights times h1 h2).
struct StripProblem {
  StripGrid grid;
  SparseMatrix matrix;
  Eigen::VectorXd mass;
};

/// Five-point Neumann Laplacian (reflection at both walls and at x1 = +-L)
/// minus diag(scale * V * cell measure). V is sampled at the nodes.
StripProblem assemble_form(const PotentialSpec& v, const StripGrid& grid, double scale = 1.0);

/// Symmetric x1-x2 stiffness alone.
SparseMatrix assemble_stiffness(const StripGrid& grid);

int count_negative(const StripProblem& problem);

/// The form restricted to functions whose trapezoidal x2-mean vanishes in
/// every column, written in the cosine basis cos(pi k j / ny), k = 1..ny.
SparseMatrix restrict_to_mean_zero(const StripProblem& problem);

/// Reduced operator on [-L, L]: tridiagonal form matrix of
/// int |w'|^2 - int W |w|^2 with trapezoidal lumping, and its mass.
struct LineOperator {
  double L = 0.0;
  int panels = 0;
  std::vector<double> diag;
  std::vector<double> off;
  std::vector<double> mass;

  double h() const { return 2.0 * L / panels; }
  double node(int i) const { return -L + i * h(); }
};

/// `samples[i]` is W at node i; there are panels + 1 of them.
LineOperator assemble_line_operator(std::span<const double> samples, double L, int panels);
LineOperator assemble_line_operator(const Potential1D& w, double L, int panels);
int count_negative(const LineOperator& op);

/// Trapezoidal x2-average of V at every x1 node of the grid.
std::vector<double> nodal_mean(const PotentialSpec& v, const StripGrid& grid);

struct SubspaceCounts {
  int n1 = 0;  // -d^2/dx1^2 - 2 V~ on [-L, L]
  int n2 = 0;  // q_{2V,S} on x2-mean-zero functions
};

/// Counts of the two pieces of the split W^1_2 = H1 (+) H2 applied to 2V.
SubspaceCounts subspace_counts(const PotentialSpec& v, const StripGrid& grid);

/// Count of -d^2/dx^2 - W on [-L, L] with Neumann ends, refined by
/// doubling `panels` until two successive counts agree.
struct ConvergedCount {
  int count = 0;
  int panels = 0;
  bool converged = false;
};
ConvergedCount converged_line_count(const Potential1D& w, double L, int panels,
                                    int max_panels = 1 << 18);

// ---------------------------------------------------------------------------
// Lower-bound certifier

struct CertifierEntry {
  int n = 0;                  // dyadic cell of the plateau
  double g = 0.0;             // G_n
  double energy = 0.0;        // int |grad u_n|^2
  double potential = 0.0;     // int V |u_n|^2
  double q = 0.0;             // energy - potential
  bool exceeds_threshold = false;  // G_n > 5a
  Interval support;           // x1-support of u_n
};

struct CertifierReport {
  double threshold = 0.0;           // 5a
  std::vector<CertifierEntry> entries;  // one per n in range, V-free cells skipped
  std::vector<int> exceeding;       // n with G_n > 5a
  std::vector<int> certified;       // n with q[u_n] < 0
  std::vector<int> packing;         // pairwise disjoint supports among `certified`
  int lower_bound = 0;              // packing.size()
  int third_of_exceeding = 0;       // ceil(card{G_n > 5a} / 3)
  bool threshold_implies_negative = true;  // every G_n > 5a has q[u_n] < 0
  std::vector<std::string> warnings;
};

/// Piecewise-linear test profile w_n: plateau equal to the outer end of the
/// cell on I_n, ramps to zero across the neighbouring cells (for n = 0:
/// plateau 1 on [-1, 1], ramps to +-2).
double certifier_profile(int n, double x1);
Interval certifier_support(int n);
/// a * int |w_n'|^2 = 5 a 2^|n| (2a for n = 0).
double certifier_energy(int n, double a);

CertifierReport certify_lower_bound(const PotentialSpec& v, NRange range = {},
                                    const QuadratureSpec& quad = {});

// ---------------------------------------------------------------------------
// Coupling-constant scan

struct ScanRow {
  double alpha = 0.0;
  int count = 0;
  double count_over_alpha = 0.0;
  /// sup_s s card{n : G_n(alpha V) > s} = alpha ||(G_n(V))||_{1,w}
  double weak_quasinorm = 0.0;
  /// card{n : alpha G_n(V) > 5a}
  int cells_over_threshold = 0;
};

struct ScanResult {
  std::vector<ScanRow> rows;
  double max_ratio = 0.0;  // max count/alpha
  double min_ratio = 0.0;  // min count/alpha
  bool monotone = true;    // counts nondecreasing in alpha
};

ScanResult semiclassical_scan(const PotentialSpec& v, const StripGrid& grid,
                              const std::vector<double>& alphas, NRange range = {},
                              const QuadratureSpec& quad = {});

}  // namespace stripbound
