#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stripbound/orlicz.hpp"
#include "stripbound/potential.hpp"
#include "stripbound/quadrature.hpp"

namespace stripbound {

// ---------------------------------------------------------------------------
// Mixed norms L1(I1, L_B(I2))

enum class InnerNorm { Orlicz, Luxemburg };

/// int_{I1} ||V(x1, .)||_{B, I2} dx1 with the Orlicz (dual-ball) inner norm
/// by default. Outer and inner integrals use composite midpoint rules.
/// Throws std::domain_error if a sample of V is negative, unless
/// `allow_signed` is set, in which case |V| is used.
double mixed_norm_L1_LB(const PotentialSpec& v, Interval i1, Interval i2,
                        const QuadratureSpec& quad = {}, InnerNorm kind = InnerNorm::Orlicz,
                        bool allow_signed = false);

// ---------------------------------------------------------------------------
// Dyadic cells and per-cell quantities

/// I_0 = [-1, 1]; I_n = [2^(n-1), 2^n] for n > 0; mirrored for n < 0.
Interval dyadic_interval(int n);

/// Index of the dyadic cell containing x, using half-open cells
/// [-1, 1), [1, 2), [2, 4), ... and [-2, -1), [-4, -2), ... .
int dyadic_index_of(double x);

struct NRange {
  int lo = -20;
  int hi = 20;

  int size() const { return hi - lo + 1; }
  friend bool operator==(const NRange&, const NRange&) = default;
};

/// G_n = int_{I_n x (0, a)} |x1| V dx (unweighted for n = 0).
double g_n(const PotentialSpec& v, int n, const QuadratureSpec& quad = {});

/// One-dimensional form: int_{I_n} |x1| W(x1) dx1 (unweighted for n = 0).
double g_n_1d(const Potential1D& w, int n, const QuadratureSpec& quad = {});

/// D_n = ||V||_{L1(J_n, L_B(0, a))}, J_n = (n, n + 1).
double d_n(const PotentialSpec& v, int n, const QuadratureSpec& quad = {});

/// b_n = (int_{S_n} V^p dx)^(1/p), S_n = (n, n + 1) x (0, a). Needs p > 1.
double b_n_lp(const PotentialSpec& v, int n, double p, const QuadratureSpec& quad = {});

/// sup_{s > 0} s * card{n : |a_n| > s}, exact for finite data:
/// max_k k * a*_k over the nonincreasing rearrangement a*.
double weak_l1_quasinorm(std::span<const double> seq);

/// sum of sqrt(a_n) over a_n > threshold.
double threshold_sqrt_sum(std::span<const double> seq, double threshold);

// ---------------------------------------------------------------------------
// Constants

/// Constants entering the bounds. The strip bounds only assert existence
/// of c and C, so every report echoes the values used.
struct BoundConstants {
  double c = 0.046;   // threshold for G_n and D_n
  double C = 7.61;    // prefactor
  double est1_const = 7.61;
  double est1_threshold = 0.046;
  // Measure analogue of the explicit 1D bound. The published value is 7.16,
  // likely a transposition of 7.61; kept as printed and configurable.
  double measure_const = 7.16;
  double c1 = 0.046;               // threshold for F_n
  double c2 = 0.046;               // threshold for C_n
  double curve_sqrt_const = 7.61;  // prefactor of sum sqrt(F_n)
  double curve_cell_const = 7.61;  // prefactor of sum C_n
  std::array<std::optional<double>, 12> named{};  // C1 ... C12

  /// Throws std::invalid_argument naming the first value that is not > 0.
  void validate() const;
};

// ---------------------------------------------------------------------------
// Bound evaluators

struct CellValue {
  int n;
  double value;
};

struct ThresholdSum {
  double sum = 0.0;
  std::vector<int> indices;  // n with value > threshold
};

ThresholdSum threshold_sqrt_terms(std::span<const CellValue> cells, double threshold);
ThresholdSum threshold_linear_terms(std::span<const CellValue> cells, double threshold);

struct Gest2Bound {
  double value = 1.0;
  ThresholdSum sqrt_part;   // sum over G_n > c of sqrt(G_n)
  ThresholdSum cell_part;   // sum over D_n > c of D_n
  std::vector<CellValue> g;
  std::vector<CellValue> d;
  std::vector<std::string> warnings;
};

/// 1 + C (sum_{G_n > c} sqrt(G_n) + sum_{D_n > c} D_n).
Gest2Bound bound_gest2(const PotentialSpec& v, const BoundConstants& consts, NRange range,
                       const QuadratureSpec& quad = {});

struct Est1Bound {
  double value = 1.0;
  ThresholdSum sqrt_part;
  std::vector<CellValue> g;
  std::vector<std::string> warnings;
};

/// 1 + prefactor * sum_{G_n > threshold} sqrt(G_n) from precomputed G_n.
Est1Bound bound_est1_1d(std::span<const CellValue> g, double prefactor = 7.61,
                        double threshold = 0.046);

/// Same with G_n = int_{I_n} |x1| W computed over `range`.
Est1Bound bound_est1_1d(const Potential1D& w, NRange range, const QuadratureSpec& quad = {},
                        double prefactor = 7.61, double threshold = 0.046);

/// Bracketed right-hand sides of the four remark estimates (the unknown
/// prefactors C3 ... C6 are not applied) and the inequality chains that
/// connect them.
struct BoundVariants {
  double quasinorm = 0.0;         // ||(G_n)||_{1,w}
  double mixed_norm = 0.0;        // ||V||_{L1(R, L_B(I))}
  double mixed_norm_star = 0.0;   // ||V_*||_{L1(R, L_B(I))}
  double lp_mixed = 0.0;          // int_R (int_I V^p dx2)^(1/p) dx1
  double lp_mixed_star = 0.0;     // same for V_*
  double mean_integral = 0.0;     // int_R V~ dx1
  double thresholded_cell_sum = 0.0;  // sum_{D_n > c} D_n
  double rhs_est2 = 0.0;
  double rhs_est3 = 0.0;
  double rhs_est4 = 0.0;
  double rhs_est5 = 0.0;
  double p = 2.0;
  /// sum_{D_n > c} D_n <= sum_n D_n = ||V||_{L1(R, L_B(I))}
  bool domination_chain_holds = true;
  /// |lp_mixed - lp_mixed_star| <= a^(1/p) int V~
  bool lp_gap_holds = true;
  double lp_gap = 0.0;
  double lp_gap_bound = 0.0;
};

BoundVariants bound_variants(const PotentialSpec& v, double p, NRange range,
                             const BoundConstants& consts = {}, const QuadratureSpec& quad = {});

// ---------------------------------------------------------------------------
// Tabulated quantities

struct UnitCellRecord {
  int n = 0;
  double d = 0.0;             // D_n with the Orlicz inner norm
  double d_luxemburg = 0.0;   // same with the Luxemburg inner norm
  double d_star = 0.0;        // D_n of V_*
  double lp = 0.0;            // int_{J_n} (int_I V^p)^(1/p)
  double lp_star = 0.0;
  double b = 0.0;             // b_n
  double mean_integral = 0.0; // int_{J_n} V~
};

/// All unit-cell quantities of V for every J_n that meets the support of V,
/// computed in one sweep over x1 columns.
std::vector<UnitCellRecord> unit_cell_records(const PotentialSpec& v, double p,
                                              const QuadratureSpec& quad = {});

/// Unit cells (n, n + 1) meeting the support of V.
NRange unit_cells_covering(const PotentialSpec& v);

/// Warnings when the support of V is not covered by the dyadic cells of
/// `range` or by its unit cells.
std::vector<std::string> coverage_warnings(const PotentialSpec& v, NRange range);

}  // namespace stripbound
