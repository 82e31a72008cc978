#pragma once

#include <span>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace stripbound {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;

/// Relative threshold below which eigenvalues count as zero: an eigenvalue
/// lambda is negative only if lambda < -kKernelTolerance * max|A_ij|.
inline constexpr double kKernelTolerance = 1e-9;

/// Largest matrix order for the dense spectral fallback.
inline constexpr int kDenseFallbackLimit = 4000;

struct InertiaCount {
  int negative = 0;
  bool used_fallback = false;  // sparse LDL^T broke down; dense spectral count used
};

double max_abs_entry(const SparseMatrix& a);

/// Number of eigenvalues below -kKernelTolerance * max|A_ij|, from the
/// pivots of an (unpivoted, natural ordering) sparse LDL^T of A + shift I.
/// Sylvester's law of inertia makes the pivot signs the eigenvalue signs.
/// A near-zero or non-finite pivot triggers the dense spectral fallback for
/// n <= kDenseFallbackLimit and std::runtime_error beyond.
InertiaCount count_negative_sparse(const SparseMatrix& a);

/// Same count for a dense symmetric matrix from a Bunch-Kaufman
/// factorisation (LAPACK dsytrf): 1x1 pivots by sign, 2x2 blocks by
/// determinant and trace.
int count_negative_dense(const Eigen::MatrixXd& a);

/// Dense eigensolver count of eigenvalues below -kKernelTolerance * max|A_ij|.
int count_negative_spectral(const Eigen::MatrixXd& a);

/// Sturm count: number of eigenvalues of the symmetric tridiagonal matrix
/// (diag, off) that are < `below`.
int sturm_count(std::span<const double> diag, std::span<const double> off, double below);

/// Number of eigenvalues mu of the pencil T - mu M (M diagonal, > 0) with
/// mu < `below`, again by Sturm count of T - below * M.
int sturm_count_pencil(std::span<const double> diag, std::span<const double> off,
                       std::span<const double> mass, double below);

/// Number of eigenvalues of the tridiagonal matrix below
/// -kKernelTolerance * max|T_ij|.
int count_negative_tridiagonal(std::span<const double> diag, std::span<const double> off);

}  // namespace stripbound
