#include "stripbound/inertia.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <lapacke.h>

namespace stripbound {

namespace {

// Pivots smaller than this (relative to max|A_ij|) count as a breakdown of
// the unpivoted factorisation.
constexpr double kPivotFloor = 1e-12;

Eigen::MatrixXd to_dense(const SparseMatrix& a) { return Eigen::MatrixXd(a); }

}  // namespace

double max_abs_entry(const SparseMatrix& a) {
  double m = 0.0;
  for (int k = 0; k < a.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(a, k); it; ++it) m = std::max(m, std::abs(it.value()));
  }
  return m;
}

InertiaCount count_negative_sparse(const SparseMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("count_negative_sparse: not square");
  const int n = static_cast<int>(a.rows());
  if (n == 0) return {};
  const double norm = max_abs_entry(a);
  if (norm == 0.0) return {};
  if (!std::isfinite(norm)) throw std::domain_error("count_negative_sparse: non-finite entry");

  SparseMatrix shifted = a;
  for (int i = 0; i < n; ++i) shifted.coeffRef(i, i) += kKernelTolerance * norm;
  shifted.makeCompressed();

  Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower, Eigen::NaturalOrdering<int>> ldlt;
  ldlt.compute(shifted);
  bool broke_down = ldlt.info() != Eigen::Success;
  int negative = 0;
  if (!broke_down) {
    const Eigen::VectorXd d = ldlt.vectorD();
    for (int i = 0; i < n; ++i) {
      if (!std::isfinite(d[i]) || std::abs(d[i]) < kPivotFloor * norm) {
        broke_down = true;
        break;
      }
      if (d[i] < 0.0) ++negative;
    }
  }
  if (!broke_down) return {negative, false};
  if (n > kDenseFallbackLimit) {
    throw std::runtime_error("LDL^T breakdown and matrix too large for the dense fallback");
  }
  return {count_negative_spectral(to_dense(a)), true};
}

int count_negative_dense(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("count_negative_dense: not square");
  const int n = static_cast<int>(a.rows());
  if (n == 0) return 0;
  const double norm = a.cwiseAbs().maxCoeff();
  if (norm == 0.0) return 0;
  if (!std::isfinite(norm)) throw std::domain_error("count_negative_dense: non-finite entry");

  Eigen::MatrixXd work = a;
  work.diagonal().array() += kKernelTolerance * norm;
  std::vector<lapack_int> ipiv(static_cast<std::size_t>(n));
  const lapack_int info =
      LAPACKE_dsytrf(LAPACK_COL_MAJOR, 'L', n, work.data(), n, ipiv.data());
  if (info < 0) throw std::runtime_error("dsytrf: illegal argument");
  // info > 0 reports an exactly zero 1x1 pivot; the inertia is still read
  // off D, with that pivot counted as zero.

  int negative = 0;
  for (int k = 0; k < n; ++k) {
    if (ipiv[static_cast<std::size_t>(k)] > 0) {
      if (work(k, k) < 0.0) ++negative;
    } else {
      // 2x2 block occupying rows k, k+1.
      const double p = work(k, k);
      const double q = work(k + 1, k);
      const double r = work(k + 1, k + 1);
      const double det = p * r - q * q;
      if (det < 0.0) {
        negative += 1;
      } else if (det > 0.0 && p + r < 0.0) {
        negative += 2;
      } else if (det == 0.0 && p + r < 0.0) {
        negative += 1;
      }
      ++k;
    }
  }
  return negative;
}

int count_negative_spectral(const Eigen::MatrixXd& a) {
  if (a.rows() == 0) return 0;
  const double norm = a.cwiseAbs().maxCoeff();
  if (norm == 0.0) return 0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw std::runtime_error("dense eigensolver failed");
  const double cut = -kKernelTolerance * norm;
  int negative = 0;
  for (int i = 0; i < eig.eigenvalues().size(); ++i) {
    if (eig.eigenvalues()[i] < cut) ++negative;
  }
  return negative;
}

int sturm_count_pencil(std::span<const double> diag, std::span<const double> off,
                       std::span<const double> mass, double below) {
  const std::size_t n = diag.size();
  if (!mass.empty() && mass.size() != n) {
    throw std::invalid_argument("sturm_count_pencil: mass size mismatch");
  }
  if (n == 0) return 0;
  if (off.size() + 1 != n) throw std::invalid_argument("sturm_count: off must have n-1 entries");
  double scale = 1.0;
  for (double d : diag) scale = std::max(scale, std::abs(d));
  for (double e : off) scale = std::max(scale, std::abs(e));
  // Zero pivots are nudged to -pivmin, as in LAPACK's dstebz.
  const double pivmin =
      scale * std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double m = mass.empty() ? 1.0 : mass[i];
    q = (diag[i] - below * m) - (i == 0 ? 0.0 : off[i - 1] * off[i - 1] / q);
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

int sturm_count(std::span<const double> diag, std::span<const double> off, double below) {
  return sturm_count_pencil(diag, off, {}, below);
}

int count_negative_tridiagonal(std::span<const double> diag, std::span<const double> off) {
  double norm = 0.0;
  for (double d : diag) norm = std::max(norm, std::abs(d));
  for (double e : off) norm = std::max(norm, std::abs(e));
  if (norm == 0.0) return 0;
  return sturm_count(diag, off, -kKernelTolerance * norm);
}

}  // namespace stripbound
