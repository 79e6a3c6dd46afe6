#pragma once

#include <complex>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace parasusy {

using Complex = std::complex<double>;
using SparseOp = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;
using StateVector = Eigen::VectorXcd;
using DenseMatrix = Eigen::MatrixXcd;

struct OrthonormalizeResult {
  DenseMatrix basis;       // orthonormal columns
  double smallest_kept = 0.0;
  double largest_rejected = 0.0;
  double reference_norm = 0.0;  // largest input column norm

  [[nodiscard]] Eigen::Index rank() const { return basis.cols(); }
  /// Ratio between the last accepted pivot norm and the first rejected one;
  /// infinite when nothing was rejected.
  [[nodiscard]] double gap() const;
};

/// Modified Gram-Schmidt with largest-remaining-norm pivoting. Columns whose
/// residual norm falls to or below rel_cut * reference_norm are dropped.
/// Deterministic: ties go to the lowest column index.
OrthonormalizeResult orthonormalize_columns(const DenseMatrix& candidates,
                                            double rel_cut = 1e-8);

}  // namespace parasusy
