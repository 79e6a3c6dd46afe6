#include "parasusy/linalg.hpp"

#include <limits>
#include <vector>

namespace parasusy {

double OrthonormalizeResult::gap() const {
  if (largest_rejected <= 0.0) return std::numeric_limits<double>::infinity();
  return smallest_kept / largest_rejected;
}

OrthonormalizeResult orthonormalize_columns(const DenseMatrix& candidates,
                                            double rel_cut) {
  OrthonormalizeResult out;
  const Eigen::Index rows = candidates.rows();
  DenseMatrix work = candidates;
  std::vector<bool> used(static_cast<std::size_t>(work.cols()), false);
  std::vector<StateVector> kept;

  for (Eigen::Index j = 0; j < work.cols(); ++j)
    out.reference_norm = std::max(out.reference_norm, work.col(j).norm());
  if (out.reference_norm == 0.0) {
    out.basis = DenseMatrix(rows, 0);
    return out;
  }
  const double cut = rel_cut * out.reference_norm;
  out.smallest_kept = std::numeric_limits<double>::infinity();

  while (true) {
    Eigen::Index pivot = -1;
    double best = -1.0;
    for (Eigen::Index j = 0; j < work.cols(); ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      const double nrm = work.col(j).norm();
      if (nrm > best) {
        best = nrm;
        pivot = j;
      }
    }
    if (pivot < 0) break;
    if (best <= cut) {
      out.largest_rejected = best;
      break;
    }
    used[static_cast<std::size_t>(pivot)] = true;
    StateVector q = work.col(pivot) / best;
    // second pass restores orthogonality lost to cancellation
    for (const auto& prev : kept) q -= prev * prev.dot(q);
    q.normalize();
    kept.push_back(q);
    out.smallest_kept = std::min(out.smallest_kept, best);
    for (Eigen::Index j = 0; j < work.cols(); ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      work.col(j) -= q * q.dot(work.col(j));
    }
  }

  out.basis.resize(rows, static_cast<Eigen::Index>(kept.size()));
  for (std::size_t k = 0; k < kept.size(); ++k)
    out.basis.col(static_cast<Eigen::Index>(k)) = kept[k];
  if (kept.empty()) out.smallest_kept = 0.0;
  return out;
}

}  // namespace parasusy
