#include "parasusy/susy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "parasusy/errors.hpp"

namespace parasusy {

namespace {

constexpr double kBinTolerance = 1e-6;

int bin_to_integer(double value, const char* what) {
  const double nearest = std::round(value);
  if (std::abs(value - nearest) > kBinTolerance)
    throw NumericalError(std::string(what) + " eigenvalue " + std::to_string(value) +
                         " is not within 1e-6 of an integer");
  return static_cast<int>(nearest);
}

Eigen::SelfAdjointEigenSolver<DenseMatrix> hermitian_eigen(const DenseMatrix& m) {
  return Eigen::SelfAdjointEigenSolver<DenseMatrix>(0.5 * (m + m.adjoint()));
}

DenseMatrix restrict(const SparseOp& op, const DenseMatrix& basis) {
  return basis.adjoint() * (op * basis);
}

}  // namespace

SpectrumTable spectrum(const ParaRep& rep, const CyclicBasis& fock, int level_cap) {
  if (level_cap > rep.cutoff().level_cap())
    throw TruncationError("spectrum level " + std::to_string(level_cap) + " beyond level cap " +
                          std::to_string(rep.cutoff().level_cap()));
  if (static_cast<int>(fock.levels.size()) <= level_cap)
    throw std::invalid_argument("cyclic basis does not reach level " + std::to_string(level_cap));

  const DenseMatrix span = fock.stacked(level_cap);
  const auto energy = hermitian_eigen(restrict(rep.op(Operator::kHamiltonian), span));

  std::map<int, std::vector<Eigen::Index>> by_level;
  for (Eigen::Index i = 0; i < energy.eigenvalues().size(); ++i)
    by_level[bin_to_integer(energy.eigenvalues()(i), "H")].push_back(i);

  SpectrumTable table;
  table.p = rep.p();
  table.level_cap = level_cap;
  for (int level = 0; level <= level_cap; ++level) {
    SpectrumLevel row;
    row.energy = level;
    const auto found = by_level.find(level);
    if (found != by_level.end()) {
      const auto& idx = found->second;
      DenseMatrix eig(rep.dim(), static_cast<Eigen::Index>(idx.size()));
      for (std::size_t k = 0; k < idx.size(); ++k) {
        eig.col(static_cast<Eigen::Index>(k)) = span * energy.eigenvectors().col(idx[k]);
        row.eigenvalues.push_back(energy.eigenvalues()(idx[k]));
      }

      // m + lambda n is injective on the level because m <= level < lambda
      const double lambda = level + 1.0;
      const DenseMatrix numbers = restrict(rep.op(Operator::kNumA), eig) +
                                  lambda * restrict(rep.op(Operator::kNumF), eig);
      const auto sectors = hermitian_eigen(numbers);
      std::map<int, std::vector<Eigen::Index>> by_key;
      for (Eigen::Index i = 0; i < sectors.eigenvalues().size(); ++i)
        by_key[bin_to_integer(sectors.eigenvalues()(i), "N_a + lambda N_f")].push_back(i);

      // ascending key is ascending n, i.e. m descending within the level
      for (auto it = by_key.begin(); it != by_key.end(); ++it) {
        const int key = it->first;
        const int n = key / static_cast<int>(lambda);
        const int m = key - n * static_cast<int>(lambda);
        DenseMatrix sector(rep.dim(), static_cast<Eigen::Index>(it->second.size()));
        for (std::size_t k = 0; k < it->second.size(); ++k)
          sector.col(static_cast<Eigen::Index>(k)) = eig * sectors.eigenvectors().col(it->second[k]);
        const auto graded = hermitian_eigen(restrict(rep.op(Operator::kGrading), sector));
        for (Eigen::Index k = graded.eigenvalues().size() - 1; k >= 0; --k) {
          const int two_s = bin_to_integer(2.0 * graded.eigenvalues()(k), "2 N_s");
          if (two_s != 1 && two_s != -1)
            throw NumericalError("N_s eigenvalue outside {+1/2, -1/2}");
          row.states.push_back({m, n, two_s});
          if (n % 2 == 0)
            ++row.even_n_count;
          else
            ++row.odd_n_count;
        }
      }
    }
    row.degeneracy = static_cast<int>(row.states.size());
    row.witten_sum = row.even_n_count - row.odd_n_count;
    table.levels.push_back(std::move(row));
  }
  if (!by_level.empty() && by_level.rbegin()->first > level_cap)
    throw NumericalError("H eigenvalue above the level cap on the cyclic subspace");
  return table;
}

SpectrumTable spectrum(const ParaRep& rep, int level_cap) {
  return spectrum(rep, cyclic_basis(rep, level_cap), level_cap);
}

int expected_degeneracy(int level, ParaOrder p) {
  if (level < 0) throw std::invalid_argument("level must be non-negative");
  if (level == 0) return 1;
  return 2 * std::min(level, p.value());
}

WittenReport witten_check(const SpectrumTable& table) {
  WittenReport out;
  for (const auto& row : table.levels) {
    if (row.energy == 0) continue;
    out.level_sums.push_back(row.witten_sum);
    out.cumulative += row.witten_sum;
    if (row.witten_sum != 0) out.cancels = false;
    if (row.even_n_count != row.odd_n_count) out.half_split = false;
  }
  if (out.cumulative != 0) out.cancels = false;
  return out;
}

}  // namespace parasusy
