#pragma once

#include <vector>

#include "parasusy/basis.hpp"
#include "parasusy/rep.hpp"

namespace parasusy {

struct SpectrumLevel {
  int energy = 0;
  std::vector<SubspaceLabel> states;  // ordered by m descending, s descending
  std::vector<double> eigenvalues;    // raw H eigenvalues binned to this level
  int degeneracy = 0;
  int even_n_count = 0;
  int odd_n_count = 0;
  int witten_sum = 0;  // sum of (-1)^n over the level
};

struct SpectrumTable {
  int p = 1;
  int level_cap = 0;
  std::vector<SpectrumLevel> levels;
};

/// Diagonalizes H on the cyclic subspace up to level_cap, bins eigenvalues to
/// integers (NumericalError beyond 1e-6), then resolves each level into
/// (m, n, s) by diagonalizing N_a, N_f and N_s inside it.
SpectrumTable spectrum(const ParaRep& rep, const CyclicBasis& fock, int level_cap);
SpectrumTable spectrum(const ParaRep& rep, int level_cap);

/// 1 for l = 0, 2l for 1 <= l <= p, 2p beyond.
int expected_degeneracy(int level, ParaOrder p);

struct WittenReport {
  std::vector<int> level_sums;  // index l - 1 for levels l >= 1
  int cumulative = 0;
  bool cancels = true;        // every level sum is zero
  bool half_split = true;     // even and odd counts equal on every level >= 1
};

/// The vacuum level is left out of the trace.
WittenReport witten_check(const SpectrumTable& table);

}  // namespace parasusy
