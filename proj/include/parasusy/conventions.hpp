#pragma once

#include <string>
#include <vector>

#include "parasusy/algebra.hpp"
#include "parasusy/rep.hpp"

namespace parasusy {

struct ConventionCandidate {
  GreenConvention convention;
  double worst_residual = 0.0;
  std::string worst_identity;
  int failed = 0;
  bool valid = false;
};

struct ConventionSearchResult {
  int p = 1;
  int cutoff = 3;
  double tolerance = 1e-10;
  /// Every grid point, canonical order.
  std::vector<ConventionCandidate> candidates;

  [[nodiscard]] std::vector<ConventionCandidate> valid() const;
  /// First valid convention in canonical order; throws ConventionError when
  /// there is none.
  [[nodiscard]] GreenConvention pinned() const;
};

/// Builds every dressing of the grid at the given cutoff and screens it
/// against the defining relations and vacuum conditions.
ConventionSearchResult convention_search(ParaOrder p, int cutoff, double tolerance = 1e-10,
                                         int probes = 8, std::uint64_t seed = 42);

/// Cutoff used when a convention has to be discovered on the fly.
inline constexpr int kScreeningCutoff = 3;

/// convention_search at the screening cutoff, returning the pinned choice.
GreenConvention discover_convention(ParaOrder p);

}  // namespace parasusy
