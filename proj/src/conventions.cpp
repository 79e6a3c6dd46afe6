#include "parasusy/conventions.hpp"

#include "parasusy/errors.hpp"

namespace parasusy {

std::vector<ConventionCandidate> ConventionSearchResult::valid() const {
  std::vector<ConventionCandidate> out;
  for (const auto& c : candidates)
    if (c.valid) out.push_back(c);
  return out;
}

GreenConvention ConventionSearchResult::pinned() const {
  for (const auto& c : candidates)
    if (c.valid) return c.convention;
  throw ConventionError("no Klein dressing realizes the defining relations at p = " +
                        std::to_string(p) + ", cutoff " + std::to_string(cutoff));
}

ConventionSearchResult convention_search(ParaOrder p, int cutoff, double tolerance, int probes,
                                         std::uint64_t seed) {
  ConventionSearchResult result;
  result.p = p.value();
  result.cutoff = cutoff;
  result.tolerance = tolerance;
  const Cutoff cut = Cutoff::with_default_levels(cutoff);
  SuiteOptions options;
  options.probes = probes;
  options.seed = seed;
  options.tolerance = tolerance;
  options.groups = kDefiningGroups;

  for (const auto& convention : GreenConvention::grid()) {
    const ParaRep rep = build_rep(p, cut, convention);
    const auto checks = verify_suite(rep, options);
    ConventionCandidate cand;
    cand.convention = convention;
    for (const auto& check : checks) {
      if (!check.passed) ++cand.failed;
      if (check.residual > cand.worst_residual || cand.worst_identity.empty()) {
        cand.worst_residual = check.residual;
        cand.worst_identity = check.name;
      }
    }
    cand.valid = cand.failed == 0;
    result.candidates.push_back(std::move(cand));
  }
  return result;
}

GreenConvention discover_convention(ParaOrder p) {
  return convention_search(p, kScreeningCutoff).pinned();
}

}  // namespace parasusy
