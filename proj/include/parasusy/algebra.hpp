#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "parasusy/linalg.hpp"
#include "parasusy/rep.hpp"

namespace parasusy {

/// Operator expression over the named operators of a ParaRep. Cheap to copy
/// (shared immutable tree); evaluated matrix-free on state vectors.
class Expr {
 public:
  enum class Kind { kIdentity, kNamed, kMatrixAdjoint, kScaled, kSum, kProduct, kCommutator, kAnticommutator };

  static Expr identity();
  static Expr zero();
  static Expr named(Operator op);
  /// Throws std::invalid_argument for names not in the operator table.
  static Expr named(std::string_view name);
  /// The conjugate transpose of the stored matrix, as opposed to the
  /// partner operator.
  static Expr matrix_adjoint(Operator op);

  friend Expr operator+(const Expr& lhs, const Expr& rhs);
  friend Expr operator-(const Expr& lhs, const Expr& rhs);
  friend Expr operator*(const Expr& lhs, const Expr& rhs);
  friend Expr operator*(Complex scale, const Expr& e);
  friend Expr operator*(double scale, const Expr& e);
  friend Expr commutator(const Expr& lhs, const Expr& rhs);
  friend Expr anticommutator(const Expr& lhs, const Expr& rhs);
  friend Expr power(const Expr& e, int exponent);
  /// Formal adjoint, mapping each named operator to its partner.
  friend Expr adjoint(const Expr& e);

  [[nodiscard]] Kind kind() const;
  [[nodiscard]] std::string str() const;
  /// Upper bound on boson quanta added along any evaluation path.
  [[nodiscard]] int raise_bound() const;

  struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;

  friend StateVector eval_expr(const ParaRep& rep, const Expr& expr, const StateVector& v);
};

/// Linear evaluation; brackets expand as AB -/+ BA applied to v.
StateVector eval_expr(const ParaRep& rep, const Expr& expr, const StateVector& v);

/// Where probe vectors for an identity are drawn from.
enum class ProbeDomain {
  kVacuum,   // the vacuum itself (one probe)
  kAmbient,  // product states with total boson occupation <= c - raise bound
  kFock,     // the cyclic subspace, levels <= min(c - 1, c - raise bound)
};

std::string_view to_string(ProbeDomain domain);

struct Identity {
  std::string name;
  std::string group;
  Expr lhs;
  Expr rhs;
  ProbeDomain domain = ProbeDomain::kAmbient;
};

struct IdentityCheck {
  std::string name;
  std::string group;
  std::string lhs;
  std::string rhs;
  ProbeDomain domain = ProbeDomain::kAmbient;
  double residual = 0.0;
  bool passed = false;
  int probes = 0;
};

/// Relation families of the suite.
enum class SuiteGroup : unsigned {
  kParabose = 1u << 0,
  kParafermi = 1u << 1,
  kMixed = 1u << 2,
  kVacuum = 1u << 3,
  kAuxiliary = 1u << 4,
  kSusy = 1u << 5,
  kReduction = 1u << 6,
  kGrading = 1u << 7,
  kAdjoint = 1u << 8,
};

inline constexpr unsigned kDefiningGroups = static_cast<unsigned>(SuiteGroup::kParabose) |
                                            static_cast<unsigned>(SuiteGroup::kParafermi) |
                                            static_cast<unsigned>(SuiteGroup::kMixed) |
                                            static_cast<unsigned>(SuiteGroup::kVacuum);
inline constexpr unsigned kAllGroups = 0x1ffu;

std::string_view group_name(SuiteGroup group);

/// Every identity of the selected groups, in a fixed order.
std::vector<Identity> relation_identities(int p, unsigned groups = kAllGroups);

struct SuiteOptions {
  int probes = 8;
  std::uint64_t seed = 42;
  double tolerance = 1e-10;
  unsigned groups = kAllGroups;
};

/// residual = max over probes of |(lhs - rhs) v| / max(1, |lhs v|, |rhs v|).
IdentityCheck check_identity(const ParaRep& rep, const Identity& identity,
                             const SuiteOptions& options, std::size_t stream,
                             const CyclicBasis* fock);

/// Evaluates every identity of the selected groups. Deterministic in
/// (rep, probes, seed); failures are data.
std::vector<IdentityCheck> verify_suite(const ParaRep& rep, const SuiteOptions& options = {});

[[nodiscard]] bool all_passed(const std::vector<IdentityCheck>& checks);
[[nodiscard]] double worst_residual(const std::vector<IdentityCheck>& checks);

}  // namespace parasusy
