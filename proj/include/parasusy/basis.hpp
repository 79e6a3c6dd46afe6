#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "parasusy/linalg.hpp"
#include "parasusy/rep.hpp"

namespace parasusy {

using BigInt = boost::multiprecision::cpp_int;

/// Label of a basis vector |m, n, s>, with s stored as twice its value (+1 / -1).
struct SubspaceLabel {
  int m = 0;
  int n = 0;
  int two_s = 1;

  [[nodiscard]] double s() const { return 0.5 * two_s; }
  /// Whether the state is present in the order-p Fock space: n <= p, and the
  /// s = -1/2 partner only for m >= 1, 1 <= n <= p - 1.
  [[nodiscard]] bool exists(int p) const;
  [[nodiscard]] std::string str() const;

  friend bool operator==(const SubspaceLabel&, const SubspaceLabel&) = default;
  friend auto operator<=>(const SubspaceLabel&, const SubspaceLabel&) = default;
};

/// Number of states in sector (m, n): 2 for m >= 1 and 1 <= n <= p - 1,
/// 0 for n > p, 1 otherwise.
int expected_sector_dim(int p, int m, int n);

struct BracketFactorial {
  long long bracket = 0;  // [m] = m + (p - 1)(1 - (-1)^m)/2
  BigInt factorial;       // [m]! = [m][m-1]...[1], [0]! = 1
};

BracketFactorial bracket_factorial(int m, ParaOrder p);

/// p! n! [m]! / (p - n)!, the squared norm of f+^n a+^m |0>. Requires n <= p.
BigInt monomial_norm_squared(int m, int n, ParaOrder p);

/// sqrt(n (p - n) (m^2 + m p + p^2 (1 - (-1)^m) / 8)).
struct TransitionCoeff {
  double value = 0.0;
};

TransitionCoeff transition_coeff(int p, int m, int n);

/// Unnormalized basis expression: f+^n a+^m |0> for s = +1/2 and
/// f+^(n-1) (p F+ - f+ a+) a+^(m-1) |0> for s = -1/2 (zero when m or n is 0).
StateVector basis_monomial(const ParaRep& rep, const SubspaceLabel& label);

/// Normalized basis vector with the closed-form prefactors. Labels outside
/// the Fock space yield the zero vector. Throws std::invalid_argument for
/// negative quantum numbers or |two_s| != 1, TruncationError past the level
/// cap.
StateVector closed_form_basis(const ParaRep& rep, const SubspaceLabel& label);

struct SectorVector {
  StateVector vector;
  double grading = 0.0;  // N_s eigenvalue
  SubspaceLabel label;
};

struct SubspaceReport {
  int m = 0;
  int n = 0;
  int dim = 0;
  std::vector<SectorVector> vectors;  // s = +1/2 first
  double gram_residual = 0.0;         // max |<v_i|v_j> - delta_ij|
  double grading_residual = 0.0;      // max |N_s v - s v|
  /// min over vectors of |<closed-form|numeric>|; 1 when they agree up to phase.
  double closed_form_overlap = 1.0;
};

/// Sector (m, n) of the cyclic subspace, found by diagonalizing N_a and N_f
/// on the level-(m+n) vectors, then N_s inside the sector. Each vector is
/// phased so its overlap with the closed-form vector is real positive.
SubspaceReport subspace_report(const ParaRep& rep, const CyclicBasis& fock, int m, int n);
SubspaceReport subspace_report(const ParaRep& rep, int m, int n);

struct TransitionReport {
  int m = 0;
  int n = 0;
  double expected = 0.0;          // transition_coeff
  double measured = 0.0;          // <m,n,-1/2| T |m,n,1/2>
  double t_raise_residual = 0.0;  // T|+> vs coeff |->
  double t_lower_residual = 0.0;  // T|-> vs coeff |+>
  double ladder_plus_residual = 0.0;        // Q_s|+> vs coeff |->
  double ladder_minus_residual = 0.0;       // |Q_s|->|
  double ladder_dag_plus_residual = 0.0;    // |Q_s+|+>|
  double ladder_dag_minus_residual = 0.0;   // Q_s+|-> vs coeff |+>
  double charge_sector_residual = 0.0;      // Q maps (m,n) into (m+1, n-1)
  double charge_dag_sector_residual = 0.0;  // Q+ maps (m,n) into (m-1, n+1)

  [[nodiscard]] double worst() const;
};

/// Throws std::invalid_argument when the sector is not two-dimensional.
TransitionReport verify_transitions(const ParaRep& rep, const SubspaceReport& sector);

/// Gram residual of all closed-form vectors up to level_cap, and the distance
/// between their span and the cyclic subspace.
struct BasisCompleteness {
  int count = 0;
  int cyclic_count = 0;
  double gram_residual = 0.0;
  double span_residual = 0.0;
};

BasisCompleteness basis_completeness(const ParaRep& rep, const CyclicBasis& fock, int level_cap);

/// One row of the sector table export.
struct SectorRow {
  SubspaceReport report;
  int expected_dim = 0;
  std::optional<TransitionReport> transitions;  // two-dimensional sectors only
};

/// All sectors (m, n) with m + n <= level_cap and n <= p + 1, level by level.
std::vector<SectorRow> sector_table(const ParaRep& rep, const CyclicBasis& fock, int level_cap);

/// Every existing label with m + n <= level_cap, ordered by level, then m
/// descending, then s descending.
std::vector<SubspaceLabel> trusted_labels(int p, int level_cap);

}  // namespace parasusy
