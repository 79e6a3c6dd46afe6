#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "parasusy/linalg.hpp"

namespace parasusy {

/// Parastatistics order p >= 1.
class ParaOrder {
 public:
  explicit ParaOrder(int p);
  [[nodiscard]] int value() const { return p_; }
  friend bool operator==(ParaOrder, ParaOrder) = default;

 private:
  int p_;
};

/// Truncation of the Green-component boson ladders.
///
/// `per_component` is the occupation cap c of each ordinary boson factor;
/// `level_cap` is the largest total quantum number m+n whose results are
/// reported. One level of guard band is kept: level_cap <= c - 1.
class Cutoff {
 public:
  static constexpr int kGuard = 1;

  Cutoff(int per_component, int level_cap);
  /// Cutoff with the widest trusted level range, c - 1.
  static Cutoff with_default_levels(int per_component);

  [[nodiscard]] int per_component() const { return c_; }
  [[nodiscard]] int level_cap() const { return level_cap_; }
  [[nodiscard]] int max_trusted_level() const { return c_ - kGuard; }

 private:
  int c_;
  int level_cap_;
};

/// Parity factor an operator picks up from a spectator Green component.
enum class KleinCharge : int {
  kIdentity = 0,
  kBosonParity = 1,
  kFermionParity = 2,
  kCombinedParity = 3,
};

std::string_view to_string(KleinCharge charge);
KleinCharge klein_charge_from_string(std::string_view text);

/// Klein sign dressing of the Green ansatz.
///
/// The component-alpha boson operator is multiplied by `boson_ops` parity of
/// every component beta < alpha; likewise the fermion operator by
/// `fermion_ops`. Serialized as "<boson_ops>/<fermion_ops>", for example
/// "combined/boson".
struct GreenConvention {
  KleinCharge boson_ops = KleinCharge::kIdentity;
  KleinCharge fermion_ops = KleinCharge::kIdentity;

  [[nodiscard]] std::string to_string() const;
  static GreenConvention parse(std::string_view text);
  /// Position in the canonical enumeration order (0..15).
  [[nodiscard]] int canonical_index() const;
  /// Every dressing in the grid, in canonical order.
  static std::vector<GreenConvention> grid();

  friend bool operator==(const GreenConvention&, const GreenConvention&) = default;
};

/// Named operators of the representation.
enum class Operator : int {
  kA,            // a
  kADag,         // a+
  kF,            // f
  kFDag,         // f+
  kNumA,         // N_a = {a+, a}/2 - p/2
  kNumF,         // N_f = [f+, f]/2 + p/2
  kPair,         // F = {a, f}/2
  kPairDag,      // F+
  kCharge,       // Q = {a+, f}/2
  kChargeDag,    // Q+
  kGrading,      // N_s
  kTransition,   // T
  kLadder,       // Q_s = (1/2 - N_s) T
  kLadderDag,    // Q_s+ = (1/2 + N_s) T
  kHamiltonian,  // H = {a+, a}/2 + [f+, f]/2
};

inline constexpr std::size_t kOperatorCount = 15;

std::string_view name_of(Operator op);
std::optional<Operator> operator_from_name(std::string_view name);
/// The operator whose matrix is the adjoint of `op` in the physical space.
Operator partner_of(Operator op);
/// Upper bound on how many boson quanta `op` may add before removing any;
/// used to keep probe vectors clear of the truncation edge.
int raise_bound(Operator op);
const std::array<Operator, kOperatorCount>& all_operators();

/// Creation letters. `kPairDag` (F+ = {a+, f+}/2) only appears in reduced
/// terms, never in user input.
enum class Letter : unsigned char { kADag, kFDag, kPairDag };

using CreationWord = std::vector<Letter>;

/// Parses whitespace-separated `a+` / `f+` tokens, leftmost acting last.
/// Throws std::invalid_argument on any other token.
CreationWord parse_word(std::string_view text);
std::string format_word(const CreationWord& word);

struct BuildLimits {
  std::size_t max_dimension = 400000;
};

/// Truncated matrix representation of one parabose and one parafermi mode of
/// the same order, assembled from p ordinary (boson x fermion) components.
/// Immutable once built.
class ParaRep {
 public:
  [[nodiscard]] int p() const { return p_.value(); }
  [[nodiscard]] const ParaOrder& order() const { return p_; }
  [[nodiscard]] const Cutoff& cutoff() const { return cutoff_; }
  [[nodiscard]] const GreenConvention& convention() const { return convention_; }
  [[nodiscard]] Eigen::Index dim() const { return dim_; }
  [[nodiscard]] const SparseOp& op(Operator which) const {
    return ops_[static_cast<std::size_t>(which)];
  }
  [[nodiscard]] const StateVector& vacuum() const { return vacuum_; }

  /// Total boson occupation (sum over Green components) of a product state.
  [[nodiscard]] int boson_occupation(Eigen::Index basis_index) const;

 private:
  friend ParaRep build_rep(ParaOrder, Cutoff, GreenConvention, BuildLimits);
  ParaRep(ParaOrder p, Cutoff cutoff, GreenConvention convention)
      : p_(p), cutoff_(cutoff), convention_(convention) {}

  ParaOrder p_;
  Cutoff cutoff_;
  GreenConvention convention_;
  Eigen::Index dim_ = 0;
  std::array<SparseOp, kOperatorCount> ops_;
  StateVector vacuum_;
  std::vector<int> occupation_;
};

/// dim = (2 (c + 1))^p. Throws std::invalid_argument for c < 2 and
/// std::length_error when the dimension exceeds `limits`.
ParaRep build_rep(ParaOrder p, Cutoff cutoff, GreenConvention convention,
                  BuildLimits limits = {});

/// Total quantum number m + n a word adds (F+ counts for both).
int word_level(const CreationWord& word);

/// Applies the letters right to left to the vacuum. Throws TruncationError
/// when word_level(word) exceeds the level cap.
StateVector apply_word(const ParaRep& rep, const CreationWord& word);

/// Closure of the vacuum under a+ and f+, graded by level m + n.
struct CyclicLevel {
  int level = 0;
  DenseMatrix vectors;  // orthonormal columns
  double gap = 0.0;     // pivot-norm gap used for the rank decision
};

struct CyclicBasis {
  std::vector<CyclicLevel> levels;

  [[nodiscard]] Eigen::Index size() const;
  [[nodiscard]] Eigen::Index size_up_to(int level) const;
  /// All vectors of levels 0..max_level, concatenated column-wise.
  [[nodiscard]] DenseMatrix stacked(int max_level) const;
};

/// Rank decisions use orthonormalize_columns; the resulting pivot gap is kept
/// per level. Throws TruncationError when level_cap exceeds c - 1.
CyclicBasis cyclic_basis(const ParaRep& rep, int level_cap);

}  // namespace parasusy
