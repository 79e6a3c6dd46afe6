#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>

#include "parasusy/basis.hpp"
#include "parasusy/rep.hpp"

namespace parasusy {

/// word|0> = alpha f+^n a+^m |0> + beta f+^(n-1) a+^(m-1) F+ |0>.
/// The beta monomial is absent (beta = 0) when m = 0 or n = 0.
struct NormalForm {
  BigInt alpha = 0;
  BigInt beta = 0;
  int m = 0;
  int n = 0;

  friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

/// Linear combination of creation monomials with exact integer coefficients.
/// Terms with zero coefficient are never stored.
using TermMap = std::map<CreationWord, BigInt>;

/// One rewriting step at `position` of `word`, or nothing if the letter pair
/// there is not a redex. Rules:
///   a+ f+ -> -f+ a+ + 2 F+,  F+ f+ -> -f+ F+,  F+ a+ -> a+ F+,  F+ F+ -> 0.
[[nodiscard]] bool is_redex(const CreationWord& word, std::size_t position);
TermMap rewrite_at(const CreationWord& word, std::size_t position);

/// Rewrites to the fixpoint, always taking the leftmost redex of the
/// lexicographically smallest pending term.
TermMap normalize(const TermMap& input);
/// Same fixpoint, but the pending term and the redex inside it are chosen
/// uniformly at random.
TermMap normalize(const TermMap& input, std::mt19937_64& rng);

/// Collects a normalized term map into the two-coefficient normal form.
/// Throws std::logic_error if a term outside f+^n a+^m (F+)^{0,1} survives.
NormalForm collect(const TermMap& normalized, int m, int n);

NormalForm reduce(const CreationWord& word);
NormalForm reduce(const CreationWord& word, std::mt19937_64& rng);

struct AnnotatedNormalForm {
  NormalForm form;
  /// n >= p + 1: both monomials vanish in the order-p Fock space.
  bool vanishes = false;
  /// n = p, m >= 1: the beta monomial is a multiple of the alpha monomial.
  bool beta_dependent = false;
};

AnnotatedNormalForm semantic_vanishing(const NormalForm& form, ParaOrder p);

/// |word|0> - (alpha f+^n a+^m + beta f+^(n-1) a+^(m-1) F+)|0>| divided by
/// max(1, larger norm). Primitive letters only.
double validate_reduction(const ParaRep& rep, const CreationWord& word);
double validate_reduction(const ParaRep& rep, const CreationWord& word, const NormalForm& form);

}  // namespace parasusy
