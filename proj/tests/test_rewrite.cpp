#include <random>

#include "doctest.h"
#include "oracle.hpp"

#include "parasusy/conventions.hpp"
#include "parasusy/errors.hpp"
#include "parasusy/rewrite.hpp"

using namespace parasusy;

namespace {

int sign(int k) { return k % 2 == 0 ? 1 : -1; }

ParaRep oracle_rep(int p, int c) {
  return build_rep(ParaOrder(p), Cutoff::with_default_levels(c), discover_convention(ParaOrder(p)));
}

double oracle_residual(const oracle::Raw& ops, const CreationWord& word, const NormalForm& nf) {
  return oracle::combination_residual(oracle::act(ops, word), oracle::monomial(ops, nf.m, nf.n),
                                      oracle::beta_vector(ops, nf.m, nf.n),
                                      nf.alpha.convert_to<double>(), nf.beta.convert_to<double>());
}

}  // namespace

TEST_CASE("single rule a+ f+^k") {
  for (int k = 1; k <= 7; ++k) {
    const auto nf = reduce(oracle::display_word({k}));
    CHECK(nf.alpha == sign(k));
    CHECK(nf.beta == sign(k - 1) * 2 * k);
    CHECK(nf.m == 1);
    CHECK(nf.n == k);
  }
  const auto nf = reduce(parse_word("a+ f+"));
  CHECK(nf == NormalForm{-1, 2, 1, 1});
}

TEST_CASE("two-block expansion") {
  for (int k1 = 1; k1 <= 4; ++k1)
    for (int k2 = 1; k2 <= 4; ++k2) {
      const auto nf = reduce(oracle::display_word({k1, k2}));
      CHECK(nf.alpha == sign(k1));
      CHECK(nf.beta == sign(k1 - 1) * 2 * k1);
      CHECK(nf.m == 2);
      CHECK(nf.n == k1 + k2);
    }
}

TEST_CASE("three-block expansion") {
  // alpha always matches the displayed (-1)^(k1+k3); beta carries
  // (-1)^(k1+k3+1), which equals the displayed (-1)^k2 for odd k1+k2+k3
  for (int k1 = 1; k1 <= 3; ++k1)
    for (int k2 = 1; k2 <= 3; ++k2)
      for (int k3 = 1; k3 <= 3; ++k3) {
        CAPTURE(k1);
        CAPTURE(k2);
        CAPTURE(k3);
        const auto nf = reduce(oracle::display_word({k1, k2, k3}));
        CHECK(nf.alpha == sign(k1 + k3));
        CHECK(nf.beta == sign(k1 + k3 + 1) * 2 * (k1 + k3));
        if ((k1 + k2 + k3) % 2 == 1) CHECK(nf.beta == sign(k2) * 2 * (k1 + k3));
        CHECK(nf.m == 3);
        CHECK(nf.n == k1 + k2 + k3);
      }
}

TEST_CASE("three-block sign settled by the matrices") {
  const auto word = oracle::display_word({1, 2, 1});
  const auto nf = reduce(word);
  REQUIRE(nf.beta == -4);

  // p = 5 keeps n = 4 below p, so the two basic vectors are independent
  // and the fitted coefficients are unique
  {
    const oracle::Raw ops = oracle::green(5, 3);
    const auto fit = oracle::fit(oracle::act(ops, word), oracle::monomial(ops, 3, 4),
                                 oracle::beta_vector(ops, 3, 4));
    REQUIRE(fit.independent);
    CHECK(fit.residual < 1e-10);
    CHECK(fit.alpha.real() == doctest::Approx(1.0));
    CHECK(fit.beta.real() == doctest::Approx(-4.0));
  }
  // p = 4: the displayed sign +4 leaves an O(1) residual
  {
    const oracle::Raw ops = oracle::green(4, 3);
    CHECK(oracle_residual(ops, word, nf) < 1e-10);
    NormalForm displayed = nf;
    displayed.beta = 4;
    CHECK(oracle_residual(ops, word, displayed) > 1e-2);
  }
}

TEST_CASE("normal words are fixed points") {
  CHECK(reduce(parse_word("f+ f+ a+ a+")) == NormalForm{1, 0, 2, 2});
  CHECK(reduce({}) == NormalForm{1, 0, 0, 0});
  CHECK(reduce(parse_word("a+ a+ a+")) == NormalForm{1, 0, 3, 0});
}

TEST_CASE("rules") {
  CHECK(is_redex(parse_word("a+ f+"), 0));
  CHECK_FALSE(is_redex(parse_word("f+ a+"), 0));
  CHECK_FALSE(is_redex(parse_word("a+ f+"), 1));
  const CreationWord pf{Letter::kPairDag, Letter::kFDag};
  const CreationWord pa{Letter::kPairDag, Letter::kADag};
  const CreationWord pp{Letter::kPairDag, Letter::kPairDag};
  CHECK(rewrite_at(pf, 0) == TermMap{{{Letter::kFDag, Letter::kPairDag}, -1}});
  CHECK(rewrite_at(pa, 0) == TermMap{{{Letter::kADag, Letter::kPairDag}, 1}});
  CHECK(rewrite_at(pp, 0).empty());
  CHECK_THROWS_AS(rewrite_at(parse_word("f+ a+"), 0), std::invalid_argument);
  CHECK_THROWS_AS(collect(TermMap{{parse_word("a+ f+"), 1}}, 1, 1), std::logic_error);
}

TEST_CASE("letter conservation and confluence on random words") {
  std::mt19937_64 words(2024);
  std::mt19937_64 order(99);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto word = oracle::random_word(words, 8);
    const auto nf = reduce(word);
    CHECK(nf.m == oracle::count(word, Letter::kADag));
    CHECK(nf.n == oracle::count(word, Letter::kFDag));
    for (int shuffle = 0; shuffle < 3; ++shuffle) CHECK(reduce(word, order) == nf);
  }
}

TEST_CASE("every word up to length 8 matches the matrices for p = 1..3") {
  for (int p = 1; p <= 3; ++p) {
    const oracle::Raw ops = oracle::green(p, 9);
    double worst = 0.0;
    int checked = 0;
    for (int len = 0; len <= 8; ++len)
      for (const auto& word : oracle::all_words(len)) {
        const auto nf = reduce(word);
        const double r = oracle_residual(ops, word, nf);
        worst = std::max(worst, r);
        ++checked;
        if (r > 1e-10) {
          CAPTURE(format_word(word));
          CHECK(r <= 1e-10);
        }
      }
    CAPTURE(p);
    CHECK(checked == 511);
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("library validation agrees with the oracle") {
  const ParaRep rep = oracle_rep(3, 7);
  CHECK(validate_reduction(rep, parse_word("a+ f+")) <= 1e-10);
  CHECK(validate_reduction(rep, parse_word("a+ f+ a+ f+ a+ f+")) <= 1e-10);
  CHECK(validate_reduction(rep, {}) == 0.0);
  NormalForm wrong = reduce(parse_word("a+ f+"));
  wrong.beta = -2;
  CHECK(validate_reduction(rep, parse_word("a+ f+"), wrong) > 1e-2);
  CHECK_THROWS_AS(validate_reduction(rep, parse_word("a+ a+ a+ f+ f+ f+ f+")), TruncationError);
  CHECK_THROWS_AS(validate_reduction(rep, {Letter::kPairDag}), std::invalid_argument);
}

TEST_CASE("semantic flags") {
  const auto over = semantic_vanishing(reduce(parse_word("f+ f+ f+ f+ a+")), ParaOrder(3));
  CHECK(over.vanishes);
  const auto at = semantic_vanishing(reduce(parse_word("a+ f+ f+ f+")), ParaOrder(3));
  CHECK_FALSE(at.vanishes);
  CHECK(at.beta_dependent);
  const auto below = semantic_vanishing(reduce(parse_word("a+ f+")), ParaOrder(3));
  CHECK_FALSE(below.vanishes);
  CHECK_FALSE(below.beta_dependent);
  CHECK(below.form == NormalForm{-1, 2, 1, 1});
}

TEST_CASE("special identity on the vacuum") {
  for (int p = 2; p <= 4; ++p) {
    CAPTURE(p);
    const oracle::Raw ops = oracle::green(p, 3);
    const auto lead = oracle::concat(oracle::letters(Letter::kFDag, p - 1),
                                     CreationWord{Letter::kADag, Letter::kFDag});
    const auto tail = oracle::concat(oracle::letters(Letter::kFDag, p), CreationWord{Letter::kADag});
    const StateVector v = double(p) * oracle::act(ops, lead) + double(p - 2) * oracle::act(ops, tail);
    CHECK(v.norm() <= 1e-10);
  }
}
