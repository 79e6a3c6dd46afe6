#include <set>

#include "doctest.h"
#include "oracle.hpp"

#include "parasusy/conventions.hpp"
#include "parasusy/errors.hpp"
#include "parasusy/rep.hpp"

using namespace parasusy;

TEST_CASE("value types reject invalid input") {
  CHECK_THROWS_AS(ParaOrder(0), std::invalid_argument);
  CHECK_THROWS_AS(ParaOrder(-2), std::invalid_argument);
  CHECK(ParaOrder(3).value() == 3);

  CHECK_THROWS_AS(Cutoff(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(Cutoff(6, -1), std::invalid_argument);
  CHECK_THROWS_AS(Cutoff(6, 6), TruncationError);
  CHECK_NOTHROW(Cutoff(6, 5));
  CHECK(Cutoff::with_default_levels(6).level_cap() == 5);
  CHECK(Cutoff(6, 2).max_trusted_level() == 5);
}

TEST_CASE("convention strings round trip over the whole grid") {
  const auto grid = GreenConvention::grid();
  REQUIRE(grid.size() == 16);
  std::set<int> seen;
  for (const auto& g : grid) {
    CHECK(GreenConvention::parse(g.to_string()) == g);
    seen.insert(g.canonical_index());
  }
  CHECK(seen.size() == 16);
  CHECK(*seen.begin() == 0);
  CHECK(*seen.rbegin() == 15);
  CHECK(GreenConvention::parse("combined/boson").canonical_index() == 13);
  CHECK_THROWS_AS(GreenConvention::parse("combined"), std::invalid_argument);
  CHECK_THROWS_AS(GreenConvention::parse("combined/spin"), std::invalid_argument);
}

TEST_CASE("operator table") {
  for (Operator op : all_operators()) {
    CHECK(operator_from_name(name_of(op)) == op);
    CHECK(partner_of(partner_of(op)) == op);
  }
  CHECK(!operator_from_name("b").has_value());
  CHECK(partner_of(Operator::kA) == Operator::kADag);
  CHECK(partner_of(Operator::kHamiltonian) == Operator::kHamiltonian);
  CHECK(raise_bound(Operator::kADag) == 1);
  CHECK(raise_bound(Operator::kA) == 0);
  CHECK(raise_bound(Operator::kFDag) == 0);
  CHECK(raise_bound(Operator::kTransition) == 1);
}

TEST_CASE("creation words") {
  const auto w = parse_word("  a+ f+  f+ ");
  REQUIRE(w.size() == 3);
  CHECK(w[0] == Letter::kADag);
  CHECK(format_word(w) == "a+ f+ f+");
  CHECK(parse_word("").empty());
  CHECK_THROWS_AS(parse_word("a+ b+"), std::invalid_argument);
  CHECK_THROWS_AS(parse_word("a"), std::invalid_argument);
  CHECK(word_level({Letter::kADag, Letter::kPairDag}) == 3);
}

TEST_CASE("dimensions") {
  const auto conv = GreenConvention::parse("combined/boson");
  CHECK(build_rep(ParaOrder(1), Cutoff(4, 3), conv).dim() == 10);
  CHECK(build_rep(ParaOrder(3), Cutoff(6, 5), conv).dim() == 2744);
  BuildLimits tight;
  tight.max_dimension = 100;
  CHECK_THROWS_AS(build_rep(ParaOrder(3), Cutoff(6, 5), conv, tight), std::length_error);
}

TEST_CASE("vacuum conditions") {
  for (int p = 1; p <= 3; ++p) {
    CAPTURE(p);
    const ParaRep rep = build_rep(ParaOrder(p), Cutoff(4, 3), discover_convention(ParaOrder(p)));
    const StateVector& vac = rep.vacuum();
    CHECK(vac.norm() == doctest::Approx(1.0));
    CHECK((rep.op(Operator::kA) * vac).norm() < 1e-12);
    CHECK((rep.op(Operator::kF) * vac).norm() < 1e-12);
    const StateVector aa = rep.op(Operator::kA) * (rep.op(Operator::kADag) * vac);
    const StateVector ff = rep.op(Operator::kF) * (rep.op(Operator::kFDag) * vac);
    CHECK((aa - double(p) * vac).norm() < 1e-12);
    CHECK((ff - double(p) * vac).norm() < 1e-12);
  }
}

TEST_CASE("raw matrices are mutual adjoints") {
  const ParaRep rep = build_rep(ParaOrder(2), Cutoff(3, 2), GreenConvention::parse("combined/boson"));
  const SparseOp a_adj = SparseOp(rep.op(Operator::kA).adjoint());
  const SparseOp f_adj = SparseOp(rep.op(Operator::kF).adjoint());
  CHECK((a_adj - rep.op(Operator::kADag)).norm() < 1e-14);
  CHECK((f_adj - rep.op(Operator::kFDag)).norm() < 1e-14);
}

TEST_CASE("apply_word agrees with direct matrix products and guards the level cap") {
  const ParaRep rep = build_rep(ParaOrder(2), Cutoff(5, 3), discover_convention(ParaOrder(2)));
  const auto w = parse_word("a+ f+ a+");
  CHECK((apply_word(rep, w) - oracle::act(oracle::raw(rep), w)).norm() < 1e-12);
  CHECK_THROWS_AS(apply_word(rep, parse_word("a+ a+ f+ f+")), TruncationError);
  CHECK((apply_word(rep, {}) - rep.vacuum()).norm() == 0.0);
}

TEST_CASE("cyclic basis sizes follow the level degeneracies") {
  const ParaRep rep = build_rep(ParaOrder(3), Cutoff(5, 4), discover_convention(ParaOrder(3)));
  const CyclicBasis fock = cyclic_basis(rep, 4);
  REQUIRE(fock.levels.size() == 5);
  for (const auto& lvl : fock.levels)
    CHECK(lvl.vectors.cols() == oracle::level_degeneracy(3, lvl.level));
  CHECK(fock.size() == 19);
  CHECK(fock.size_up_to(2) == 7);
  const DenseMatrix s = fock.stacked(4);
  CHECK((s.adjoint() * s - DenseMatrix::Identity(19, 19)).norm() < 1e-10);
  CHECK_THROWS_AS(cyclic_basis(rep, 5), TruncationError);
}

TEST_CASE("boson occupation index") {
  const ParaRep rep = build_rep(ParaOrder(2), Cutoff(3, 2), GreenConvention::parse("combined/boson"));
  CHECK(rep.boson_occupation(0) == 0);
  CHECK(rep.boson_occupation(rep.dim() - 1) == 6);
}

TEST_CASE("library matrices equal an independent Green assembly") {
  for (int p = 1; p <= 3; ++p) {
    CAPTURE(p);
    const ParaRep rep = build_rep(ParaOrder(p), Cutoff(3, 2), discover_convention(ParaOrder(p)));
    const oracle::Raw ref = oracle::green(p, 3);
    CHECK((rep.op(Operator::kADag) - ref.adag).norm() < 1e-14);
    CHECK((rep.op(Operator::kFDag) - ref.fdag).norm() < 1e-14);
    CHECK((rep.vacuum() - ref.vacuum).norm() == 0.0);
  }
}
