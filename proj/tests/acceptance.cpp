// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "oracle.hpp"

#include "parasusy/algebra.hpp"
#include "parasusy/basis.hpp"
#include "parasusy/conventions.hpp"
#include "parasusy/report.hpp"
#include "parasusy/rewrite.hpp"
#include "parasusy/susy.hpp"

using namespace parasusy;

namespace {

int failures = 0;

void report(int id, const char* title, bool ok, const std::string& detail) {
  std::printf("criterion %2d  %-4s  %-26s %s\n", id, ok ? "PASS" : "FAIL", title, detail.c_str());
  std::fflush(stdout);
  failures += !ok;
}

std::string fmt(double x) { return format_residual(x); }

ParaRep pinned_rep(int p, int cutoff, int level_cap) {
  return build_rep(ParaOrder(p), Cutoff(cutoff, level_cap), discover_convention(ParaOrder(p)));
}

int sign(int k) { return k % 2 == 0 ? 1 : -1; }

void convention_existence() {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  for (int p = 1; p <= 3; ++p) {
    const auto result = convention_search(ParaOrder(p), 3, 1e-10);
    const auto valid = result.valid();
    double worst = valid.empty() ? 1.0 : valid.front().worst_residual;
    ok = ok && !valid.empty() && worst <= 1e-10;
    detail += "p=" + std::to_string(p) + ": " + std::to_string(valid.size()) + " valid (" +
              (valid.empty() ? "none" : valid.front().convention.to_string()) + ", " + fmt(worst) +
              "); ";
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ok = ok && secs < 60.0;
  report(1, "convention existence", ok, detail + std::to_string(secs).substr(0, 5) + " s");
}

void relation_suite() {
  const ParaRep rep = pinned_rep(3, 6, 5);
  SuiteOptions options;
  options.probes = 8;
  options.tolerance = 1e-10;
  const auto checks = verify_suite(rep, options);
  int passed = 0;
  for (const auto& c : checks) passed += c.passed;
  const auto groups = relation_identities(3);
  int mixed = 0, auxiliary = 0, proof = 0;
  for (const auto& i : groups) {
    mixed += i.group == "mixed";
    auxiliary += i.group == "auxiliary";
    proof += i.group == "reduction";
  }
  const bool ok = all_passed(checks) && mixed >= 24 && auxiliary >= 12 && proof >= 4;
  report(2, "relation suite p=3 c=6", ok,
         std::to_string(passed) + "/" + std::to_string(checks.size()) + " pass, worst " +
             fmt(worst_residual(checks)) + " (" + std::to_string(mixed) + " mixed, " +
             std::to_string(auxiliary) + " auxiliary, " + std::to_string(proof) + " reduction)");
}

void sector_dimensions() {
  const ParaRep rep = pinned_rep(3, 6, 5);
  const CyclicBasis fock = cyclic_basis(rep, 5);
  bool ok = true;
  int sectors = 0;
  std::string bad;
  for (int m = 0; m <= 5; ++m)
    for (int n = 0; m + n <= 5; ++n) {
      const auto r = subspace_report(rep, fock, m, n);
      ++sectors;
      if (r.dim != oracle::sector_dim(3, m, n)) {
        ok = false;
        bad += " (" + std::to_string(m) + "," + std::to_string(n) + ")";
      }
    }
  report(3, "sector dimensions p=3", ok,
         std::to_string(sectors) + " sectors with m+n<=5 match" + (bad.empty() ? "" : "; mismatch" + bad));
}

void normalization() {
  bool ok = true;
  double worst_int = 0.0, worst_unit = 0.0, worst_gram = 0.0;
  for (int p = 2; p <= 3; ++p) {
    const ParaRep rep = pinned_rep(p, 6, 5);
    const auto ops = oracle::raw(rep);
    for (int m = 0; m <= 5; ++m)
      for (int n = 0; n <= p && m + n <= 5; ++n) {
        const double numeric = oracle::monomial(ops, m, n).squaredNorm();
        const long long exact = oracle::norm_squared(m, n, p);
        ok = ok && monomial_norm_squared(m, n, ParaOrder(p)) == exact;
        worst_int = std::max(worst_int, std::abs(numeric - double(exact)));
      }
    const auto labels = trusted_labels(p, 5);
    DenseMatrix vectors(rep.dim(), static_cast<Eigen::Index>(labels.size()));
    for (std::size_t i = 0; i < labels.size(); ++i) {
      vectors.col(static_cast<Eigen::Index>(i)) = closed_form_basis(rep, labels[i]);
      worst_unit = std::max(worst_unit, std::abs(vectors.col(static_cast<Eigen::Index>(i)).norm() - 1.0));
    }
    const DenseMatrix gram = vectors.adjoint() * vectors;
    worst_gram = std::max(
        worst_gram, (gram - DenseMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff());
  }
  ok = ok && worst_int <= 1e-6 && worst_unit <= 1e-8 && worst_gram <= 1e-8;
  report(4, "normalization p=2,3", ok,
         "|norm^2 - p!n![m]!/(p-n)!| " + fmt(worst_int) + ", unit " + fmt(worst_unit) + ", gram " +
             fmt(worst_gram));
}

void grading_and_transitions() {
  bool ok = true;
  double worst_grading = 0.0, worst_action = 0.0, worst_coeff = 0.0, spot = 0.0;
  int two_dim = 0;
  for (int p = 2; p <= 3; ++p) {
    const ParaRep rep = pinned_rep(p, 6, 5);
    const CyclicBasis fock = cyclic_basis(rep, 5);
    for (const auto& row : sector_table(rep, fock, 5)) {
      for (const auto& v : row.report.vectors)
        worst_grading = std::max(worst_grading, std::abs(v.grading - v.label.s()));
      worst_grading = std::max(worst_grading, row.report.grading_residual);
      if (!row.transitions) continue;
      ++two_dim;
      const auto& t = *row.transitions;
      worst_action = std::max(worst_action, t.worst());
      worst_coeff = std::max(worst_coeff, std::abs(t.expected - oracle::transition(p, t.m, t.n)));
      worst_coeff = std::max(worst_coeff, std::abs(std::abs(t.measured) - t.expected));
      if (p == 3 && t.m == 1 && t.n == 1) spot = std::abs(t.measured);
    }
  }
  const double spot_err = std::abs(spot - std::sqrt(12.5));
  ok = worst_grading <= 1e-10 && worst_action <= 1e-8 && worst_coeff <= 1e-8 && spot_err <= 1e-8;
  report(5, "grading and transitions", ok,
         "N_s " + fmt(worst_grading) + ", T/Q_s/Q_s+ actions " + fmt(worst_action) + " on " +
             std::to_string(two_dim) + " sectors, coeff " + fmt(worst_coeff) +
             ", T(3,1,1) = " + std::to_string(spot));
}

std::string join(const std::vector<int>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i]);
  return out;
}

std::vector<int> degeneracies(const SpectrumTable& t) {
  std::vector<int> out;
  for (const auto& l : t.levels) out.push_back(l.degeneracy);
  return out;
}

void spectrum_degeneracies() {
  const auto three = degeneracies(spectrum(pinned_rep(3, 6, 5), 5));
  const auto one = degeneracies(spectrum(pinned_rep(1, 6, 4), 4));
  const bool ok = three == std::vector<int>{1, 2, 4, 6, 6, 6} && one == std::vector<int>{1, 2, 2, 2, 2};
  report(6, "spectrum degeneracies", ok, "p=3: " + join(three) + "; p=1: " + join(one));
}

void witten_cancellation() {
  bool ok = true;
  std::string detail;
  for (int p = 1; p <= 3; ++p) {
    const auto table = spectrum(pinned_rep(p, 6, 5), 5);
    const auto w = witten_check(table);
    for (const auto& l : table.levels) {
      if (l.energy == 0) continue;
      int even = 0, odd = 0;
      for (const auto& s : l.states) (s.n % 2 == 0 ? even : odd) += 1;
      ok = ok && even == odd && l.witten_sum == 0;
    }
    ok = ok && w.cancels && w.half_split;
    detail += "p=" + std::to_string(p) + " sums " + join(w.level_sums) + "; ";
  }
  report(7, "Witten cancellation", ok, detail + "levels 1..5");
}

void special_identity() {
  bool ok = true;
  std::string detail;
  for (int p = 2; p <= 4; ++p) {
    const ParaRep rep = pinned_rep(p, 3, 2);
    const Expr ad = Expr::named(Operator::kADag);
    const Expr fd = Expr::named(Operator::kFDag);
    const Expr op = double(p) * (power(fd, p - 1) * ad * fd) + double(p - 2) * (power(fd, p) * ad);
    const double lib = eval_expr(rep, op, rep.vacuum()).norm();
    const auto ops = oracle::green(p, 3);
    const auto lead = oracle::concat(oracle::letters(Letter::kFDag, p - 1),
                                     CreationWord{Letter::kADag, Letter::kFDag});
    const auto tail = oracle::concat(oracle::letters(Letter::kFDag, p), CreationWord{Letter::kADag});
    const double ref = (double(p) * oracle::act(ops, lead) + double(p - 2) * oracle::act(ops, tail)).norm();
    ok = ok && lib <= 1e-10 && ref <= 1e-10;
    detail += (p > 2 ? "; p=" : "p=") + std::to_string(p) + " " + fmt(std::max(lib, ref));
  }
  report(8, "special identity", ok, detail + " (vacuum norm)");
}

void rewrite_engine() {
  bool displays = true;
  for (int k = 1; k <= 6; ++k) {
    const auto nf = reduce(oracle::display_word({k}));
    displays = displays && nf == NormalForm{sign(k), sign(k - 1) * 2 * k, 1, k};
  }
  for (int k1 = 1; k1 <= 4; ++k1)
    for (int k2 = 1; k2 <= 4; ++k2) {
      const auto nf = reduce(oracle::display_word({k1, k2}));
      displays = displays && nf == NormalForm{sign(k1), sign(k1 - 1) * 2 * k1, 2, k1 + k2};
    }
  // third display: alpha as printed everywhere, beta as printed for odd
  // k1+k2+k3; for even sums the matrices fix the sign to (-1)^(k1+k3+1)
  int agree = 0, corrected = 0;
  for (int k1 = 1; k1 <= 3; ++k1)
    for (int k2 = 1; k2 <= 3; ++k2)
      for (int k3 = 1; k3 <= 3; ++k3) {
        const auto nf = reduce(oracle::display_word({k1, k2, k3}));
        const int printed_beta = sign(k2) * 2 * (k1 + k3);
        displays = displays && nf.alpha == sign(k1 + k3) && nf.m == 3 && nf.n == k1 + k2 + k3;
        if ((k1 + k2 + k3) % 2 == 1) {
          displays = displays && nf.beta == printed_beta;
          ++agree;
        } else {
          displays = displays && nf.beta == -printed_beta;
          ++corrected;
        }
      }
  const auto ops5 = oracle::green(5, 3);
  const auto word = oracle::display_word({1, 2, 1});
  const auto fit = oracle::fit(oracle::act(ops5, word), oracle::monomial(ops5, 3, 4),
                               oracle::beta_vector(ops5, 3, 4));
  const bool sign_settled = fit.independent && fit.residual < 1e-10 &&
                            std::abs(fit.beta - Complex(reduce(word).beta.convert_to<double>())) < 1e-8;

  std::mt19937_64 rng(20240611);
  std::mt19937_64 order(7);
  std::uniform_int_distribution<int> pick_p(1, 3);
  std::vector<ParaRep> reps;
  std::vector<oracle::Raw> refs;
  for (int p = 1; p <= 3; ++p) {
    reps.push_back(pinned_rep(p, 9, 8));
    refs.push_back(oracle::green(p, 9));
  }
  double worst_lib = 0.0, worst_ref = 0.0;
  bool confluent = true;
  for (int trial = 0; trial < 1000; ++trial) {
    const int p = pick_p(rng);
    const auto w = oracle::random_word(rng, 8);
    const auto nf = reduce(w);
    for (int s = 0; s < 3; ++s) confluent = confluent && reduce(w, order) == nf;
    worst_lib = std::max(worst_lib, validate_reduction(reps[p - 1], w, nf));
    const auto& ops = refs[p - 1];
    worst_ref = std::max(worst_ref, oracle::combination_residual(
                                        oracle::act(ops, w), oracle::monomial(ops, nf.m, nf.n),
                                        oracle::beta_vector(ops, nf.m, nf.n),
                                        nf.alpha.convert_to<double>(), nf.beta.convert_to<double>()));
  }
  const bool ok = displays && sign_settled && confluent && worst_lib <= 1e-8 && worst_ref <= 1e-8;
  report(9, "rewrite engine", ok,
         std::string("displays ") + (displays ? "ok" : "MISMATCH") + " (third: " +
             std::to_string(agree) + " as printed, " + std::to_string(corrected) +
             " with matrix-fixed beta sign" + (sign_settled ? ", confirmed at p=5" : ", NOT confirmed") +
             "); 1000 words oracle " + fmt(std::max(worst_lib, worst_ref)) + ", confluence " +
             (confluent ? "ok" : "BROKEN"));
}

std::vector<double> quantities(int p, int cutoff) {
  const int cap = 4;
  const ParaRep rep = pinned_rep(p, cutoff, cap);
  const CyclicBasis fock = cyclic_basis(rep, cap);
  std::vector<double> q;
  for (const auto& row : sector_table(rep, fock, cap)) {
    q.push_back(row.report.dim);
    q.push_back(row.report.closed_form_overlap);
    for (const auto& v : row.report.vectors) q.push_back(v.grading);
    if (row.transitions) {
      q.push_back(std::abs(row.transitions->measured));
      q.push_back(row.transitions->worst());
    }
  }
  const auto c = basis_completeness(rep, fock, cap);
  q.push_back(c.count);
  q.push_back(c.cyclic_count);
  const auto ops = oracle::raw(rep);
  for (int m = 0; m <= cap; ++m)
    for (int n = 0; n <= p && m + n <= cap; ++n) q.push_back(oracle::monomial(ops, m, n).squaredNorm());
  const auto table = spectrum(rep, fock, cap);
  for (const auto& l : table.levels) {
    q.push_back(l.degeneracy);
    q.push_back(l.witten_sum);
    for (double e : l.eigenvalues) q.push_back(e);
  }
  for (const auto& check : verify_suite(rep)) q.push_back(check.residual);
  return q;
}

void truncation_stability() {
  bool ok = true;
  double worst = 0.0;
  std::size_t count = 0;
  for (int p = 1; p <= 3; ++p) {
    const auto small = quantities(p, 5);
    const auto large = quantities(p, 7);
    if (small.size() != large.size()) {
      ok = false;
      continue;
    }
    count += small.size();
    for (std::size_t i = 0; i < small.size(); ++i)
      worst = std::max(worst, std::abs(small[i] - large[i]));
  }
  ok = ok && worst <= 1e-9;
  report(10, "truncation stability", ok,
         std::to_string(count) + " quantities at level cap 4, cutoff 5 vs 7: max change " + fmt(worst));
}

}  // namespace

int main() {
  convention_existence();
  relation_suite();
  sector_dimensions();
  normalization();
  grading_and_transitions();
  spectrum_degeneracies();
  witten_cancellation();
  special_identity();
  rewrite_engine();
  truncation_stability();
  std::printf("%d of 10 criteria pass\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
