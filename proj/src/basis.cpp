#include "parasusy/basis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "parasusy/errors.hpp"

namespace parasusy {

namespace {

constexpr double kBinTolerance = 1e-6;

BigInt factorial(int k) {
  BigInt out = 1;
  for (int i = 2; i <= k; ++i) out *= i;
  return out;
}

double ratio(const BigInt& num, const BigInt& den) {
  return static_cast<double>(num) / static_cast<double>(den);
}

CreationWord repeat(Letter letter, int count) {
  return CreationWord(static_cast<std::size_t>(std::max(0, count)), letter);
}

CreationWord concat(std::initializer_list<CreationWord> parts) {
  CreationWord out;
  for (const auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  return out;
}

void check_label(const SubspaceLabel& label) {
  if (label.m < 0 || label.n < 0)
    throw std::invalid_argument("quantum numbers must be non-negative: " + label.str());
  if (label.two_s != 1 && label.two_s != -1)
    throw std::invalid_argument("s must be +1/2 or -1/2: " + label.str());
}

void check_level(const ParaRep& rep, int level) {
  if (level > rep.cutoff().level_cap())
    throw TruncationError("level " + std::to_string(level) + " beyond level cap " +
                          std::to_string(rep.cutoff().level_cap()));
}

}  // namespace

bool SubspaceLabel::exists(int p) const {
  if (m < 0 || n < 0 || n > p) return false;
  if (two_s == 1) return true;
  return m >= 1 && n >= 1 && n <= p - 1;
}

std::string SubspaceLabel::str() const {
  return "|" + std::to_string(m) + "," + std::to_string(n) + "," + (two_s > 0 ? "+" : "-") +
         "1/2>";
}

int expected_sector_dim(int p, int m, int n) {
  if (m < 0 || n < 0 || n > p) return 0;
  return (m >= 1 && n >= 1 && n <= p - 1) ? 2 : 1;
}

BracketFactorial bracket_factorial(int m, ParaOrder p) {
  if (m < 0) throw std::invalid_argument("bracket factorial of negative integer");
  auto bracket = [&p](int k) -> long long { return k + (k % 2 ? p.value() - 1 : 0); };
  BracketFactorial out;
  out.bracket = bracket(m);
  out.factorial = 1;
  for (int k = 1; k <= m; ++k) out.factorial *= bracket(k);
  return out;
}

BigInt monomial_norm_squared(int m, int n, ParaOrder p) {
  if (n < 0 || n > p.value()) throw std::invalid_argument("n must lie in 0..p");
  return factorial(p.value()) * factorial(n) * bracket_factorial(m, p).factorial /
         factorial(p.value() - n);
}

TransitionCoeff transition_coeff(int p, int m, int n) {
  if (n < 0 || n > p) throw std::invalid_argument("n must lie in 0..p");
  const double md = m;
  const double pd = p;
  const double odd = (m % 2 != 0) ? 2.0 : 0.0;  // 1 - (-1)^m
  return {std::sqrt(n * (p - n) * (md * md + md * pd + pd * pd * odd / 8.0))};
}

StateVector basis_monomial(const ParaRep& rep, const SubspaceLabel& label) {
  check_label(label);
  check_level(rep, label.m + label.n);
  if (label.two_s == 1)
    return apply_word(rep, concat({repeat(Letter::kFDag, label.n), repeat(Letter::kADag, label.m)}));
  if (label.m == 0 || label.n == 0) return StateVector::Zero(rep.dim());
  const StateVector paired =
      apply_word(rep, concat({repeat(Letter::kFDag, label.n - 1), {Letter::kPairDag},
                              repeat(Letter::kADag, label.m - 1)}));
  const StateVector plain =
      apply_word(rep, concat({repeat(Letter::kFDag, label.n), repeat(Letter::kADag, label.m)}));
  return static_cast<double>(rep.p()) * paired - plain;
}

StateVector closed_form_basis(const ParaRep& rep, const SubspaceLabel& label) {
  check_label(label);
  check_level(rep, label.m + label.n);
  const int p = rep.p();
  if (!label.exists(p)) return StateVector::Zero(rep.dim());
  const int m = label.m;
  const int n = label.n;
  double prefactor = 0.0;
  if (label.two_s == 1) {
    prefactor = std::sqrt(
        ratio(factorial(p - n), factorial(p) * factorial(n) * bracket_factorial(m, rep.order()).factorial));
  } else {
    const BigInt num = factorial(p - n - 1) * BigInt(m + (m % 2 != 0 ? 1 : 0));
    const BigInt den =
        factorial(p) * factorial(n - 1) * bracket_factorial(m + 1, rep.order()).factorial;
    prefactor = std::sqrt(ratio(num, den));
  }
  return prefactor * basis_monomial(rep, label);
}

SubspaceReport subspace_report(const ParaRep& rep, const CyclicBasis& fock, int m, int n) {
  if (m < 0 || n < 0) throw std::invalid_argument("quantum numbers must be non-negative");
  const int level = m + n;
  check_level(rep, level);
  if (static_cast<int>(fock.levels.size()) <= level)
    throw std::invalid_argument("cyclic basis does not reach level " + std::to_string(level));

  SubspaceReport out;
  out.m = m;
  out.n = n;
  const DenseMatrix& span = fock.levels[static_cast<std::size_t>(level)].vectors;
  if (span.cols() == 0) return out;

  // m + lambda n separates sectors because m <= level < lambda
  const double lambda = level + 1.0;
  const DenseMatrix combined =
      span.adjoint() * (rep.op(Operator::kNumA) * span + lambda * (rep.op(Operator::kNumF) * span));
  Eigen::SelfAdjointEigenSolver<DenseMatrix> sectors(0.5 * (combined + combined.adjoint()));
  const double target = m + lambda * n;
  std::vector<Eigen::Index> picked;
  for (Eigen::Index i = 0; i < sectors.eigenvalues().size(); ++i) {
    const double ev = sectors.eigenvalues()(i);
    if (std::abs(ev - target) <= kBinTolerance) picked.push_back(i);
    const double nearest = std::round(ev);
    if (std::abs(ev - nearest) > kBinTolerance)
      throw NumericalError("number-operator eigenvalue " + std::to_string(ev) +
                           " is not an integer combination");
  }
  if (picked.empty()) return out;

  DenseMatrix sector(rep.dim(), static_cast<Eigen::Index>(picked.size()));
  for (std::size_t k = 0; k < picked.size(); ++k)
    sector.col(static_cast<Eigen::Index>(k)) = span * sectors.eigenvectors().col(picked[k]);

  const DenseMatrix grading = sector.adjoint() * (rep.op(Operator::kGrading) * sector);
  Eigen::SelfAdjointEigenSolver<DenseMatrix> graded(0.5 * (grading + grading.adjoint()));
  const DenseMatrix eigen_basis = sector * graded.eigenvectors();

  out.dim = static_cast<int>(picked.size());
  out.closed_form_overlap = 1.0;
  // eigenvalues ascend, so walk backwards to list s = +1/2 first
  for (Eigen::Index k = eigen_basis.cols() - 1; k >= 0; --k) {
    const double ev = graded.eigenvalues()(k);
    int two_s = 0;
    if (std::abs(ev - 0.5) <= kBinTolerance)
      two_s = 1;
    else if (std::abs(ev + 0.5) <= kBinTolerance)
      two_s = -1;
    else
      throw NumericalError("N_s eigenvalue " + std::to_string(ev) + " in sector (" +
                           std::to_string(m) + "," + std::to_string(n) + ") is not +-1/2");
    SectorVector sv;
    sv.label = {m, n, two_s};
    sv.grading = ev;
    sv.vector = eigen_basis.col(k);
    const StateVector reference = closed_form_basis(rep, sv.label);
    const Complex overlap = reference.dot(sv.vector);
    if (std::abs(overlap) > 0.0) sv.vector *= std::conj(overlap) / std::abs(overlap);
    out.closed_form_overlap = std::min(out.closed_form_overlap, std::abs(overlap));
    out.grading_residual = std::max(
        out.grading_residual,
        (rep.op(Operator::kGrading) * sv.vector - sv.label.s() * sv.vector).norm());
    out.vectors.push_back(std::move(sv));
  }

  DenseMatrix stacked(rep.dim(), out.dim);
  for (int k = 0; k < out.dim; ++k) stacked.col(k) = out.vectors[static_cast<std::size_t>(k)].vector;
  const DenseMatrix gram = stacked.adjoint() * stacked;
  out.gram_residual = (gram - DenseMatrix::Identity(out.dim, out.dim)).cwiseAbs().maxCoeff();
  return out;
}

SubspaceReport subspace_report(const ParaRep& rep, int m, int n) {
  return subspace_report(rep, cyclic_basis(rep, m + n), m, n);
}

double TransitionReport::worst() const {
  return std::max({t_raise_residual, t_lower_residual, ladder_plus_residual,
                   ladder_minus_residual, ladder_dag_plus_residual, ladder_dag_minus_residual,
                   charge_sector_residual, charge_dag_sector_residual});
}

namespace {

double sector_leak(const ParaRep& rep, const StateVector& w, int m, int n) {
  const double scale = std::max(1.0, w.norm());
  const StateVector da = rep.op(Operator::kNumA) * w - static_cast<double>(m) * w;
  const StateVector df = rep.op(Operator::kNumF) * w - static_cast<double>(n) * w;
  return (da.norm() + df.norm()) / scale;
}

}  // namespace

TransitionReport verify_transitions(const ParaRep& rep, const SubspaceReport& sector) {
  if (sector.dim != 2)
    throw std::invalid_argument("sector (" + std::to_string(sector.m) + "," +
                                std::to_string(sector.n) + ") is " + std::to_string(sector.dim) +
                                "-dimensional; transitions need two states");
  TransitionReport out;
  out.m = sector.m;
  out.n = sector.n;
  out.expected = transition_coeff(rep.p(), sector.m, sector.n).value;
  const StateVector& plus = sector.vectors[0].vector;
  const StateVector& minus = sector.vectors[1].vector;
  const double k = out.expected;

  const StateVector t_plus = rep.op(Operator::kTransition) * plus;
  const StateVector t_minus = rep.op(Operator::kTransition) * minus;
  out.measured = minus.dot(t_plus).real();
  out.t_raise_residual = (t_plus - k * minus).norm();
  out.t_lower_residual = (t_minus - k * plus).norm();
  out.ladder_plus_residual = (rep.op(Operator::kLadder) * plus - k * minus).norm();
  out.ladder_minus_residual = (rep.op(Operator::kLadder) * minus).norm();
  out.ladder_dag_plus_residual = (rep.op(Operator::kLadderDag) * plus).norm();
  out.ladder_dag_minus_residual = (rep.op(Operator::kLadderDag) * minus - k * plus).norm();

  for (const StateVector* v : {&plus, &minus}) {
    out.charge_sector_residual =
        std::max(out.charge_sector_residual,
                 sector_leak(rep, rep.op(Operator::kCharge) * *v, sector.m + 1, sector.n - 1));
    out.charge_dag_sector_residual =
        std::max(out.charge_dag_sector_residual,
                 sector_leak(rep, rep.op(Operator::kChargeDag) * *v, sector.m - 1, sector.n + 1));
  }
  return out;
}

std::vector<SubspaceLabel> trusted_labels(int p, int level_cap) {
  std::vector<SubspaceLabel> out;
  for (int level = 0; level <= level_cap; ++level)
    for (int m = level; m >= 0; --m)
      for (int two_s : {1, -1}) {
        SubspaceLabel label{m, level - m, two_s};
        if (label.exists(p)) out.push_back(label);
      }
  return out;
}

BasisCompleteness basis_completeness(const ParaRep& rep, const CyclicBasis& fock, int level_cap) {
  const auto labels = trusted_labels(rep.p(), level_cap);
  BasisCompleteness out;
  out.count = static_cast<int>(labels.size());
  DenseMatrix closed(rep.dim(), out.count);
  for (int k = 0; k < out.count; ++k) closed.col(k) = closed_form_basis(rep, labels[static_cast<std::size_t>(k)]);
  const DenseMatrix gram = closed.adjoint() * closed;
  out.gram_residual = out.count == 0
                          ? 0.0
                          : (gram - DenseMatrix::Identity(out.count, out.count)).cwiseAbs().maxCoeff();

  const DenseMatrix cyclic = fock.stacked(level_cap);
  out.cyclic_count = static_cast<int>(cyclic.cols());
  double span = 0.0;
  for (Eigen::Index j = 0; j < cyclic.cols(); ++j)
    span = std::max(span, (cyclic.col(j) - closed * (closed.adjoint() * cyclic.col(j))).norm());
  for (Eigen::Index j = 0; j < closed.cols(); ++j)
    span = std::max(span, (closed.col(j) - cyclic * (cyclic.adjoint() * closed.col(j))).norm());
  out.span_residual = span;
  return out;
}

}  // namespace parasusy

namespace parasusy {

std::vector<SectorRow> sector_table(const ParaRep& rep, const CyclicBasis& fock, int level_cap) {
  std::vector<SectorRow> rows;
  for (int level = 0; level <= level_cap; ++level)
    for (int m = level; m >= 0; --m) {
      const int n = level - m;
      if (n > rep.p() + 1) continue;
      SectorRow row;
      row.report = subspace_report(rep, fock, m, n);
      row.expected_dim = expected_sector_dim(rep.p(), m, n);
      if (row.report.dim == 2) row.transitions = verify_transitions(rep, row.report);
      rows.push_back(std::move(row));
    }
  return rows;
}

}  // namespace parasusy
