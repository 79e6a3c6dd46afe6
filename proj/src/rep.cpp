#include "parasusy/rep.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "parasusy/errors.hpp"

namespace parasusy {

ParaOrder::ParaOrder(int p) : p_(p) {
  if (p < 1) throw std::invalid_argument("parastatistics order must be >= 1, got " + std::to_string(p));
}

Cutoff::Cutoff(int per_component, int level_cap) : c_(per_component), level_cap_(level_cap) {
  if (per_component < 2)
    throw std::invalid_argument("cutoff must be >= 2, got " + std::to_string(per_component));
  if (level_cap < 0) throw std::invalid_argument("level cap must be non-negative");
  if (level_cap > per_component - kGuard)
    throw TruncationError("level cap " + std::to_string(level_cap) + " exceeds trusted range " +
                          std::to_string(per_component - kGuard) + " for cutoff " +
                          std::to_string(per_component));
}

Cutoff Cutoff::with_default_levels(int per_component) {
  return {per_component, std::max(0, per_component - kGuard)};
}

namespace {

constexpr std::array<std::string_view, 4> kChargeNames = {"identity", "boson", "fermion",
                                                          "combined"};

constexpr std::array<std::string_view, kOperatorCount> kOperatorNames = {
    "a", "a+", "f", "f+", "Na", "Nf", "F", "F+", "Q", "Q+", "Ns", "T", "Qs", "Qs+", "H"};

}  // namespace

std::string_view to_string(KleinCharge charge) {
  return kChargeNames[static_cast<std::size_t>(charge)];
}

KleinCharge klein_charge_from_string(std::string_view text) {
  for (std::size_t i = 0; i < kChargeNames.size(); ++i)
    if (kChargeNames[i] == text) return static_cast<KleinCharge>(i);
  throw std::invalid_argument("unknown Klein charge '" + std::string(text) +
                              "' (expected identity|boson|fermion|combined)");
}

std::string GreenConvention::to_string() const {
  std::string out(parasusy::to_string(boson_ops));
  out += '/';
  out += parasusy::to_string(fermion_ops);
  return out;
}

GreenConvention GreenConvention::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos)
    throw std::invalid_argument("convention must look like '<boson>/<fermion>', got '" +
                                std::string(text) + "'");
  return {klein_charge_from_string(text.substr(0, slash)),
          klein_charge_from_string(text.substr(slash + 1))};
}

int GreenConvention::canonical_index() const {
  return 4 * static_cast<int>(boson_ops) + static_cast<int>(fermion_ops);
}

std::vector<GreenConvention> GreenConvention::grid() {
  std::vector<GreenConvention> out;
  for (int b = 0; b < 4; ++b)
    for (int f = 0; f < 4; ++f)
      out.push_back({static_cast<KleinCharge>(b), static_cast<KleinCharge>(f)});
  return out;
}

std::string_view name_of(Operator op) { return kOperatorNames[static_cast<std::size_t>(op)]; }

std::optional<Operator> operator_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kOperatorNames.size(); ++i)
    if (kOperatorNames[i] == name) return static_cast<Operator>(i);
  return std::nullopt;
}

Operator partner_of(Operator op) {
  switch (op) {
    case Operator::kA: return Operator::kADag;
    case Operator::kADag: return Operator::kA;
    case Operator::kF: return Operator::kFDag;
    case Operator::kFDag: return Operator::kF;
    case Operator::kPair: return Operator::kPairDag;
    case Operator::kPairDag: return Operator::kPair;
    case Operator::kCharge: return Operator::kChargeDag;
    case Operator::kChargeDag: return Operator::kCharge;
    case Operator::kLadder: return Operator::kLadderDag;
    case Operator::kLadderDag: return Operator::kLadder;
    default: return op;  // self-adjoint
  }
}

int raise_bound(Operator op) {
  switch (op) {
    case Operator::kA:
    case Operator::kF:
    case Operator::kFDag:
    case Operator::kNumF:
    case Operator::kPair:
    case Operator::kChargeDag:
    case Operator::kGrading:
      return 0;
    default:
      return 1;
  }
}

const std::array<Operator, kOperatorCount>& all_operators() {
  static const auto ops = [] {
    std::array<Operator, kOperatorCount> out{};
    for (std::size_t i = 0; i < kOperatorCount; ++i) out[i] = static_cast<Operator>(i);
    return out;
  }();
  return ops;
}

CreationWord parse_word(std::string_view text) {
  CreationWord word;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    if (token == "a+")
      word.push_back(Letter::kADag);
    else if (token == "f+")
      word.push_back(Letter::kFDag);
    else
      throw std::invalid_argument("unexpected token '" + token + "' in word (expected a+ or f+)");
  }
  return word;
}

std::string format_word(const CreationWord& word) {
  std::string out;
  for (auto letter : word) {
    if (!out.empty()) out += ' ';
    switch (letter) {
      case Letter::kADag: out += "a+"; break;
      case Letter::kFDag: out += "f+"; break;
      case Letter::kPairDag: out += "F+"; break;
    }
  }
  return out;
}

int ParaRep::boson_occupation(Eigen::Index basis_index) const {
  return occupation_[static_cast<std::size_t>(basis_index)];
}

namespace {

int parity_sign(KleinCharge charge, int occupation, int fermion_bit) {
  int sign = 1;
  const int bits = static_cast<int>(charge);
  if ((bits & 1) && (occupation & 1)) sign = -sign;
  if ((bits & 2) && fermion_bit) sign = -sign;
  return sign;
}

}  // namespace

ParaRep build_rep(ParaOrder p, Cutoff cutoff, GreenConvention convention, BuildLimits limits) {
  const int order = p.value();
  const int c = cutoff.per_component();
  const Eigen::Index local = 2 * (c + 1);

  double dim_estimate = std::pow(static_cast<double>(local), order);
  if (dim_estimate > static_cast<double>(limits.max_dimension))
    throw std::length_error("representation dimension " + std::to_string(dim_estimate) +
                            " exceeds limit " + std::to_string(limits.max_dimension));

  ParaRep rep(p, cutoff, convention);
  Eigen::Index dim = 1;
  for (int i = 0; i < order; ++i) dim *= local;
  rep.dim_ = dim;

  // Component alpha is the (p-1-alpha)-th base-`local` digit; inside a
  // component the local index is occupation * 2 + fermion bit.
  std::vector<Eigen::Index> stride(static_cast<std::size_t>(order));
  {
    Eigen::Index s = 1;
    for (int alpha = order - 1; alpha >= 0; --alpha) {
      stride[static_cast<std::size_t>(alpha)] = s;
      s *= local;
    }
  }

  rep.occupation_.assign(static_cast<std::size_t>(dim), 0);
  std::vector<Eigen::Triplet<Complex>> a_entries;
  std::vector<Eigen::Triplet<Complex>> f_entries;
  a_entries.reserve(static_cast<std::size_t>(dim * order));
  f_entries.reserve(static_cast<std::size_t>(dim * order));

  std::vector<int> occ(static_cast<std::size_t>(order));
  std::vector<int> fbit(static_cast<std::size_t>(order));
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    int total = 0;
    for (int alpha = 0; alpha < order; ++alpha) {
      const auto digit = (idx / stride[static_cast<std::size_t>(alpha)]) % local;
      occ[static_cast<std::size_t>(alpha)] = static_cast<int>(digit / 2);
      fbit[static_cast<std::size_t>(alpha)] = static_cast<int>(digit % 2);
      total += occ[static_cast<std::size_t>(alpha)];
    }
    rep.occupation_[static_cast<std::size_t>(idx)] = total;

    int boson_string = 1;
    int fermion_string = 1;
    for (int alpha = 0; alpha < order; ++alpha) {
      const auto ua = static_cast<std::size_t>(alpha);
      if (occ[ua] > 0) {
        const double amp = std::sqrt(static_cast<double>(occ[ua])) * boson_string;
        a_entries.emplace_back(idx - 2 * stride[ua], idx, amp);
      }
      if (fbit[ua] == 1) {
        f_entries.emplace_back(idx - stride[ua], idx, static_cast<double>(fermion_string));
      }
      // the Klein string sees the spectator's state, which annihilation on a
      // later component leaves untouched
      boson_string *= parity_sign(convention.boson_ops, occ[ua], fbit[ua]);
      fermion_string *= parity_sign(convention.fermion_ops, occ[ua], fbit[ua]);
    }
  }

  auto& ops = rep.ops_;
  auto slot = [&ops](Operator op) -> SparseOp& { return ops[static_cast<std::size_t>(op)]; };

  SparseOp a(dim, dim), f(dim, dim);
  a.setFromTriplets(a_entries.begin(), a_entries.end());
  f.setFromTriplets(f_entries.begin(), f_entries.end());
  SparseOp a_dag = a.adjoint();
  SparseOp f_dag = f.adjoint();

  SparseOp id(dim, dim);
  id.setIdentity();
  const double half_p = 0.5 * order;

  SparseOp anti_aa = SparseOp(a_dag * a) + SparseOp(a * a_dag);
  SparseOp comm_ff = SparseOp(f_dag * f) - SparseOp(f * f_dag);
  SparseOp num_a = 0.5 * anti_aa - half_p * id;
  SparseOp num_f = 0.5 * comm_ff + half_p * id;
  SparseOp pair = 0.5 * (SparseOp(a * f) + SparseOp(f * a));
  SparseOp pair_dag = pair.adjoint();
  SparseOp charge = 0.5 * (SparseOp(a_dag * f) + SparseOp(f * a_dag));
  SparseOp charge_dag = charge.adjoint();
  SparseOp grading = (1.0 / order) * (SparseOp(num_f * num_f) - (order + 1.0) * num_f +
                                      SparseOp(f_dag * f) + half_p * id);
  SparseOp shifted_a = num_a + half_p * id;
  SparseOp shifted_f = num_f - half_p * id;
  SparseOp transition =
      half_p * (SparseOp(pair_dag * pair) + SparseOp(charge_dag * charge) - num_a - half_p * id) -
      2.0 * SparseOp(SparseOp(shifted_a * shifted_f) * grading);
  SparseOp ladder = SparseOp((0.5 * id - grading) * transition);
  SparseOp ladder_dag = SparseOp((0.5 * id + grading) * transition);
  SparseOp hamiltonian = 0.5 * anti_aa + 0.5 * comm_ff;

  slot(Operator::kA) = std::move(a);
  slot(Operator::kADag) = std::move(a_dag);
  slot(Operator::kF) = std::move(f);
  slot(Operator::kFDag) = std::move(f_dag);
  slot(Operator::kNumA) = std::move(num_a);
  slot(Operator::kNumF) = std::move(num_f);
  slot(Operator::kPair) = std::move(pair);
  slot(Operator::kPairDag) = std::move(pair_dag);
  slot(Operator::kCharge) = std::move(charge);
  slot(Operator::kChargeDag) = std::move(charge_dag);
  slot(Operator::kGrading) = std::move(grading);
  slot(Operator::kTransition) = std::move(transition);
  slot(Operator::kLadder) = std::move(ladder);
  slot(Operator::kLadderDag) = std::move(ladder_dag);
  slot(Operator::kHamiltonian) = std::move(hamiltonian);
  for (auto& m : ops) {
    m.prune(Complex(0.0, 0.0), 1e-14);
    m.makeCompressed();
  }

  rep.vacuum_ = StateVector::Zero(dim);
  rep.vacuum_(0) = 1.0;
  return rep;
}

int word_level(const CreationWord& word) {
  int level = 0;
  for (auto letter : word) level += letter == Letter::kPairDag ? 2 : 1;
  return level;
}

StateVector apply_word(const ParaRep& rep, const CreationWord& word) {
  const int level = word_level(word);
  if (level > rep.cutoff().level_cap())
    throw TruncationError("word '" + format_word(word) + "' reaches level " +
                          std::to_string(level) + " beyond level cap " +
                          std::to_string(rep.cutoff().level_cap()));
  StateVector v = rep.vacuum();
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    switch (*it) {
      case Letter::kADag: v = rep.op(Operator::kADag) * v; break;
      case Letter::kFDag: v = rep.op(Operator::kFDag) * v; break;
      case Letter::kPairDag: v = rep.op(Operator::kPairDag) * v; break;
    }
  }
  return v;
}

Eigen::Index CyclicBasis::size() const {
  Eigen::Index n = 0;
  for (const auto& lvl : levels) n += lvl.vectors.cols();
  return n;
}

Eigen::Index CyclicBasis::size_up_to(int level) const {
  Eigen::Index n = 0;
  for (const auto& lvl : levels)
    if (lvl.level <= level) n += lvl.vectors.cols();
  return n;
}

DenseMatrix CyclicBasis::stacked(int max_level) const {
  const Eigen::Index cols = size_up_to(max_level);
  const Eigen::Index rows = levels.empty() ? 0 : levels.front().vectors.rows();
  DenseMatrix out(rows, cols);
  Eigen::Index at = 0;
  for (const auto& lvl : levels) {
    if (lvl.level > max_level) continue;
    out.middleCols(at, lvl.vectors.cols()) = lvl.vectors;
    at += lvl.vectors.cols();
  }
  return out;
}

CyclicBasis cyclic_basis(const ParaRep& rep, int level_cap) {
  if (level_cap < 0) throw std::invalid_argument("level cap must be non-negative");
  if (level_cap > rep.cutoff().max_trusted_level())
    throw TruncationError("cyclic basis level " + std::to_string(level_cap) +
                          " exceeds trusted range " +
                          std::to_string(rep.cutoff().max_trusted_level()));
  CyclicBasis out;
  CyclicLevel ground;
  ground.level = 0;
  ground.vectors = rep.vacuum();
  ground.gap = std::numeric_limits<double>::infinity();
  out.levels.push_back(std::move(ground));

  const auto& a_dag = rep.op(Operator::kADag);
  const auto& f_dag = rep.op(Operator::kFDag);
  for (int level = 1; level <= level_cap; ++level) {
    const DenseMatrix& prev = out.levels.back().vectors;
    DenseMatrix candidates(rep.dim(), 2 * prev.cols());
    for (Eigen::Index j = 0; j < prev.cols(); ++j) {
      candidates.col(2 * j) = a_dag * prev.col(j);
      candidates.col(2 * j + 1) = f_dag * prev.col(j);
    }
    auto ortho = orthonormalize_columns(candidates);
    CyclicLevel next;
    next.level = level;
    next.vectors = std::move(ortho.basis);
    next.gap = ortho.gap();
    out.levels.push_back(std::move(next));
  }
  return out;
}

}  // namespace parasusy
