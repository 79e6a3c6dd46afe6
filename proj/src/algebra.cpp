#include "parasusy/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "parasusy/errors.hpp"

namespace parasusy {

struct Expr::Node {
  Kind kind = Kind::kIdentity;
  Operator op = Operator::kA;
  Complex scale{1.0, 0.0};
  std::vector<Expr> children;
};

namespace {

std::shared_ptr<Expr::Node> make_node(Expr::Kind kind) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = kind;
  return n;
}

std::string format_scalar(Complex s) {
  std::ostringstream out;
  if (s.imag() == 0.0) {
    out << s.real();
  } else {
    out << '(' << s.real() << (s.imag() < 0 ? "-" : "+") << std::abs(s.imag()) << "i)";
  }
  return out.str();
}

}  // namespace

Expr Expr::identity() { return Expr(make_node(Kind::kIdentity)); }

Expr Expr::zero() { return Expr(make_node(Kind::kSum)); }

Expr Expr::named(Operator op) {
  auto n = make_node(Kind::kNamed);
  n->op = op;
  return Expr(std::move(n));
}

Expr Expr::named(std::string_view name) {
  auto op = operator_from_name(name);
  if (!op) throw std::invalid_argument("unknown operator name '" + std::string(name) + "'");
  return named(*op);
}

Expr Expr::matrix_adjoint(Operator op) {
  auto n = make_node(Kind::kMatrixAdjoint);
  n->op = op;
  return Expr(std::move(n));
}

Expr operator+(const Expr& lhs, const Expr& rhs) {
  auto n = make_node(Expr::Kind::kSum);
  n->children = {lhs, rhs};
  return Expr(std::move(n));
}

Expr operator-(const Expr& lhs, const Expr& rhs) { return lhs + (-1.0) * rhs; }

Expr operator*(const Expr& lhs, const Expr& rhs) {
  auto n = make_node(Expr::Kind::kProduct);
  // flatten nested products so powers print compactly
  for (const Expr* side : {&lhs, &rhs}) {
    if (side->kind() == Expr::Kind::kProduct)
      n->children.insert(n->children.end(), side->node_->children.begin(),
                         side->node_->children.end());
    else
      n->children.push_back(*side);
  }
  return Expr(std::move(n));
}

Expr operator*(Complex scale, const Expr& e) {
  auto n = make_node(Expr::Kind::kScaled);
  n->scale = scale;
  n->children = {e};
  return Expr(std::move(n));
}

Expr operator*(double scale, const Expr& e) { return Complex(scale, 0.0) * e; }

Expr commutator(const Expr& lhs, const Expr& rhs) {
  auto n = make_node(Expr::Kind::kCommutator);
  n->children = {lhs, rhs};
  return Expr(std::move(n));
}

Expr anticommutator(const Expr& lhs, const Expr& rhs) {
  auto n = make_node(Expr::Kind::kAnticommutator);
  n->children = {lhs, rhs};
  return Expr(std::move(n));
}

Expr power(const Expr& e, int exponent) {
  if (exponent < 0) throw std::invalid_argument("negative operator power");
  if (exponent == 0) return Expr::identity();
  Expr out = e;
  for (int i = 1; i < exponent; ++i) out = out * e;
  return out;
}

Expr adjoint(const Expr& e) {
  const auto& node = *e.node_;
  switch (node.kind) {
    case Expr::Kind::kIdentity: return e;
    case Expr::Kind::kNamed: return Expr::named(partner_of(node.op));
    case Expr::Kind::kMatrixAdjoint: return Expr::named(node.op);
    case Expr::Kind::kScaled: return std::conj(node.scale) * adjoint(node.children[0]);
    case Expr::Kind::kSum: {
      auto n = make_node(Expr::Kind::kSum);
      for (const auto& child : node.children) n->children.push_back(adjoint(child));
      return Expr(std::move(n));
    }
    case Expr::Kind::kProduct: {
      auto n = make_node(Expr::Kind::kProduct);
      for (auto it = node.children.rbegin(); it != node.children.rend(); ++it)
        n->children.push_back(adjoint(*it));
      return Expr(std::move(n));
    }
    case Expr::Kind::kCommutator:
      return commutator(adjoint(node.children[1]), adjoint(node.children[0]));
    case Expr::Kind::kAnticommutator:
      return anticommutator(adjoint(node.children[0]), adjoint(node.children[1]));
  }
  throw std::logic_error("unreachable expression kind");
}

Expr::Kind Expr::kind() const { return node_->kind; }

std::string Expr::str() const {
  const auto& node = *node_;
  switch (node.kind) {
    case Kind::kIdentity: return "1";
    case Kind::kNamed: return std::string(name_of(node.op));
    case Kind::kMatrixAdjoint: return "(" + std::string(name_of(node.op)) + ")^dag";
    case Kind::kScaled: {
      const auto inner = node.children[0];
      const bool wrap = inner.kind() == Kind::kSum;
      return format_scalar(node.scale) + (wrap ? "(" + inner.str() + ")" : inner.str());
    }
    case Kind::kSum: {
      if (node.children.empty()) return "0";
      std::string out;
      for (std::size_t i = 0; i < node.children.size(); ++i) {
        if (i) out += " + ";
        out += node.children[i].str();
      }
      return out;
    }
    case Kind::kProduct: {
      std::string out;
      const auto& ch = node.children;
      for (std::size_t i = 0; i < ch.size();) {
        std::size_t run = 1;
        if (ch[i].kind() == Kind::kNamed)
          while (i + run < ch.size() && ch[i + run].kind() == Kind::kNamed &&
                 ch[i + run].node_->op == ch[i].node_->op)
            ++run;
        if (!out.empty()) out += ' ';
        const bool wrap = ch[i].kind() == Kind::kSum;
        out += wrap ? "(" + ch[i].str() + ")" : ch[i].str();
        if (run > 1) out += "^" + std::to_string(run);
        i += run;
      }
      return out;
    }
    case Kind::kCommutator:
      return "[" + node.children[0].str() + ", " + node.children[1].str() + "]";
    case Kind::kAnticommutator:
      return "{" + node.children[0].str() + ", " + node.children[1].str() + "}";
  }
  return "?";
}

int Expr::raise_bound() const {
  const auto& node = *node_;
  switch (node.kind) {
    case Kind::kIdentity: return 0;
    case Kind::kNamed: return parasusy::raise_bound(node.op);
    case Kind::kMatrixAdjoint:
      return std::max(parasusy::raise_bound(node.op), parasusy::raise_bound(partner_of(node.op)));
    case Kind::kScaled: return node.children[0].raise_bound();
    case Kind::kSum: {
      int out = 0;
      for (const auto& c : node.children) out = std::max(out, c.raise_bound());
      return out;
    }
    case Kind::kProduct: {
      int out = 0;
      for (const auto& c : node.children) out += c.raise_bound();
      return out;
    }
    case Kind::kCommutator:
    case Kind::kAnticommutator:
      return node.children[0].raise_bound() + node.children[1].raise_bound();
  }
  return 0;
}

StateVector eval_expr(const ParaRep& rep, const Expr& expr, const StateVector& v) {
  if (v.size() != rep.dim())
    throw std::invalid_argument("state dimension " + std::to_string(v.size()) +
                                " does not match representation dimension " +
                                std::to_string(rep.dim()));
  const auto& node = *expr.node_;
  switch (node.kind) {
    case Expr::Kind::kIdentity: return v;
    case Expr::Kind::kNamed: return rep.op(node.op) * v;
    case Expr::Kind::kMatrixAdjoint: return rep.op(node.op).adjoint() * v;
    case Expr::Kind::kScaled: return node.scale * eval_expr(rep, node.children[0], v);
    case Expr::Kind::kSum: {
      StateVector out = StateVector::Zero(v.size());
      for (const auto& c : node.children) out += eval_expr(rep, c, v);
      return out;
    }
    case Expr::Kind::kProduct: {
      StateVector out = v;
      for (auto it = node.children.rbegin(); it != node.children.rend(); ++it)
        out = eval_expr(rep, *it, out);
      return out;
    }
    case Expr::Kind::kCommutator:
    case Expr::Kind::kAnticommutator: {
      const auto& x = node.children[0];
      const auto& y = node.children[1];
      StateVector xy = eval_expr(rep, x, eval_expr(rep, y, v));
      StateVector yx = eval_expr(rep, y, eval_expr(rep, x, v));
      return node.kind == Expr::Kind::kCommutator ? StateVector(xy - yx) : StateVector(xy + yx);
    }
  }
  throw std::logic_error("unreachable expression kind");
}

std::string_view to_string(ProbeDomain domain) {
  switch (domain) {
    case ProbeDomain::kVacuum: return "vacuum";
    case ProbeDomain::kAmbient: return "ambient";
    case ProbeDomain::kFock: return "fock";
  }
  return "?";
}

std::string_view group_name(SuiteGroup group) {
  switch (group) {
    case SuiteGroup::kParabose: return "parabose";
    case SuiteGroup::kParafermi: return "parafermi";
    case SuiteGroup::kMixed: return "mixed";
    case SuiteGroup::kVacuum: return "vacuum";
    case SuiteGroup::kAuxiliary: return "auxiliary";
    case SuiteGroup::kSusy: return "susy";
    case SuiteGroup::kReduction: return "reduction";
    case SuiteGroup::kGrading: return "grading";
    case SuiteGroup::kAdjoint: return "adjoint";
  }
  return "?";
}

std::vector<Identity> relation_identities(int p, unsigned groups) {
  const Expr a = Expr::named(Operator::kA);
  const Expr ad = Expr::named(Operator::kADag);
  const Expr f = Expr::named(Operator::kF);
  const Expr fd = Expr::named(Operator::kFDag);
  const Expr na = Expr::named(Operator::kNumA);
  const Expr nf = Expr::named(Operator::kNumF);
  const Expr pair_d = Expr::named(Operator::kPairDag);
  const Expr q = Expr::named(Operator::kCharge);
  const Expr qd = Expr::named(Operator::kChargeDag);
  const Expr ns = Expr::named(Operator::kGrading);
  const Expr t = Expr::named(Operator::kTransition);
  const Expr qs = Expr::named(Operator::kLadder);
  const Expr qsd = Expr::named(Operator::kLadderDag);
  const Expr h = Expr::named(Operator::kHamiltonian);
  const Expr one = Expr::identity();
  const Expr zero = Expr::zero();

  std::vector<Identity> out;
  auto wants = [groups](SuiteGroup g) { return (groups & static_cast<unsigned>(g)) != 0; };
  auto add = [&out](SuiteGroup g, const Expr& lhs, const Expr& rhs, ProbeDomain domain,
                    std::string suffix = {}) {
    Identity id{lhs.str() + " = " + rhs.str() + suffix, std::string(group_name(g)), lhs, rhs,
                domain};
    out.push_back(std::move(id));
  };
  auto add_with_adjoint = [&add](SuiteGroup g, const Expr& lhs, const Expr& rhs) {
    add(g, lhs, rhs, ProbeDomain::kAmbient);
    add(g, adjoint(lhs), adjoint(rhs), ProbeDomain::kAmbient, "  (adjoint)");
  };

  if (wants(SuiteGroup::kParabose)) {
    const auto g = SuiteGroup::kParabose;
    add_with_adjoint(g, commutator(a, anticommutator(ad, a)), 2.0 * a);
    add_with_adjoint(g, commutator(a, power(ad, 2)), 2.0 * ad);
    add_with_adjoint(g, commutator(a, power(a, 2)), zero);
  }
  if (wants(SuiteGroup::kParafermi)) {
    add_with_adjoint(SuiteGroup::kParafermi, commutator(f, commutator(fd, f)), 2.0 * f);
  }
  if (wants(SuiteGroup::kMixed)) {
    const auto g = SuiteGroup::kMixed;
    add_with_adjoint(g, commutator(f, anticommutator(ad, a)), zero);
    add_with_adjoint(g, commutator(a, commutator(fd, f)), zero);
    add_with_adjoint(g, commutator(f, power(a, 2)), zero);
    add_with_adjoint(g, commutator(fd, power(a, 2)), zero);
    add_with_adjoint(g, commutator(a, anticommutator(fd, a)), zero);
    add_with_adjoint(g, commutator(a, anticommutator(f, a)), zero);
    add_with_adjoint(g, anticommutator(f, anticommutator(f, a)), zero);
    add_with_adjoint(g, anticommutator(f, anticommutator(ad, f)), zero);
    add_with_adjoint(g, commutator(a, anticommutator(f, ad)), 2.0 * f);
    add_with_adjoint(g, commutator(ad, anticommutator(a, f)), -2.0 * f);
    add_with_adjoint(g, anticommutator(f, anticommutator(fd, a)), 2.0 * a);
    add_with_adjoint(g, anticommutator(fd, anticommutator(a, f)), 2.0 * a);
  }
  if (wants(SuiteGroup::kVacuum)) {
    const auto g = SuiteGroup::kVacuum;
    const auto vac = ProbeDomain::kVacuum;
    add(g, a, zero, vac, "  on |0>");
    add(g, f, zero, vac, "  on |0>");
    add(g, a * fd, zero, vac, "  on |0>");
    add(g, f * ad, zero, vac, "  on |0>");
    add(g, a * ad, static_cast<double>(p) * one, vac, "  on |0>");
    add(g, f * fd, static_cast<double>(p) * one, vac, "  on |0>");
  }
  if (wants(SuiteGroup::kAuxiliary)) {
    const auto g = SuiteGroup::kAuxiliary;
    const auto fock = ProbeDomain::kFock;
    add(g, commutator(na, ns), zero, fock);
    add(g, commutator(nf, ns), zero, fock);
    add(g, commutator(ns, f), zero, fock);
    add(g, commutator(ns, power(a, 2)), zero, fock);
    add(g, commutator(na, t), zero, fock);
    add(g, commutator(nf, t), zero, fock);
    add(g, commutator(na, qs), zero, fock);
    add(g, commutator(nf, qs), zero, fock);
    add(g, anticommutator(ns, t), zero, fock);
    add(g, commutator(ns, qs), -1.0 * qs, fock);
    add(g, commutator(qsd, qs), 2.0 * (t * t * ns), fock);
    add(g, anticommutator(qsd, qs), t * t, fock);
  }
  if (wants(SuiteGroup::kSusy)) {
    const auto g = SuiteGroup::kSusy;
    const auto amb = ProbeDomain::kAmbient;
    add(g, h, na + nf, amb);
    add(g, commutator(h, q), zero, amb);
    add(g, commutator(h, qd), zero, amb);
    add(g, anticommutator(q, qd), h, amb);
    add(g, power(q, 2), zero, amb);
    add(g, power(qd, 2), zero, amb);
  }
  if (wants(SuiteGroup::kReduction)) {
    const auto g = SuiteGroup::kReduction;
    const auto amb = ProbeDomain::kAmbient;
    for (int k = 1; k <= p + 1; ++k) {
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      add(g, ad * power(fd, k),
          sign * (power(fd, k) * ad) + static_cast<double>(2 * k) * (pair_d * power(fd, k - 1)),
          amb);
    }
    add(g, anticommutator(pair_d, fd), zero, amb);
    add(g, commutator(pair_d, ad), zero, amb);
    add(g, power(pair_d, 2), zero, amb);
    add(g, commutator(power(ad, 2), fd), zero, amb);
    add(g, pair_d, 0.5 * anticommutator(ad, fd), amb);
    add(g,
        static_cast<double>(p) * (power(fd, p - 1) * ad * fd) +
            static_cast<double>(p - 2) * (power(fd, p) * ad),
        zero, ProbeDomain::kVacuum, "  on |0>");
  }
  if (wants(SuiteGroup::kGrading)) {
    const auto g = SuiteGroup::kGrading;
    const auto vac = ProbeDomain::kVacuum;
    const Expr mixed = static_cast<double>(p) * pair_d - fd * ad;
    add(g, commutator(ns, fd), zero, ProbeDomain::kAmbient);
    add(g, commutator(ns, power(ad, 2)), zero, ProbeDomain::kAmbient);
    add(g, ns, 0.5 * one, vac, "  on |0>");
    add(g, ns * ad, 0.5 * ad, vac, "  on |0>");
    add(g, nf * pair_d, pair_d, vac, "  on |0>");
    add(g, nf * pair_d * ad, pair_d * ad, vac, "  on |0>");
    add(g, ns * mixed, -0.5 * mixed, vac, "  on |0>");
    add(g, ns * mixed * ad, -0.5 * (mixed * ad), vac, "  on |0>");
  }
  if (wants(SuiteGroup::kAdjoint)) {
    const auto g = SuiteGroup::kAdjoint;
    for (auto op : {Operator::kADag, Operator::kFDag, Operator::kPairDag, Operator::kChargeDag})
      add(g, Expr::named(op), Expr::matrix_adjoint(partner_of(op)), ProbeDomain::kAmbient);
    add(g, qsd, Expr::matrix_adjoint(Operator::kLadder), ProbeDomain::kFock);
    for (auto op : {Operator::kNumA, Operator::kNumF, Operator::kGrading, Operator::kTransition,
                    Operator::kHamiltonian})
      add(g, Expr::named(op), Expr::matrix_adjoint(op), ProbeDomain::kAmbient);
  }
  return out;
}

namespace {

StateVector random_unit(std::mt19937_64& rng, const std::vector<Eigen::Index>& support,
                        Eigen::Index dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  StateVector v = StateVector::Zero(dim);
  for (auto idx : support) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v(idx) = Complex(re, im);
  }
  return v.normalized();
}

StateVector random_fock(std::mt19937_64& rng, const DenseMatrix& basis) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd coeffs(basis.cols());
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    coeffs(i) = Complex(re, im);
  }
  return (basis * coeffs).normalized();
}

}  // namespace

IdentityCheck check_identity(const ParaRep& rep, const Identity& identity,
                             const SuiteOptions& options, std::size_t stream,
                             const CyclicBasis* fock) {
  IdentityCheck out;
  out.name = identity.name;
  out.group = identity.group;
  out.lhs = identity.lhs.str();
  out.rhs = identity.rhs.str();
  out.domain = identity.domain;

  const int c = rep.cutoff().per_component();
  const int bound = std::max(identity.lhs.raise_bound(), identity.rhs.raise_bound());
  const int headroom = c - bound;
  if (identity.domain != ProbeDomain::kVacuum && headroom < 0)
    throw TruncationError("identity '" + identity.name + "' needs " + std::to_string(bound) +
                          " boson quanta of headroom but cutoff is " + std::to_string(c));

  std::seed_seq seq{static_cast<std::uint32_t>(options.seed & 0xffffffffu),
                    static_cast<std::uint32_t>(options.seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  std::mt19937_64 rng(seq);

  std::vector<StateVector> probes;
  switch (identity.domain) {
    case ProbeDomain::kVacuum:
      probes.push_back(rep.vacuum());
      break;
    case ProbeDomain::kAmbient: {
      std::vector<Eigen::Index> support;
      for (Eigen::Index i = 0; i < rep.dim(); ++i)
        if (rep.boson_occupation(i) <= headroom) support.push_back(i);
      for (int k = 0; k < options.probes; ++k)
        probes.push_back(random_unit(rng, support, rep.dim()));
      break;
    }
    case ProbeDomain::kFock: {
      if (fock == nullptr) throw std::invalid_argument("Fock-domain identity needs a cyclic basis");
      const int top = std::min(headroom, rep.cutoff().max_trusted_level());
      const DenseMatrix span = fock->stacked(top);
      for (int k = 0; k < options.probes; ++k) probes.push_back(random_fock(rng, span));
      break;
    }
  }

  double worst = 0.0;
  for (const auto& v : probes) {
    const StateVector lhs = eval_expr(rep, identity.lhs, v);
    const StateVector rhs = eval_expr(rep, identity.rhs, v);
    const double scale = std::max({1.0, lhs.norm(), rhs.norm()});
    worst = std::max(worst, (lhs - rhs).norm() / scale);
  }
  out.residual = worst;
  out.probes = static_cast<int>(probes.size());
  out.passed = std::isfinite(worst) && worst <= options.tolerance;
  return out;
}

std::vector<IdentityCheck> verify_suite(const ParaRep& rep, const SuiteOptions& options) {
  if (options.probes < 1) throw std::invalid_argument("probes must be >= 1");
  const auto identities = relation_identities(rep.p(), options.groups);
  const bool needs_fock = std::any_of(identities.begin(), identities.end(), [](const Identity& id) {
    return id.domain == ProbeDomain::kFock;
  });
  CyclicBasis fock;
  if (needs_fock) fock = cyclic_basis(rep, rep.cutoff().max_trusted_level());

  std::vector<IdentityCheck> out;
  out.reserve(identities.size());
  for (std::size_t i = 0; i < identities.size(); ++i)
    out.push_back(check_identity(rep, identities[i], options, i, needs_fock ? &fock : nullptr));
  return out;
}

bool all_passed(const std::vector<IdentityCheck>& checks) {
  return std::all_of(checks.begin(), checks.end(),
                     [](const IdentityCheck& c) { return c.passed; });
}

double worst_residual(const std::vector<IdentityCheck>& checks) {
  double worst = 0.0;
  for (const auto& c : checks) worst = std::max(worst, c.residual);
  return worst;
}

}  // namespace parasusy
