#include "parasusy/rewrite.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace parasusy {

namespace {

void accumulate(TermMap& into, const CreationWord& word, const BigInt& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = into.try_emplace(word, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) into.erase(it);
  }
}

std::vector<std::size_t> redexes(const CreationWord& word) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i + 1 < word.size(); ++i)
    if (is_redex(word, i)) out.push_back(i);
  return out;
}

CreationWord splice(const CreationWord& word, std::size_t position,
                    std::initializer_list<Letter> replacement) {
  CreationWord out(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(position));
  out.insert(out.end(), replacement.begin(), replacement.end());
  out.insert(out.end(), word.begin() + static_cast<std::ptrdiff_t>(position + 2), word.end());
  return out;
}

template <typename Chooser>
TermMap run_to_fixpoint(const TermMap& input, Chooser&& choose) {
  TermMap pending = input;
  TermMap done;
  while (!pending.empty()) {
    auto [word, position] = choose(pending);
    auto node = pending.extract(word);
    const BigInt coeff = node.mapped();
    if (!position) {
      accumulate(done, node.key(), coeff);
      continue;
    }
    for (const auto& [next, factor] : rewrite_at(node.key(), *position))
      accumulate(pending, next, coeff * factor);
  }
  return done;
}

}  // namespace

bool is_redex(const CreationWord& word, std::size_t position) {
  if (position + 1 >= word.size()) return false;
  const Letter x = word[position];
  const Letter y = word[position + 1];
  if (x == Letter::kADag) return y == Letter::kFDag;
  return x == Letter::kPairDag;  // F+ f+, F+ a+, F+ F+
}

TermMap rewrite_at(const CreationWord& word, std::size_t position) {
  if (!is_redex(word, position)) throw std::invalid_argument("no redex at this position");
  const Letter y = word[position + 1];
  TermMap out;
  if (word[position] == Letter::kADag) {
    accumulate(out, splice(word, position, {Letter::kFDag, Letter::kADag}), -1);
    accumulate(out, splice(word, position, {Letter::kPairDag}), 2);
  } else if (y == Letter::kFDag) {
    accumulate(out, splice(word, position, {Letter::kFDag, Letter::kPairDag}), -1);
  } else if (y == Letter::kADag) {
    accumulate(out, splice(word, position, {Letter::kADag, Letter::kPairDag}), 1);
  }
  // F+ F+ -> 0 leaves `out` empty
  return out;
}

TermMap normalize(const TermMap& input) {
  return run_to_fixpoint(input, [](const TermMap& pending) {
    const auto& word = pending.begin()->first;
    const auto found = redexes(word);
    return std::pair<CreationWord, std::optional<std::size_t>>{
        word, found.empty() ? std::nullopt : std::optional<std::size_t>(found.front())};
  });
}

TermMap normalize(const TermMap& input, std::mt19937_64& rng) {
  return run_to_fixpoint(input, [&rng](const TermMap& pending) {
    std::uniform_int_distribution<std::size_t> pick_term(0, pending.size() - 1);
    auto it = pending.begin();
    std::advance(it, static_cast<std::ptrdiff_t>(pick_term(rng)));
    const auto found = redexes(it->first);
    std::optional<std::size_t> position;
    if (!found.empty()) {
      std::uniform_int_distribution<std::size_t> pick_redex(0, found.size() - 1);
      position = found[pick_redex(rng)];
    }
    return std::pair<CreationWord, std::optional<std::size_t>>{it->first, position};
  });
}

NormalForm collect(const TermMap& normalized, int m, int n) {
  NormalForm out;
  out.m = m;
  out.n = n;
  for (const auto& [word, coeff] : normalized) {
    const auto fs = static_cast<int>(std::count(word.begin(), word.end(), Letter::kFDag));
    const auto as = static_cast<int>(std::count(word.begin(), word.end(), Letter::kADag));
    const auto ps = static_cast<int>(std::count(word.begin(), word.end(), Letter::kPairDag));
    const bool ordered = std::is_sorted(word.begin(), word.end(), [](Letter l, Letter r) {
      auto rank = [](Letter x) { return x == Letter::kFDag ? 0 : x == Letter::kADag ? 1 : 2; };
      return rank(l) < rank(r);
    });
    if (!ordered || ps > 1)
      throw std::logic_error("term '" + format_word(word) + "' is not in normal order");
    if (ps == 0 && fs == n && as == m)
      out.alpha += coeff;
    else if (ps == 1 && fs == n - 1 && as == m - 1)
      out.beta += coeff;
    else
      throw std::logic_error("term '" + format_word(word) + "' has the wrong letter counts");
  }
  return out;
}

namespace {

std::pair<int, int> counts(const CreationWord& word) {
  int m = 0;
  int n = 0;
  for (auto l : word) {
    if (l == Letter::kADag) ++m;
    if (l == Letter::kFDag) ++n;
    if (l == Letter::kPairDag) {
      ++m;
      ++n;
    }
  }
  return {m, n};
}

}  // namespace

NormalForm reduce(const CreationWord& word) {
  auto [m, n] = counts(word);
  return collect(normalize(TermMap{{word, 1}}), m, n);
}

NormalForm reduce(const CreationWord& word, std::mt19937_64& rng) {
  auto [m, n] = counts(word);
  return collect(normalize(TermMap{{word, 1}}, rng), m, n);
}

AnnotatedNormalForm semantic_vanishing(const NormalForm& form, ParaOrder p) {
  AnnotatedNormalForm out;
  out.form = form;
  out.vanishes = form.n >= p.value() + 1;
  out.beta_dependent = form.n == p.value() && form.m >= 1;
  return out;
}

double validate_reduction(const ParaRep& rep, const CreationWord& word) {
  return validate_reduction(rep, word, reduce(word));
}

double validate_reduction(const ParaRep& rep, const CreationWord& word, const NormalForm& form) {
  for (auto l : word)
    if (l == Letter::kPairDag)
      throw std::invalid_argument("validate_reduction takes primitive letters only");
  const StateVector direct = apply_word(rep, word);
  StateVector reduced = StateVector::Zero(rep.dim());
  const CreationWord alpha_word = [&] {
    CreationWord w(static_cast<std::size_t>(form.n), Letter::kFDag);
    w.insert(w.end(), static_cast<std::size_t>(form.m), Letter::kADag);
    return w;
  }();
  reduced += static_cast<double>(form.alpha) * apply_word(rep, alpha_word);
  if (form.m >= 1 && form.n >= 1 && form.beta != 0) {
    CreationWord w(static_cast<std::size_t>(form.n - 1), Letter::kFDag);
    w.insert(w.end(), static_cast<std::size_t>(form.m - 1), Letter::kADag);
    w.push_back(Letter::kPairDag);
    reduced += static_cast<double>(form.beta) * apply_word(rep, w);
  }
  const double scale = std::max({1.0, direct.norm(), reduced.norm()});
  return (direct - reduced).norm() / scale;
}

}  // namespace parasusy
