#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "automaton.hpp"
#include "normalize.hpp"
#include "series.hpp"
#include "term.hpp"

namespace ratseries {

// Shortest length-lex word (within the window) on which the two
// behaviors differ.
inline std::optional<Word> compare_behaviors(const WeightedAutomaton& a,
                                             const WeightedAutomaton& b,
                                             int window) {
  TruncatedSeries sa = behavior_coefficients(a, window);
  TruncatedSeries sb = behavior_coefficients(b, window);
  for (const Word& w : words_up_to(a.alphabet, window))
    if (!a.S.eq(sa.coefficient(w), sb.coefficient(w))) return w;
  return std::nullopt;
}

// Normal form with the finite part pruned against the support of the
// infinite part, so |t0| and |1* tInf| have disjoint supports.
inline NormalForm normalize_disjoint(const Term& t,
                                     const std::string& alphabet) {
  NormalForm nf = normalize(t);
  if (is_term_zero(nf.tinf) || is_term_zero(nf.t0)) return nf;
  SupportDFA r = support_dfa(compile_term(nf.tinf, Semiring::nat_inf(),
                                          alphabet));
  WeightedAutomaton m0 = compile_term(nf.t0, Semiring::nat(), alphabet);
  NormalTriple pruned =
      automaton_to_triple(restrict_to_dfa(m0, r, RestrictMode::Remove));
  // the pruned behavior is proper, so the triple carries no constant or
  // 1*-part; fold defensively anyway
  nf.tc += pruned.c;
  nf.t0 = pruned.t0;
  if (pruned.unit || !is_term_zero(pruned.y))
    nf.tinf = t_sum(nf.tinf,
                    pruned.unit ? t_sum(t_one(), pruned.y) : pruned.y);
  return nf;
}

struct EquivResult {
  bool equivalent = true;
  Word witness;  // meaningful when not equivalent
};

namespace detail {

using Rat = boost::multiprecision::cpp_rational;

// Reduces v against an echelon basis in place; returns true if a nonzero
// residual was appended to the basis.
inline bool basis_insert(std::vector<std::pair<std::size_t, std::vector<Rat>>>&
                             basis,
                         std::vector<Rat> v) {
  for (const auto& [pivot, row] : basis) {
    if (v[pivot] == 0) continue;
    Rat f = v[pivot];
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= f * row[i];
  }
  std::size_t pivot = v.size();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) {
      pivot = i;
      break;
    }
  if (pivot == v.size()) return false;
  Rat f = v[pivot];
  for (auto& x : v) x /= f;
  basis.emplace_back(pivot, std::move(v));
  return true;
}

// Decides coefficient-wise equality of two N-behaviors with a witness.
// Embedding the weights into Q, the forward row spaces have dimension at
// most m + n, so exploring one basis of reachable row vectors covers the
// m + n - 1 window that separates any two distinct behaviors.
inline std::optional<Word> nat_behavior_difference(
    const WeightedAutomaton& a, const WeightedAutomaton& b) {
  require_compatible(a, b);
  std::size_t m = a.dim, n = b.dim;
  auto rat = [](const Value& v) {
    if (v.tag != ValueTag::Fin)
      throw SemiringMismatch("rational embedding needs finite weights");
    return Rat(v.n);
  };
  std::vector<Rat> beta(m + n);
  for (std::size_t i = 0; i < m; ++i) beta[i] = rat(a.beta.at(i, 0));
  for (std::size_t i = 0; i < n; ++i) beta[m + i] = rat(b.beta.at(i, 0));

  std::vector<Rat> start(m + n);
  for (std::size_t i = 0; i < m; ++i) start[i] = rat(a.alpha.at(0, i));
  for (std::size_t i = 0; i < n; ++i) start[m + i] = rat(b.alpha.at(0, i));

  std::vector<std::pair<std::size_t, std::vector<Rat>>> basis;
  std::deque<std::pair<Word, std::vector<Rat>>> queue;
  queue.emplace_back("", std::move(start));
  while (!queue.empty()) {
    auto [w, v] = std::move(queue.front());
    queue.pop_front();
    Rat left = 0, right = 0;
    for (std::size_t i = 0; i < m; ++i) left += v[i] * beta[i];
    for (std::size_t i = 0; i < n; ++i) right += v[m + i] * beta[m + i];
    if (left != right) return w;
    if (!basis_insert(basis, v)) continue;
    for (char s : a.alphabet) {
      const auto& ta = a.trans.at(s);
      const auto& tb = b.trans.at(s);
      std::vector<Rat> next(m + n);
      for (std::size_t i = 0; i < m; ++i)
        if (v[i] != 0)
          for (std::size_t j = 0; j < m; ++j)
            next[j] += v[i] * rat(ta.at(i, j));
      for (std::size_t i = 0; i < n; ++i)
        if (v[m + i] != 0)
          for (std::size_t j = 0; j < n; ++j)
            next[m + j] += v[m + i] * rat(tb.at(i, j));
      queue.emplace_back(w + s, std::move(next));
    }
  }
  return std::nullopt;
}

inline std::optional<Word> nat_term_difference(const Term& t1, const Term& t2,
                                               const std::string& alphabet) {
  WeightedAutomaton a = compile_term(t1, Semiring::nat(), alphabet);
  WeightedAutomaton b = compile_term(t2, Semiring::nat(), alphabet);
  return nat_behavior_difference(a, b);
}

}  // namespace detail

inline std::optional<Word> nat_automata_difference(const WeightedAutomaton& a,
                                                   const WeightedAutomaton& b) {
  return detail::nat_behavior_difference(a, b);
}

inline EquivResult equivalent(const Term& t1, const Term& t2,
                              const Semiring& S,
                              const std::string& alphabet) {
  if (S.kind() == SemiringKind::N) {
    auto w = detail::nat_term_difference(t1, t2, alphabet);
    if (w) return {false, *w};
    return {};
  }
  if (S.kind() != SemiringKind::Ninf)
    throw SemiringMismatch("equivalence is decided over N or Ninf");

  NormalForm n1 = normalize_disjoint(t1, alphabet);
  NormalForm n2 = normalize_disjoint(t2, alphabet);

  // infinite parts: the coefficient is inf exactly on supp(tInf)
  SupportDFA d1 =
      support_dfa(compile_term(n1.tinf, Semiring::nat_inf(), alphabet));
  SupportDFA d2 =
      support_dfa(compile_term(n2.tinf, Semiring::nat_inf(), alphabet));
  if (auto w = dfa_difference(d1, d2)) return {false, *w};

  // finite parts: with equal supports pruned away, tc + t0 carries every
  // finite coefficient; decide over N
  Term f1 = t_sum(t_nat(n1.tc), n1.t0);
  Term f2 = t_sum(t_nat(n2.tc), n2.t0);
  if (auto w = detail::nat_term_difference(f1, f2, alphabet))
    return {false, *w};
  return {};
}

}  // namespace ratseries
