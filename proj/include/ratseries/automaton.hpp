#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "normalize.hpp"
#include "semiring.hpp"
#include "series.hpp"
#include "term.hpp"

namespace ratseries {

// (alpha, A, beta) with A given per letter; the joint transition matrix
// is the letter-linear combination sum_a trans[a] * a, so every entry
// has epsilon-weight 0 by construction.
struct WeightedAutomaton {
  Semiring S;
  std::string alphabet;
  std::size_t dim = 0;
  Matrix<Value> alpha;  // 1 x dim
  Matrix<Value> beta;   // dim x 1
  std::map<char, Matrix<Value>> trans;

  WeightedAutomaton(Semiring s, std::string sigma, std::size_t n)
      : S(std::move(s)),
        alphabet(std::move(sigma)),
        dim(n),
        alpha(1, n, Value::fin(0)),
        beta(n, 1, Value::fin(0)) {
    for (char a : alphabet) trans.emplace(a, Matrix<Value>(n, n, Value::fin(0)));
  }

  ScalarCtx ctx() const { return ScalarCtx{S}; }
};

namespace detail {

inline void require_compatible(const WeightedAutomaton& a,
                               const WeightedAutomaton& b) {
  if (a.alphabet != b.alphabet)
    throw AlphabetMismatch("automata over different alphabets");
  if (!a.S.same(b.S)) throw SemiringMismatch("automata over different semirings");
}

inline void behavior_walk(const WeightedAutomaton& m, const Matrix<Value>& row,
                          const Word& w, int budget, TruncatedSeries& out) {
  ScalarCtx c = m.ctx();
  Value v = mat_mul(c, row, m.beta).at(0, 0);
  out.set(w, v);
  if (budget == 0) return;
  for (char a : m.alphabet)
    behavior_walk(m, mat_mul(c, row, m.trans.at(a)), w + a, budget - 1, out);
}

}  // namespace detail

// Coefficient of w is alpha * (transition product along w) * beta,
// computed with incremental forward row vectors.
inline TruncatedSeries behavior_coefficients(const WeightedAutomaton& m,
                                             int bound) {
  TruncatedSeries out(m.S, m.alphabet, bound);
  if (m.dim == 0) return out;
  detail::behavior_walk(m, m.alpha, "", bound, out);
  return out;
}

namespace detail {

inline WeightedAutomaton compile_const(const Semiring& S,
                                       const std::string& sigma,
                                       const Value& c) {
  WeightedAutomaton m(S, sigma, 1);
  m.alpha.at(0, 0) = c;
  m.beta.at(0, 0) = S.one();
  return m;
}

inline WeightedAutomaton compile_letter(const Semiring& S,
                                        const std::string& sigma, char a) {
  WeightedAutomaton m(S, sigma, 2);
  m.alpha.at(0, 0) = S.one();
  m.beta.at(1, 0) = S.one();
  m.trans.at(a).at(0, 1) = S.one();
  return m;
}

inline WeightedAutomaton compile_sum(const WeightedAutomaton& p,
                                     const WeightedAutomaton& q) {
  WeightedAutomaton m(p.S, p.alphabet, p.dim + q.dim);
  for (std::size_t i = 0; i < p.dim; ++i) {
    m.alpha.at(0, i) = p.alpha.at(0, i);
    m.beta.at(i, 0) = p.beta.at(i, 0);
  }
  for (std::size_t i = 0; i < q.dim; ++i) {
    m.alpha.at(0, p.dim + i) = q.alpha.at(0, i);
    m.beta.at(p.dim + i, 0) = q.beta.at(i, 0);
  }
  for (char a : m.alphabet) {
    auto& t = m.trans.at(a);
    const auto& tp = p.trans.at(a);
    const auto& tq = q.trans.at(a);
    for (std::size_t i = 0; i < p.dim; ++i)
      for (std::size_t j = 0; j < p.dim; ++j) t.at(i, j) = tp.at(i, j);
    for (std::size_t i = 0; i < q.dim; ++i)
      for (std::size_t j = 0; j < q.dim; ++j)
        t.at(p.dim + i, p.dim + j) = tq.at(i, j);
  }
  return m;
}

inline WeightedAutomaton compile_prod(const WeightedAutomaton& p,
                                      const WeightedAutomaton& q) {
  ScalarCtx c = p.ctx();
  WeightedAutomaton m(p.S, p.alphabet, p.dim + q.dim);
  Value eps_q = mat_mul(c, q.alpha, q.beta).at(0, 0);
  for (std::size_t i = 0; i < p.dim; ++i) {
    m.alpha.at(0, i) = p.alpha.at(0, i);
    m.beta.at(i, 0) = c.mul(p.beta.at(i, 0), eps_q);
  }
  for (std::size_t i = 0; i < q.dim; ++i)
    m.beta.at(p.dim + i, 0) = q.beta.at(i, 0);
  for (char a : m.alphabet) {
    auto& t = m.trans.at(a);
    const auto& tp = p.trans.at(a);
    const auto& tq = q.trans.at(a);
    // bridge: finish in p (beta), enter q (alpha) and take a q-step
    Matrix<Value> bridge =
        mat_mul(c, p.beta, mat_mul(c, q.alpha, tq));
    for (std::size_t i = 0; i < p.dim; ++i) {
      for (std::size_t j = 0; j < p.dim; ++j) t.at(i, j) = tp.at(i, j);
      for (std::size_t j = 0; j < q.dim; ++j)
        t.at(i, p.dim + j) = bridge.at(i, j);
    }
    for (std::size_t i = 0; i < q.dim; ++i)
      for (std::size_t j = 0; j < q.dim; ++j)
        t.at(p.dim + i, p.dim + j) = tq.at(i, j);
  }
  return m;
}

// Star through the epsilon-coefficient: with c0 = alpha beta and
// u = c0*, the behavior is (c0* r)* c0* for the proper rest r, wired
// as a fresh entry state plus restart edges. Over N this requires
// c0 = 0, i.e. a proper argument.
inline WeightedAutomaton compile_star(const WeightedAutomaton& p) {
  ScalarCtx c = p.ctx();
  Value c0 = p.dim ? mat_mul(c, p.alpha, p.beta).at(0, 0) : Value::fin(0);
  if (!p.S.in_star_domain(c0))
    throw NotInStarDomain("star of a non-proper term over " + p.S.name());
  Value u = p.S.star(c0);
  WeightedAutomaton m(p.S, p.alphabet, p.dim + 1);
  m.alpha.at(0, 0) = p.S.one();
  m.beta.at(0, 0) = u;
  for (std::size_t i = 0; i < p.dim; ++i)
    m.beta.at(1 + i, 0) = c.mul(u, p.beta.at(i, 0));
  for (char a : m.alphabet) {
    auto& t = m.trans.at(a);
    const auto& tp = p.trans.at(a);
    Matrix<Value> enter = mat_scale(c, u, mat_mul(c, p.alpha, tp));
    Matrix<Value> restart = mat_mul(c, p.beta, enter);
    for (std::size_t j = 0; j < p.dim; ++j) t.at(0, 1 + j) = enter.at(0, j);
    for (std::size_t i = 0; i < p.dim; ++i)
      for (std::size_t j = 0; j < p.dim; ++j)
        t.at(1 + i, 1 + j) = c.add(tp.at(i, j), restart.at(i, j));
  }
  return m;
}

}  // namespace detail

inline WeightedAutomaton compile_term(const Term& t, const Semiring& S,
                                      const std::string& sigma) {
  switch (t->op) {
    case TermOp::Zero:
      return detail::compile_const(S, sigma, S.zero());
    case TermOp::One:
      return detail::compile_const(S, sigma, S.one());
    case TermOp::NatConst:
      return detail::compile_const(S, sigma, S.from_nat(t->value));
    case TermOp::InfConst:
      return detail::compile_const(S, sigma, S.star(S.one()));
    case TermOp::Letter:
      return detail::compile_letter(S, sigma, t->letter);
    case TermOp::Sum:
      return detail::compile_sum(compile_term(t->a, S, sigma),
                                 compile_term(t->b, S, sigma));
    case TermOp::Prod:
      return detail::compile_prod(compile_term(t->a, S, sigma),
                                  compile_term(t->b, S, sigma));
    case TermOp::Star:
      return detail::compile_star(compile_term(t->a, S, sigma));
    case TermOp::Plus: {
      WeightedAutomaton p = compile_term(t->a, S, sigma);
      return detail::compile_prod(p, detail::compile_star(p));
    }
  }
  throw Error("unreachable");
}

namespace detail {

inline NormalTriple weight_triple(const Value& w, char a) {
  if (w.is_zero()) return nt_zero();
  if (w.tag == ValueTag::Inf)
    return NormalTriple{0, t_zero(), false, t_letter(a)};
  return NormalTriple{0, t_prod(t_nat(w.n), t_letter(a)), false, t_zero()};
}

inline NormalTriple scalar_triple(const Value& w) {
  if (w.tag == ValueTag::Inf) return nt_infinity();
  return nt_const(w.n);
}

}  // namespace detail

// alpha A* beta computed symbolically over normal triples, so every Star
// node is applied to an ideal term.
inline NormalTriple automaton_to_triple(const WeightedAutomaton& m) {
  if (m.dim == 0) return nt_zero();
  TripleCtx c;
  Matrix<NormalTriple> a(1, m.dim, nt_zero());
  Matrix<NormalTriple> b(m.dim, 1, nt_zero());
  Matrix<NormalTriple> tr(m.dim, m.dim, nt_zero());
  for (std::size_t i = 0; i < m.dim; ++i) {
    a.at(0, i) = detail::scalar_triple(m.alpha.at(0, i));
    b.at(i, 0) = detail::scalar_triple(m.beta.at(i, 0));
    for (std::size_t j = 0; j < m.dim; ++j)
      for (char s : m.alphabet)
        tr.at(i, j) = nt_add(tr.at(i, j),
                             detail::weight_triple(m.trans.at(s).at(i, j), s));
  }
  return mat_mul(c, a, mat_mul(c, mat_star(c, tr), b)).at(0, 0);
}

inline Term automaton_to_term(const WeightedAutomaton& m) {
  return normal_form_term(to_normal_form(automaton_to_triple(m)));
}

enum class SimDirection { Forward, Dual };

struct SimulationWitness {
  FunctionalMatrix rho;  // dim(M) -> dim(N)
  SimDirection direction;
};

inline bool check_simulation(const WeightedAutomaton& m,
                             const WeightedAutomaton& n,
                             const FunctionalMatrix& rho, SimDirection dir) {
  detail::require_compatible(m, n);
  if (rho.domain() != m.dim || rho.codomain() != n.dim)
    throw DimensionMismatch("simulation: rho shape mismatch");
  ScalarCtx c = m.ctx();
  if (dir == SimDirection::Forward) {
    Matrix<Value> r = rho.to_matrix(c);
    if (!mat_eq(c, mat_mul(c, m.alpha, r), n.alpha)) return false;
    if (!mat_eq(c, mat_mul(c, r, n.beta), m.beta)) return false;
    for (char a : m.alphabet)
      if (!mat_eq(c, mat_mul(c, m.trans.at(a), r),
                  mat_mul(c, r, n.trans.at(a))))
        return false;
    return true;
  }
  Matrix<Value> rt = rho.to_matrix_transposed(c);
  if (!mat_eq(c, mat_mul(c, n.alpha, rt), m.alpha)) return false;
  if (!mat_eq(c, mat_mul(c, rt, m.beta), n.beta)) return false;
  for (char a : m.alphabet)
    if (!mat_eq(c, mat_mul(c, n.trans.at(a), rt),
                mat_mul(c, rt, m.trans.at(a))))
      return false;
  return true;
}

// Exhaustive search over functional matrices dim(M) -> dim(N) in
// lexicographic order, trying forward then dual for each candidate.
inline std::optional<SimulationWitness> search_simulation(
    const WeightedAutomaton& m, const WeightedAutomaton& n,
    std::uint64_t budget = 2000000) {
  detail::require_compatible(m, n);
  if (n.dim == 0) {
    if (m.dim > 0) return std::nullopt;
    FunctionalMatrix rho(0, {});
    return SimulationWitness{rho, SimDirection::Forward};
  }
  std::vector<std::size_t> f(m.dim, 0);
  std::uint64_t tried = 0;
  while (true) {
    if (++tried > budget)
      throw SearchBudgetExceeded("simulation search budget exhausted");
    FunctionalMatrix rho(n.dim, f);
    if (check_simulation(m, n, rho, SimDirection::Forward))
      return SimulationWitness{rho, SimDirection::Forward};
    if (check_simulation(m, n, rho, SimDirection::Dual))
      return SimulationWitness{rho, SimDirection::Dual};
    std::size_t pos = f.size();
    while (pos > 0 && f[pos - 1] == n.dim - 1) f[--pos] = 0;
    if (pos == 0) return std::nullopt;
    ++f[pos - 1];
  }
}

// Witness that A refines through rho into a common atomic matrix C:
//   A_sigma = (rho C_sigma) || (rho_1..rho_m)
//   B_sigma = C_sigma || (tau_1..tau_n)
//   rho_i ; rho = tau_{rho(i)}
// C holds one single-letter unit atom (or 0) per entry; columns are
// grouped into one block per alphabet letter.
struct RefinementWitness {
  std::string alphabet;
  std::size_t k = 0;
  Matrix<Term> C;                      // n x k
  FunctionalMatrix rho;                // m -> n
  std::vector<FunctionalMatrix> rhos;  // per row of A: k -> m
  std::vector<FunctionalMatrix> taus;  // per row of B: k -> n

  // 0/1 coefficient matrix of letter a within C
  Matrix<Value> letter_coeffs(char a) const {
    Matrix<Value> r(C.rows(), C.cols(), Value::fin(0));
    for (std::size_t i = 0; i < C.rows(); ++i)
      for (std::size_t j = 0; j < C.cols(); ++j)
        if (C.at(i, j)->op == TermOp::Letter && C.at(i, j)->letter == a)
          r.at(i, j) = Value::fin(1);
    return r;
  }
};

namespace detail {

inline Nat fin_weight(const Value& v) {
  if (v.tag != ValueTag::Fin)
    throw SemiringMismatch("refinement requires finite weights");
  return v.n;
}

}  // namespace detail

inline RefinementWitness refine(const std::string& alphabet,
                                const std::map<char, Matrix<Value>>& as,
                                const std::map<char, Matrix<Value>>& bs,
                                const FunctionalMatrix& rho) {
  std::size_t m = rho.domain(), n = rho.codomain();
  ScalarCtx c{Semiring::nat()};
  Matrix<Value> r = rho.to_matrix(c);
  for (char s : alphabet) {
    const auto& a = as.at(s);
    const auto& b = bs.at(s);
    if (a.rows() != m || a.cols() != m || b.rows() != n || b.cols() != n)
      throw DimensionMismatch("refine: matrix shapes");
    if (!mat_eq(c, mat_mul(c, a, r), mat_mul(c, r, b)))
      throw PremiseViolated(std::string("refine: A rho != rho B at letter ") +
                            s);
  }

  std::vector<std::vector<std::size_t>> preimage(n);
  for (std::size_t i = 0; i < m; ++i) preimage[rho(i)].push_back(i);

  // per-letter block widths: enough columns for the widest B-row
  std::vector<std::size_t> width;
  std::size_t k = 0;
  for (char s : alphabet) {
    const auto& b = bs.at(s);
    std::size_t w = 0;
    for (std::size_t j = 0; j < n; ++j) {
      Nat t = 0;
      for (std::size_t j2 = 0; j2 < n; ++j2)
        t += detail::fin_weight(b.at(j, j2));
      if (t > w) w = static_cast<std::size_t>(t);
    }
    width.push_back(w);
    k += w;
  }

  RefinementWitness wit;
  wit.alphabet = alphabet;
  wit.k = k;
  wit.C = Matrix<Term>(n, k, t_zero());
  wit.rho = rho;
  std::size_t pad_target = n ? (m ? rho(0) : 0) : 0;
  std::vector<std::vector<std::size_t>> tau_map(
      n, std::vector<std::size_t>(k, pad_target));
  std::vector<std::vector<std::size_t>> rho_map(
      m, std::vector<std::size_t>(k, 0));

  std::size_t offset = 0;
  for (std::size_t li = 0; li < alphabet.size(); ++li) {
    char s = alphabet[li];
    const auto& a = as.at(s);
    const auto& b = bs.at(s);
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t p = offset;
      for (std::size_t j2 = 0; j2 < n; ++j2) {
        std::size_t cnt = static_cast<std::size_t>(
            detail::fin_weight(b.at(j, j2)));
        for (std::size_t q = 0; q < cnt; ++q, ++p) {
          wit.C.at(j, p) = t_letter(s);
          tau_map[j][p] = j2;
        }
      }
      // distribute this row's atoms among rho-preimages for each source i
      for (std::size_t i : preimage[j]) {
        std::size_t q = offset;
        for (std::size_t j2 = 0; j2 < n; ++j2) {
          for (std::size_t i2 : preimage[j2]) {
            std::size_t cnt = static_cast<std::size_t>(
                detail::fin_weight(a.at(i, i2)));
            for (std::size_t x = 0; x < cnt; ++x, ++q) rho_map[i][q] = i2;
          }
        }
        if (q != p)
          throw Error("refine: atom counts disagree despite premise");
      }
    }
    offset += width[li];
  }

  for (std::size_t i = 0; i < m; ++i)
    wit.rhos.emplace_back(m, rho_map[i]);
  for (std::size_t j = 0; j < n; ++j)
    wit.taus.emplace_back(n, tau_map[j]);
  return wit;
}

// Exact reconstruction and side-condition check for a witness.
inline bool verify_refinement(const RefinementWitness& w,
                              const std::map<char, Matrix<Value>>& as,
                              const std::map<char, Matrix<Value>>& bs) {
  std::size_t m = w.rho.domain();
  ScalarCtx c{Semiring::nat()};
  for (std::size_t i = 0; i < m; ++i)
    if (!(w.rhos[i].compose(w.rho) == w.taus[w.rho(i)])) return false;
  for (char s : w.alphabet) {
    Matrix<Value> cs = w.letter_coeffs(s);
    std::vector<Matrix<Value>> tau_mats, rho_mats;
    for (const auto& t : w.taus) tau_mats.push_back(t.to_matrix(c));
    for (const auto& t : w.rhos) rho_mats.push_back(t.to_matrix(c));
    if (!mat_eq(c, row_couple(c, cs, tau_mats), bs.at(s))) return false;
    Matrix<Value> rho_cs(m, w.k, Value::fin(0));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t p = 0; p < w.k; ++p)
        rho_cs.at(i, p) = cs.at(w.rho(i), p);
    if (!mat_eq(c, row_couple(c, rho_cs, rho_mats), as.at(s))) return false;
  }
  return true;
}

// Total DFA over the alphabet; states index into delta/accepting.
struct SupportDFA {
  std::string alphabet;
  std::size_t start = 0;
  std::vector<std::vector<std::size_t>> delta;  // [state][letter index]
  std::vector<bool> accepting;

  std::size_t size() const { return delta.size(); }

  bool accepts(const Word& w) const {
    std::size_t q = start;
    for (char a : w) {
      std::size_t li = alphabet.find(a);
      if (li == std::string::npos)
        throw AlphabetMismatch("dfa: letter outside alphabet");
      q = delta[q][li];
    }
    return accepting[q];
  }
};

// Boolifies the weights and runs the subset construction. Sound for N
// and Ninf coefficients: no zero divisors and no cancellation, so a
// word is in the support iff some accepting path exists.
inline SupportDFA support_dfa(const WeightedAutomaton& m) {
  std::size_t n = m.dim;
  auto nonzero = [&](const Value& v) { return !v.is_zero(); };
  std::vector<bool> init(n, false);
  for (std::size_t i = 0; i < n; ++i) init[i] = nonzero(m.alpha.at(0, i));

  SupportDFA d;
  d.alphabet = m.alphabet;
  std::map<std::vector<bool>, std::size_t> ids;
  std::vector<std::vector<bool>> states;
  auto intern = [&](const std::vector<bool>& s) {
    auto [it, fresh] = ids.emplace(s, states.size());
    if (fresh) {
      states.push_back(s);
      d.delta.emplace_back(m.alphabet.size(), 0);
      bool acc = false;
      for (std::size_t i = 0; i < n; ++i)
        if (s[i] && nonzero(m.beta.at(i, 0))) acc = true;
      d.accepting.push_back(acc);
    }
    return it->second;
  };
  d.start = intern(init);
  for (std::size_t q = 0; q < states.size(); ++q) {
    std::vector<bool> cur = states[q];
    for (std::size_t li = 0; li < m.alphabet.size(); ++li) {
      const auto& t = m.trans.at(m.alphabet[li]);
      std::vector<bool> next(n, false);
      for (std::size_t i = 0; i < n; ++i)
        if (cur[i])
          for (std::size_t j = 0; j < n; ++j)
            if (nonzero(t.at(i, j))) next[j] = true;
      d.delta[q][li] = intern(next);
    }
  }
  return d;
}

// Shortest word (length-lex) on which the two DFAs disagree, if any.
inline std::optional<Word> dfa_difference(const SupportDFA& a,
                                          const SupportDFA& b) {
  if (a.alphabet != b.alphabet)
    throw AlphabetMismatch("dfa comparison across alphabets");
  std::map<std::pair<std::size_t, std::size_t>, Word> seen;
  std::queue<std::pair<std::size_t, std::size_t>> q;
  auto push = [&](std::size_t x, std::size_t y, const Word& w) {
    if (seen.emplace(std::make_pair(x, y), w).second) q.emplace(x, y);
  };
  push(a.start, b.start, "");
  while (!q.empty()) {
    auto [x, y] = q.front();
    q.pop();
    const Word& w = seen.at({x, y});
    if (a.accepting[x] != b.accepting[y]) return w;
    for (std::size_t li = 0; li < a.alphabet.size(); ++li)
      push(a.delta[x][li], b.delta[y][li], w + a.alphabet[li]);
  }
  return std::nullopt;
}

enum class RestrictMode { Keep, Remove };

// Product with a DFA: keeps exactly the coefficients of words whose
// DFA membership matches the mode, zeroing the rest.
inline WeightedAutomaton restrict_to_dfa(const WeightedAutomaton& m,
                                         const SupportDFA& d,
                                         RestrictMode mode) {
  if (m.alphabet != d.alphabet)
    throw AlphabetMismatch("restrict_to_dfa: alphabet mismatch");
  std::size_t q = d.size();
  WeightedAutomaton r(m.S, m.alphabet, m.dim * q);
  auto idx = [&](std::size_t i, std::size_t s) { return i * q + s; };
  bool want = mode == RestrictMode::Keep;
  for (std::size_t i = 0; i < m.dim; ++i) {
    r.alpha.at(0, idx(i, d.start)) = m.alpha.at(0, i);
    for (std::size_t s = 0; s < q; ++s)
      if (d.accepting[s] == want)
        r.beta.at(idx(i, s), 0) = m.beta.at(i, 0);
  }
  for (std::size_t li = 0; li < m.alphabet.size(); ++li) {
    char a = m.alphabet[li];
    auto& t = r.trans.at(a);
    const auto& tm = m.trans.at(a);
    for (std::size_t i = 0; i < m.dim; ++i)
      for (std::size_t j = 0; j < m.dim; ++j)
        for (std::size_t s = 0; s < q; ++s)
          t.at(idx(i, s), idx(j, d.delta[s][li])) = tm.at(i, j);
  }
  return r;
}

namespace detail {

inline Value weight_into(const Semiring& target, const Value& w) {
  if (w.tag == ValueTag::Fin) return target.from_nat(w.n);
  if (w.tag == ValueTag::Inf && target.kind() == SemiringKind::Ninf)
    return Value::inf();
  throw SemiringMismatch("weight has no image in " + target.name());
}

}  // namespace detail

// Behavior of the automaton under a star-semiring morphism determined by
// a letter assignment: (alpha h)(A h)*(beta h) in the target semiring.
inline Value morphic_image(const WeightedAutomaton& m, const Semiring& target,
                           const std::map<char, Value>& h) {
  ScalarCtx c{target};
  if (m.dim == 0) return target.zero();
  Matrix<Value> a(1, m.dim, target.zero());
  Matrix<Value> b(m.dim, 1, target.zero());
  Matrix<Value> t(m.dim, m.dim, target.zero());
  for (std::size_t i = 0; i < m.dim; ++i) {
    a.at(0, i) = detail::weight_into(target, m.alpha.at(0, i));
    b.at(i, 0) = detail::weight_into(target, m.beta.at(i, 0));
    for (std::size_t j = 0; j < m.dim; ++j)
      for (char s : m.alphabet) {
        Value img = c.mul(detail::weight_into(target, m.trans.at(s).at(i, j)),
                          h.at(s));
        t.at(i, j) = c.add(t.at(i, j), img);
      }
  }
  return mat_mul(c, a, mat_mul(c, mat_star(c, t), b)).at(0, 0);
}

// Solution of x = s x + r over Ninf series, with the shape determined by
// the epsilon-coefficient of s; t parameterizes the solution set in the
// non-proper cases.
inline TruncatedSeries solve_linear(const TruncatedSeries& s,
                                    const TruncatedSeries& r,
                                    const TruncatedSeries& t) {
  if (s.semiring().kind() != SemiringKind::Ninf)
    throw SemiringMismatch("solve_linear: expects Ninf series");
  Value eps = s.coefficient("");
  TruncatedSeries sr = series_mul(series_star(s), r);
  if (eps.is_zero()) return sr;
  if (eps == Value::fin(1)) {
    TruncatedSeries s0 = s;
    s0.set("", s.semiring().zero());
    TruncatedSeries s0plus = series_mul(s0, series_star(s0));
    TruncatedSeries inf_const =
        series_const(s.semiring(), s.alphabet(), s.bound(), Value::inf());
    return series_add(sr,
                      series_add(series_mul(inf_const, series_mul(s0plus, t)),
                                 t));
  }
  return series_mul(series_star(s), series_add(r, t));
}

}  // namespace ratseries
