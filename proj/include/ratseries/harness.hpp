#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "normalize.hpp"
#include "rng.hpp"
#include "semiring.hpp"
#include "series.hpp"
#include "term.hpp"

namespace ratseries {

enum class Verdict { Pass, Fail, Skip };

struct CheckReport {
  std::string identity;
  std::string instance;
  Verdict verdict = Verdict::Pass;
  std::string detail;  // left/right values on the first failure
};

inline std::string verdict_str(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::Skip:
      return "skip";
  }
  return "?";
}

inline std::string show_value(const ScalarCtx& c, const Value& v) {
  return c.S.str(v);
}

inline std::string show_value(const SeriesCtx&, const TruncatedSeries& s) {
  return s.str();
}

// Multiplication table of a finite group; element 0 is the unit.
class CayleyTable {
 public:
  CayleyTable(std::string name, std::vector<std::vector<std::size_t>> table)
      : name_(std::move(name)), table_(std::move(table)) {
    std::size_t n = table_.size();
    if (n == 0) throw Error("group table: empty");
    for (const auto& row : table_) {
      if (row.size() != n) throw Error("group table: not square");
      for (std::size_t v : row)
        if (v >= n) throw Error("group table: index out of range");
    }
    for (std::size_t i = 0; i < n; ++i)
      if (table_[0][i] != i || table_[i][0] != i)
        throw Error("group table: element 0 is not a unit");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (table_[table_[i][j]][k] != table_[i][table_[j][k]])
            throw Error("group table: not associative");
    inv_.assign(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j)
        if (table_[i][j] == 0) inv_[i] = j;
      if (inv_[i] == n) throw Error("group table: missing inverse");
    }
  }

  const std::string& name() const { return name_; }
  std::size_t order() const { return table_.size(); }
  std::size_t mul(std::size_t i, std::size_t j) const { return table_[i][j]; }
  std::size_t inverse(std::size_t i) const { return inv_[i]; }

  static CayleyTable cyclic(std::size_t n) {
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) t[i][j] = (i + j) % n;
    return CayleyTable("z" + std::to_string(n), std::move(t));
  }

  // symmetric group on 3 points, elements as permutations in one-line
  // order: id, (12), (13), (23), (123), (132)
  static CayleyTable s3() {
    const std::size_t perms[6][3] = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0},
                                     {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
    auto compose = [&](std::size_t x, std::size_t y) {
      std::size_t r[3];
      for (int p = 0; p < 3; ++p) r[p] = perms[y][perms[x][p]];
      for (std::size_t z = 0; z < 6; ++z)
        if (perms[z][0] == r[0] && perms[z][1] == r[1] && perms[z][2] == r[2])
          return z;
      throw Error("unreachable");
    };
    std::vector<std::vector<std::size_t>> t(6, std::vector<std::size_t>(6));
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) t[i][j] = compose(i, j);
    return CayleyTable("s3", std::move(t));
  }

 private:
  std::string name_;
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> inv_;
};

// M_G with (i,j) entry a_{i^-1 j}
template <class V>
Matrix<V> group_matrix(const CayleyTable& g, const std::vector<V>& as) {
  std::size_t n = g.order();
  if (as.size() != n) throw DimensionMismatch("group_matrix: need n values");
  Matrix<V> m(n, n, as[0]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m.at(i, j) = as[g.mul(g.inverse(i), j)];
  return m;
}

// Evaluates a term in an arbitrary star context under a letter assignment.
template <class Ctx>
typename Ctx::value_type term_eval_in(
    const Ctx& ctx, const Term& t,
    const std::map<char, typename Ctx::value_type>& letters) {
  using V = typename Ctx::value_type;
  switch (t->op) {
    case TermOp::Zero:
      return ctx.zero();
    case TermOp::One:
      return ctx.one();
    case TermOp::NatConst: {
      V acc = ctx.zero();
      for (Nat i = 0; i < t->value; ++i) acc = ctx.add(acc, ctx.one());
      return acc;
    }
    case TermOp::InfConst:
      return ctx.star(ctx.one());
    case TermOp::Letter: {
      auto it = letters.find(t->letter);
      if (it == letters.end())
        throw AlphabetMismatch("no value assigned to letter");
      return it->second;
    }
    case TermOp::Sum:
      return ctx.add(term_eval_in(ctx, t->a, letters),
                     term_eval_in(ctx, t->b, letters));
    case TermOp::Prod:
      return ctx.mul(term_eval_in(ctx, t->a, letters),
                     term_eval_in(ctx, t->b, letters));
    case TermOp::Star:
      return ctx.star(term_eval_in(ctx, t->a, letters));
    case TermOp::Plus: {
      V v = term_eval_in(ctx, t->a, letters);
      return ctx.mul(v, ctx.star(v));
    }
  }
  throw Error("unreachable");
}

namespace detail {

template <class Ctx>
CheckReport equality_check(const Ctx& ctx, const std::string& identity,
                           const std::string& instance,
                           const std::function<typename Ctx::value_type()>& lhs,
                           const std::function<typename Ctx::value_type()>& rhs) {
  CheckReport r{identity, instance};
  try {
    auto l = lhs();
    auto rr = rhs();
    if (ctx.eq(l, rr)) {
      r.verdict = Verdict::Pass;
    } else {
      r.verdict = Verdict::Fail;
      r.detail = "left=" + show_value(ctx, l) + " right=" + show_value(ctx, rr);
    }
  } catch (const NotInStarDomain& e) {
    r.verdict = Verdict::Skip;
    r.detail = e.what();
  }
  return r;
}

}  // namespace detail

// The two Conway axioms plus the four standard consequences.
template <class Ctx>
std::vector<CheckReport> check_conway(const Ctx& ctx,
                                      const typename Ctx::value_type& a,
                                      const typename Ctx::value_type& b,
                                      const std::string& instance) {
  using V = typename Ctx::value_type;
  std::vector<CheckReport> out;
  auto chk = [&](const std::string& name, std::function<V()> l,
                 std::function<V()> r) {
    out.push_back(detail::equality_check(ctx, name, instance, l, r));
  };
  chk("(a+b)* = a*(ba*)*",
      [&] { return ctx.star(ctx.add(a, b)); },
      [&] {
        return ctx.mul(ctx.star(a), ctx.star(ctx.mul(b, ctx.star(a))));
      });
  chk("(ab)* = 1 + a(ba)*b",
      [&] { return ctx.star(ctx.mul(a, b)); },
      [&] {
        return ctx.add(ctx.one(),
                       ctx.mul(a, ctx.mul(ctx.star(ctx.mul(b, a)), b)));
      });
  chk("aa* + 1 = a*",
      [&] { return ctx.add(ctx.mul(a, ctx.star(a)), ctx.one()); },
      [&] { return ctx.star(a); });
  chk("0* = 1", [&] { return ctx.star(ctx.zero()); },
      [&] { return ctx.one(); });
  chk("(ab)*a = a(ba)*",
      [&] { return ctx.mul(ctx.star(ctx.mul(a, b)), a); },
      [&] { return ctx.mul(a, ctx.star(ctx.mul(b, a))); });
  chk("(a+b)* = (a*b)*a*",
      [&] { return ctx.star(ctx.add(a, b)); },
      [&] {
        return ctx.mul(ctx.star(ctx.mul(ctx.star(a), b)), ctx.star(a));
      });
  return out;
}

// e_1 M_G* u_n = (a_1 + ... + a_n)*
template <class Ctx>
CheckReport check_group_identity(const Ctx& ctx, const CayleyTable& g,
                                 const std::vector<typename Ctx::value_type>& as,
                                 const std::string& instance) {
  using V = typename Ctx::value_type;
  return detail::equality_check(
      ctx, "group identity [" + g.name() + "]", instance,
      std::function<V()>([&] {
        Matrix<V> st = mat_star(ctx, group_matrix(g, as));
        V acc = ctx.zero();
        for (std::size_t j = 0; j < g.order(); ++j)
          acc = ctx.add(acc, st.at(0, j));
        return acc;
      }),
      std::function<V()>([&] {
        V acc = ctx.zero();
        for (const V& a : as) acc = ctx.add(acc, a);
        return ctx.star(acc);
      }));
}

// Shared shape for the commutative identity and its dual; C entries are
// letter-linear polynomial terms with coefficients in N.
struct CommutativeInstance {
  Matrix<Term> C;  // n x k
  FunctionalMatrix rho;                // m -> n, surjective
  std::vector<FunctionalMatrix> rhos;  // m of them, k -> m
  std::vector<FunctionalMatrix> taus;  // n of them, k -> n
};

inline CommutativeInstance generate_commutative_instance(
    Rng& rng, std::size_t m, std::size_t n, std::size_t k,
    const std::string& alphabet) {
  if (m < n) throw Error("commutative instance: need m >= n for onto rho");
  CommutativeInstance inst;

  // surjective rho: hit each target once at a random position, fill the rest
  std::vector<std::size_t> slots(m);
  std::iota(slots.begin(), slots.end(), 0);
  for (std::size_t i = 0; i + 1 < m; ++i)
    std::swap(slots[i], slots[i + rng.below(m - i)]);
  std::vector<std::size_t> rho_map(m);
  for (std::size_t i = 0; i < m; ++i)
    rho_map[i] = n ? rng.below(n) : 0;
  for (std::size_t j = 0; j < n; ++j) rho_map[slots[j]] = j;
  inst.rho = FunctionalMatrix(n, rho_map);

  std::vector<std::vector<std::size_t>> preimage(n);
  for (std::size_t i = 0; i < m; ++i) preimage[rho_map[i]].push_back(i);

  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::size_t> t(k);
    for (std::size_t p = 0; p < k; ++p) t[p] = rng.below(n);
    inst.taus.emplace_back(n, t);
  }
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::size_t> r(k);
    for (std::size_t p = 0; p < k; ++p) {
      const auto& pre = preimage[inst.taus[rho_map[i]](p)];
      r[p] = pre[rng.below(pre.size())];
    }
    inst.rhos.emplace_back(m, r);
  }

  inst.C = Matrix<Term>(n, k, t_zero());
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t p = 0; p < k; ++p) {
      Term e = t_zero();
      for (char a : alphabet) {
        Nat w = Nat(rng.below(3));
        e = t_sum(e, t_prod(t_nat(w), t_letter(a)));
      }
      inst.C.at(j, p) = e;
    }
  return inst;
}

enum class CommDirection { Primal, Dual };

template <class Ctx>
CheckReport check_commutative(
    const Ctx& ctx, const CommutativeInstance& inst,
    const std::map<char, typename Ctx::value_type>& letters,
    CommDirection dir, const std::string& instance) {
  using V = typename Ctx::value_type;
  std::size_t m = inst.rho.domain(), n = inst.rho.codomain(),
              k = inst.C.cols();
  for (std::size_t i = 0; i < m; ++i)
    if (!(inst.rhos[i].compose(inst.rho) == inst.taus[inst.rho(i)]))
      throw PremiseViolated("commutative identity: rho_i rho != tau_{i rho}");

  Matrix<V> c(n, k, ctx.zero());
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t p = 0; p < k; ++p)
      c.at(j, p) = term_eval_in(ctx, inst.C.at(j, p), letters);

  std::string name;
  Matrix<V> lhs(0, 0, ctx.zero()), rhs(0, 0, ctx.zero());
  if (dir == CommDirection::Primal) {
    name = "commutative identity";
    Matrix<V> rho_c(m, k, ctx.zero());
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t p = 0; p < k; ++p)
        rho_c.at(i, p) = c.at(inst.rho(i), p);
    std::vector<Matrix<V>> rho_mats, tau_mats;
    for (const auto& f : inst.rhos) rho_mats.push_back(f.to_matrix(ctx));
    for (const auto& f : inst.taus) tau_mats.push_back(f.to_matrix(ctx));
    Matrix<V> a = row_couple(ctx, rho_c, rho_mats);
    Matrix<V> b = row_couple(ctx, c, tau_mats);
    Matrix<V> r = inst.rho.to_matrix(ctx);
    lhs = mat_mul(ctx, mat_star(ctx, a), r);
    rhs = mat_mul(ctx, r, mat_star(ctx, b));
  } else {
    name = "dual commutative identity";
    Matrix<V> ct = c.transposed();  // k x n
    Matrix<V> rt = inst.rho.to_matrix_transposed(ctx);  // n x m
    std::vector<Matrix<V>> rho_t, tau_t;
    for (const auto& f : inst.rhos)
      rho_t.push_back(f.to_matrix_transposed(ctx));  // m x k
    for (const auto& f : inst.taus)
      tau_t.push_back(f.to_matrix_transposed(ctx));  // n x k
    Matrix<V> a = col_couple(ctx, rho_t, mat_mul(ctx, ct, rt));  // m x m
    Matrix<V> b = col_couple(ctx, tau_t, ct);                    // n x n
    lhs = mat_mul(ctx, rt, mat_star(ctx, a));
    rhs = mat_mul(ctx, mat_star(ctx, b), rt);
  }

  CheckReport rep{name, instance, Verdict::Pass, ""};
  for (std::size_t i = 0; i < lhs.rows(); ++i)
    for (std::size_t j = 0; j < lhs.cols(); ++j)
      if (!ctx.eq(lhs.at(i, j), rhs.at(i, j))) {
        rep.verdict = Verdict::Fail;
        rep.detail = "entry (" + std::to_string(i) + "," + std::to_string(j) +
                     "): left=" + show_value(ctx, lhs.at(i, j)) +
                     " right=" + show_value(ctx, rhs.at(i, j));
        return rep;
      }
  return rep;
}

// aa* + 1 <= a*; the two least-pre-fixed-point rules; 1*a = a1*.
template <class Ctx>
std::vector<CheckReport> check_inductive_laws(
    const Ctx& ctx, const typename Ctx::value_type& a,
    const typename Ctx::value_type& b, const typename Ctx::value_type& x,
    const std::function<bool(const typename Ctx::value_type&,
                             const typename Ctx::value_type&)>& leq,
    const std::string& instance) {
  using V = typename Ctx::value_type;
  std::vector<CheckReport> out;
  auto ineq = [&](const std::string& name, const V& l, const V& r) {
    CheckReport rep{name, instance};
    if (leq(l, r)) {
      rep.verdict = Verdict::Pass;
    } else {
      rep.verdict = Verdict::Fail;
      rep.detail = "left=" + show_value(ctx, l) +
                   " not below right=" + show_value(ctx, r);
    }
    out.push_back(rep);
  };

  ineq("aa* + 1 <= a*", ctx.add(ctx.mul(a, ctx.star(a)), ctx.one()),
       ctx.star(a));

  if (leq(ctx.add(ctx.mul(a, x), b), x)) {
    ineq("ax + b <= x  =>  a*b <= x", ctx.mul(ctx.star(a), b), x);
  } else {
    out.push_back({"ax + b <= x  =>  a*b <= x", instance, Verdict::Skip,
                   "premise not satisfied"});
  }
  if (leq(ctx.add(ctx.mul(x, a), b), x)) {
    ineq("xa + b <= x  =>  ba* <= x", ctx.mul(b, ctx.star(a)), x);
  } else {
    out.push_back({"xa + b <= x  =>  ba* <= x", instance, Verdict::Skip,
                   "premise not satisfied"});
  }

  V one_star = ctx.star(ctx.one());
  out.push_back(detail::equality_check(
      ctx, "1*a = a1*", instance,
      std::function<V()>([&] { return ctx.mul(one_star, a); }),
      std::function<V()>([&] { return ctx.mul(a, one_star); })));
  return out;
}

// Random generators shared by tests and the CLI check runner.

inline Term random_term(Rng& rng, int depth, const std::string& alphabet) {
  if (depth <= 0 || rng.below(4) == 0) {
    switch (rng.below(6)) {
      case 0:
        return t_zero();
      case 1:
        return t_one();
      case 2:
        return t_nat(Nat(2 + rng.below(2)));
      default:
        return t_letter(alphabet[rng.below(alphabet.size())]);
    }
  }
  switch (rng.below(5)) {
    case 0:
      return t_sum(random_term(rng, depth - 1, alphabet),
                   random_term(rng, depth - 1, alphabet));
    case 1:
      return t_prod(random_term(rng, depth - 1, alphabet),
                    random_term(rng, depth - 1, alphabet));
    case 2:
      return t_plus(random_term(rng, depth - 1, alphabet));
    default:
      return t_star(random_term(rng, depth - 1, alphabet));
  }
}

inline TruncatedSeries random_series(Rng& rng, const Semiring& s,
                                     const std::string& alphabet, int bound,
                                     bool proper = false) {
  TruncatedSeries r(s, alphabet, bound);
  for (const Word& w : words_up_to(alphabet, bound)) {
    if (proper && w.empty()) continue;
    if (rng.below(3) == 0) continue;
    Value v = s.kind() == SemiringKind::Ninf && rng.below(6) == 0
                  ? Value::inf()
                  : s.from_nat(Nat(rng.below(3)));
    r.set(w, v);
  }
  return r;
}

}  // namespace ratseries
