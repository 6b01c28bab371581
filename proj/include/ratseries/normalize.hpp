#pragma once

#include <string>

#include "nat.hpp"
#include "semiring.hpp"
#include "term.hpp"

namespace ratseries {

// s* b and b s* written without a bare star so the result stays ideal
// whenever s and b are: s*b = b + s+.b and bs* = b + b.s+.
inline Term star_times(const Term& s, const Term& b) {
  return t_sum(b, t_prod(t_plus(s), b));
}

inline Term times_star(const Term& b, const Term& s) {
  return t_sum(b, t_prod(b, t_plus(s)));
}

// A term split as  c + t0 + 1*(unit + y)  with c a natural constant,
// t0 and y ideal, and unit a 0/1 flag. Constants in front of a live
// 1*-part are absorbed (c + 1*(1 + y) = 1*(1 + y)), so unit implies
// c = 0. Closed under +, ., * below; every value is equivalent to the
// term it was computed from.
struct NormalTriple {
  Nat c = 0;
  Term t0 = t_zero();
  bool unit = false;
  Term y = t_zero();
};

inline NormalTriple nt_zero() { return {}; }

inline NormalTriple nt_const(const Nat& n) { return {n}; }

inline NormalTriple nt_letter(char a) { return {0, t_letter(a)}; }

inline NormalTriple nt_infinity() { return {0, t_zero(), true, t_zero()}; }

inline NormalTriple nt_add(const NormalTriple& p, const NormalTriple& s) {
  NormalTriple r;
  r.t0 = t_sum(p.t0, s.t0);
  r.y = t_sum(p.y, s.y);
  r.unit = p.unit || s.unit;
  r.c = r.unit ? Nat(0) : p.c + s.c;
  return r;
}

inline NormalTriple nt_mul(const NormalTriple& p, const NormalTriple& s) {
  auto gate = [](bool u, const Term& t) { return u ? t : t_zero(); };
  NormalTriple r;
  // finite parts multiply directly
  r.t0 = t_sum(t_prod(t_nat(p.c), s.t0),
               t_sum(t_prod(p.t0, t_nat(s.c)), t_prod(p.t0, s.t0)));
  // unit contributions: c_p u_s + u_p c_s + u_p u_s
  Nat unit_nat = (s.unit ? p.c : Nat(0)) + (p.unit ? s.c : Nat(0)) +
                 ((p.unit && s.unit) ? Nat(1) : Nat(0));
  r.unit = unit_nat >= 1;
  r.c = r.unit ? Nat(0) : p.c * s.c;
  // everything else lands under 1*
  Term yy = t_prod(t_nat(p.c), s.y);
  yy = t_sum(yy, gate(s.unit, p.t0));
  yy = t_sum(yy, t_prod(p.t0, s.y));
  yy = t_sum(yy, t_prod(p.y, t_nat(s.c)));
  yy = t_sum(yy, t_prod(p.y, s.t0));
  yy = t_sum(yy, gate(p.unit, s.t0));
  yy = t_sum(yy, gate(p.unit, s.y));
  yy = t_sum(yy, gate(s.unit, p.y));
  yy = t_sum(yy, t_prod(p.y, s.y));
  r.y = yy;
  return r;
}

inline NormalTriple nt_star(const NormalTriple& s) {
  if (s.c == 0 && !s.unit) {
    // (t0 + 1*y)* = 1 + t0+ + 1*(t0 + y)* y t0*
    NormalTriple r;
    r.c = 1;
    r.t0 = t_plus(s.t0);
    r.y = times_star(star_times(t_sum(s.t0, s.y), s.y), s.t0);
    return r;
  }
  // constant term >= 1 (or a 1* unit): (n + a)* = 1*a*, and
  // 1*(t0 + y)* = 1*(1 + (t0 + y)+)
  NormalTriple r;
  r.unit = true;
  r.y = t_plus(t_sum(s.t0, s.y));
  return r;
}

// tc + t0 + 1*tInf; t0 always ideal, tInf ideal whenever tc != 0.
struct NormalForm {
  Nat tc = 0;
  Term t0 = t_zero();
  Term tinf = t_zero();
};

inline NormalForm to_normal_form(const NormalTriple& t) {
  return {t.c, t.t0, t.unit ? t_sum(t_one(), t.y) : t.y};
}

inline Term normal_form_term(const NormalForm& nf) {
  return t_sum(t_nat(nf.tc),
               t_sum(nf.t0, t_prod(t_star(t_one()), nf.tinf)));
}

inline NormalTriple normalize_triple(const Term& t) {
  switch (t->op) {
    case TermOp::Zero:
      return nt_zero();
    case TermOp::One:
      return nt_const(1);
    case TermOp::NatConst:
      return nt_const(t->value);
    case TermOp::InfConst:
      return nt_infinity();
    case TermOp::Letter:
      return nt_letter(t->letter);
    case TermOp::Sum:
      return nt_add(normalize_triple(t->a), normalize_triple(t->b));
    case TermOp::Prod:
      return nt_mul(normalize_triple(t->a), normalize_triple(t->b));
    case TermOp::Star:
      return nt_star(normalize_triple(t->a));
    case TermOp::Plus: {
      NormalTriple s = normalize_triple(t->a);
      return nt_mul(s, nt_star(s));
    }
  }
  throw Error("unreachable");
}

inline NormalForm normalize(const Term& t) {
  return to_normal_form(normalize_triple(t));
}

inline std::string normal_form_str(const NormalForm& nf) {
  return "tc=" + nat_str(nf.tc) + ", t0=" + term_str(nf.t0) +
         ", tinf=" + term_str(nf.tinf);
}

// Star context over triples; used to run the generic matrix star
// symbolically so every Star node is built with an ideal argument.
struct TripleCtx {
  using value_type = NormalTriple;

  NormalTriple zero() const { return nt_zero(); }
  NormalTriple one() const { return nt_const(1); }
  NormalTriple add(const NormalTriple& a, const NormalTriple& b) const {
    return nt_add(a, b);
  }
  NormalTriple mul(const NormalTriple& a, const NormalTriple& b) const {
    return nt_mul(a, b);
  }
  NormalTriple star(const NormalTriple& a) const { return nt_star(a); }
  bool eq(const NormalTriple& a, const NormalTriple& b) const {
    return a.c == b.c && a.unit == b.unit && equal_terms(a.t0, b.t0) &&
           equal_terms(a.y, b.y);
  }
};

}  // namespace ratseries
