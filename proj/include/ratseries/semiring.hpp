#pragma once

#include <memory>
#include <string>
#include <utility>

#include "errors.hpp"
#include "nat.hpp"

namespace ratseries {

// Tagged scalar value. Which tags are legal depends on the semiring:
//   N, Bool, QuotientK : Fin only
//   Ninf               : Fin or Inf
//   InitialIteration   : Fin, StarPow (exponent in n), StarStar
// OneStarImage values reuse the inner semiring's representation.
enum class ValueTag : unsigned char { Fin, Inf, StarPow, StarStar };

struct Value {
  ValueTag tag = ValueTag::Fin;
  Nat n = 0;  // Fin: the number; StarPow: the exponent p >= 1

  static Value fin(Nat v) { return Value{ValueTag::Fin, std::move(v)}; }
  static Value inf() { return Value{ValueTag::Inf, 0}; }
  static Value star_pow(Nat p) { return Value{ValueTag::StarPow, std::move(p)}; }
  static Value star_star() { return Value{ValueTag::StarStar, 0}; }

  bool is_fin() const { return tag == ValueTag::Fin; }
  bool is_zero() const { return tag == ValueTag::Fin && n == 0; }

  friend bool operator==(const Value& a, const Value& b) {
    return a.tag == b.tag && a.n == b.n;
  }
  friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }
};

enum class SemiringKind {
  N,                 // naturals, star defined only on 0
  Ninf,              // naturals with a top element, total star
  Bool,              // {0,1}, or/and, star constantly 1
  QuotientK,         // N_inf with everything >= k collapsed to k
  InitialIteration,  // 0 < 1 < ... < 1* < (1*)^2 < ... < 1**
  OneStarImage,      // {1*a : a in S} for a total-star inner semiring S
};

// Runtime semiring descriptor: exact add/mul, (partial) star, natural order.
// Values are immutable and all operations are pure.
class Semiring {
 public:
  static Semiring nat() { return Semiring(SemiringKind::N); }
  static Semiring nat_inf() { return Semiring(SemiringKind::Ninf); }
  static Semiring boolean() { return Semiring(SemiringKind::Bool); }
  static Semiring quotient(unsigned k) {
    if (k < 1) throw Error("quotient modulus must be >= 1");
    Semiring s(SemiringKind::QuotientK);
    s.k_ = k;
    return s;
  }
  static Semiring initial_iteration() {
    return Semiring(SemiringKind::InitialIteration);
  }

  // The semiring 1*S of Lemma "a |-> 1*a". Needs a totally defined star
  // on the inner semiring, so N is rejected.
  Semiring one_star_image() const {
    switch (kind_) {
      case SemiringKind::Ninf:
      case SemiringKind::Bool:
      case SemiringKind::QuotientK:
        break;
      default:
        throw Error("one_star_image: inner semiring must have total star");
    }
    Semiring s(SemiringKind::OneStarImage);
    s.inner_ = std::make_shared<Semiring>(*this);
    return s;
  }

  SemiringKind kind() const { return kind_; }
  unsigned modulus() const { return k_; }
  const Semiring& inner() const { return *inner_; }

  bool same(const Semiring& o) const {
    if (kind_ != o.kind_ || k_ != o.k_) return false;
    if (kind_ == SemiringKind::OneStarImage) return inner_->same(*o.inner_);
    return true;
  }

  Value zero() const { return Value::fin(0); }

  Value one() const {
    if (kind_ == SemiringKind::OneStarImage)
      return inner_->star(inner_->one());  // the unit of 1*S is 1*
    return Value::fin(1);
  }

  Value add(const Value& a, const Value& b) const {
    check(a);
    check(b);
    switch (kind_) {
      case SemiringKind::N:
        return Value::fin(a.n + b.n);
      case SemiringKind::Ninf:
        if (a.tag == ValueTag::Inf || b.tag == ValueTag::Inf)
          return Value::inf();
        return Value::fin(a.n + b.n);
      case SemiringKind::Bool:
        return Value::fin((a.n != 0 || b.n != 0) ? 1 : 0);
      case SemiringKind::QuotientK: {
        Nat s = a.n + b.n;
        return Value::fin(s > k_ ? Nat(k_) : s);
      }
      case SemiringKind::InitialIteration: {
        if (a.tag == ValueTag::Fin && b.tag == ValueTag::Fin)
          return Value::fin(a.n + b.n);
        // max rule once either summand is at least 1*
        return initial_less(a, b) ? b : a;
      }
      case SemiringKind::OneStarImage:
        return inner_->add(a, b);
    }
    throw Error("unreachable");
  }

  Value mul(const Value& a, const Value& b) const {
    check(a);
    check(b);
    switch (kind_) {
      case SemiringKind::N:
        return Value::fin(a.n * b.n);
      case SemiringKind::Ninf:
        if (a.is_zero() || b.is_zero()) return zero();
        if (a.tag == ValueTag::Inf || b.tag == ValueTag::Inf)
          return Value::inf();
        return Value::fin(a.n * b.n);
      case SemiringKind::Bool:
        return Value::fin((a.n != 0 && b.n != 0) ? 1 : 0);
      case SemiringKind::QuotientK: {
        Nat p = a.n * b.n;
        return Value::fin(p > k_ ? Nat(k_) : p);
      }
      case SemiringKind::InitialIteration: {
        if (a.is_zero() || b.is_zero()) return zero();
        if (a.tag == ValueTag::StarStar || b.tag == ValueTag::StarStar)
          return Value::star_star();
        if (a.tag == ValueTag::StarPow && b.tag == ValueTag::StarPow)
          return Value::star_pow(a.n + b.n);
        if (a.tag == ValueTag::StarPow) return a;  // n(1*)^p = (1*)^p, n >= 1
        if (b.tag == ValueTag::StarPow) return b;
        return Value::fin(a.n * b.n);
      }
      case SemiringKind::OneStarImage:
        return inner_->mul(a, b);
    }
    throw Error("unreachable");
  }

  bool in_star_domain(const Value& a) const {
    check(a);
    // D({N}) = {0}: the least ideal. Every other kind has total star.
    if (kind_ == SemiringKind::N) return a.is_zero();
    return true;
  }

  bool total_star() const { return kind_ != SemiringKind::N; }

  Value star(const Value& a) const {
    check(a);
    switch (kind_) {
      case SemiringKind::N:
        if (a.is_zero()) return one();
        throw NotInStarDomain("star of " + str(a) + " undefined in N");
      case SemiringKind::Ninf:
        return a.is_zero() ? one() : Value::inf();
      case SemiringKind::Bool:
        return one();
      case SemiringKind::QuotientK:
        return a.is_zero() ? one() : Value::fin(k_);
      case SemiringKind::InitialIteration:
        if (a.is_zero()) return one();
        if (a == Value::fin(1)) return Value::star_pow(1);
        return Value::star_star();
      case SemiringKind::OneStarImage: {
        // (1*a)^(x) = 1*(1*a)^*, computed in the inner semiring
        Value one_star = inner_->star(inner_->one());
        return inner_->mul(one_star, inner_->star(a));
      }
    }
    throw Error("unreachable");
  }

  // Natural order (total on every supported kind; coincides with the sum
  // order for N, Ninf, Bool, QuotientK and InitialIteration).
  bool leq(const Value& a, const Value& b) const {
    check(a);
    check(b);
    if (kind_ == SemiringKind::OneStarImage) return inner_->leq(a, b);
    if (a.tag == b.tag) {
      if (a.tag == ValueTag::Fin || a.tag == ValueTag::StarPow)
        return a.n <= b.n;
      return true;
    }
    return rank(a) < rank(b);
  }

  bool eq(const Value& a, const Value& b) const {
    check(a);
    check(b);
    return a == b;
  }

  // Image of a natural number under the unique morphism from N.
  Value from_nat(const Nat& n) const {
    switch (kind_) {
      case SemiringKind::N:
      case SemiringKind::Ninf:
      case SemiringKind::InitialIteration:
        return Value::fin(n);
      case SemiringKind::Bool:
        return Value::fin(n == 0 ? 0 : 1);
      case SemiringKind::QuotientK:
        return Value::fin(n > k_ ? Nat(k_) : n);
      case SemiringKind::OneStarImage:
        return project(inner_->from_nat(n));
    }
    throw Error("unreachable");
  }

  // The star-semiring morphism a |-> 1*a onto the OneStarImage carrier.
  // Only meaningful when this semiring is a OneStarImage.
  Value project(const Value& inner_value) const {
    if (kind_ != SemiringKind::OneStarImage)
      throw Error("project: not a one-star image semiring");
    Value one_star = inner_->star(inner_->one());
    return inner_->mul(one_star, inner_value);
  }

  bool contains(const Value& v) const {
    switch (kind_) {
      case SemiringKind::N:
        return v.tag == ValueTag::Fin;
      case SemiringKind::Ninf:
        return v.tag == ValueTag::Fin || v.tag == ValueTag::Inf;
      case SemiringKind::Bool:
        return v.tag == ValueTag::Fin && v.n <= 1;
      case SemiringKind::QuotientK:
        return v.tag == ValueTag::Fin && v.n <= k_;
      case SemiringKind::InitialIteration:
        return v.tag != ValueTag::Inf &&
               (v.tag != ValueTag::StarPow || v.n >= 1);
      case SemiringKind::OneStarImage:
        // carrier = image of a |-> 1*a
        return inner_->contains(v) && v == project(v);
    }
    return false;
  }

  std::string str(const Value& v) const {
    switch (v.tag) {
      case ValueTag::Fin:
        return nat_str(v.n);
      case ValueTag::Inf:
        return "inf";
      case ValueTag::StarPow:
        return v.n == 1 ? "1*" : "1*^" + nat_str(v.n);
      case ValueTag::StarStar:
        return "1**";
    }
    return "?";
  }

  Value parse(const std::string& text) const {
    if (text == "inf") {
      Value v = Value::inf();
      if (!contains(v)) throw Error("value 'inf' not in this semiring");
      return v;
    }
    if (text == "1**") return Value::star_star();
    if (text.rfind("1*", 0) == 0 && kind_ == SemiringKind::InitialIteration) {
      if (text == "1*") return Value::star_pow(1);
      if (text.size() > 3 && text[2] == '^')
        return Value::star_pow(Nat(text.substr(3)));
    }
    for (char c : text)
      if (c < '0' || c > '9') throw Error("bad value literal: " + text);
    if (text.empty()) throw Error("empty value literal");
    Value v = Value::fin(Nat(text));
    if (!contains(v)) throw Error("value " + text + " not in this semiring");
    return v;
  }

  std::string name() const {
    switch (kind_) {
      case SemiringKind::N:
        return "n";
      case SemiringKind::Ninf:
        return "ninf";
      case SemiringKind::Bool:
        return "bool";
      case SemiringKind::QuotientK:
        return "k:" + std::to_string(k_);
      case SemiringKind::InitialIteration:
        return "initial";
      case SemiringKind::OneStarImage:
        return "1*(" + inner_->name() + ")";
    }
    return "?";
  }

 private:
  explicit Semiring(SemiringKind k) : kind_(k) {}

  static int rank(const Value& v) {
    switch (v.tag) {
      case ValueTag::Fin:
        return 0;
      case ValueTag::StarPow:
        return 1;
      case ValueTag::Inf:
      case ValueTag::StarStar:
        return 2;
    }
    return 3;
  }

  bool initial_less(const Value& a, const Value& b) const {
    if (rank(a) != rank(b)) return rank(a) < rank(b);
    return a.n < b.n;
  }

  void check(const Value& v) const {
    if (!contains(v))
      throw SemiringMismatch("value " + str(v) + " not in semiring " + name());
  }

  SemiringKind kind_;
  unsigned k_ = 0;
  std::shared_ptr<Semiring> inner_;
};

// Coefficient-wise morphisms used by the series module.
class Morphism {
 public:
  enum class Op {
    Identity,
    NatToNinf,        // inclusion N -> Ninf
    QuotientToK,      // Ninf -> k, min(a, k)
    InitialCollapse,  // initial iteration semiring -> Ninf, 1*-classes to inf
    SupportToBool,    // N or Ninf -> Bool, nonzero to 1
    OneStarProject,   // S -> 1*S, a |-> 1*a
  };

  static Morphism identity(const Semiring& s) {
    return Morphism(Op::Identity, s, s);
  }
  static Morphism nat_to_ninf() {
    return Morphism(Op::NatToNinf, Semiring::nat(), Semiring::nat_inf());
  }
  static Morphism quotient_to_k(unsigned k) {
    return Morphism(Op::QuotientToK, Semiring::nat_inf(),
                    Semiring::quotient(k));
  }
  static Morphism initial_collapse() {
    return Morphism(Op::InitialCollapse, Semiring::initial_iteration(),
                    Semiring::nat_inf());
  }
  static Morphism support_to_bool(const Semiring& from) {
    return Morphism(Op::SupportToBool, from, Semiring::boolean());
  }
  static Morphism one_star_project(const Semiring& from) {
    return Morphism(Op::OneStarProject, from, from.one_star_image());
  }

  const Semiring& from() const { return from_; }
  const Semiring& to() const { return to_; }

  Value operator()(const Value& v) const {
    switch (op_) {
      case Op::Identity:
        return v;
      case Op::NatToNinf:
        return v;
      case Op::QuotientToK:
        if (v.tag == ValueTag::Inf) return Value::fin(to_.modulus());
        return to_.from_nat(v.n);
      case Op::InitialCollapse:
        return v.tag == ValueTag::Fin ? v : Value::inf();
      case Op::SupportToBool:
        return Value::fin(v.is_zero() ? 0 : 1);
      case Op::OneStarProject:
        return to_.project(v);
    }
    throw Error("unreachable");
  }

 private:
  Morphism(Op op, Semiring from, Semiring to)
      : op_(op), from_(std::move(from)), to_(std::move(to)) {}
  Op op_;
  Semiring from_;
  Semiring to_;
};

// quotient_to_k on scalars, exposed with the shape used in the text:
// min(a, k) with inf |-> k.
inline Value quotient_to_k(unsigned k, const Value& extended_nat) {
  return Morphism::quotient_to_k(k)(extended_nat);
}

// Scalar star context for the generic matrix routines.
struct ScalarCtx {
  using value_type = Value;
  Semiring S;

  Value zero() const { return S.zero(); }
  Value one() const { return S.one(); }
  Value add(const Value& a, const Value& b) const { return S.add(a, b); }
  Value mul(const Value& a, const Value& b) const { return S.mul(a, b); }
  Value star(const Value& a) const { return S.star(a); }
  bool eq(const Value& a, const Value& b) const { return S.eq(a, b); }
};

}  // namespace ratseries
