#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <string>
#include <utility>

#include "errors.hpp"
#include "nat.hpp"
#include "semiring.hpp"
#include "series.hpp"

namespace ratseries {

// Rational expression AST. Plus(t) is kept as an explicit node for t.t*
// so that ideality stays a syntactic property; evaluation expands it.
enum class TermOp : unsigned char {
  Zero,
  One,
  NatConst,
  InfConst,
  Letter,
  Sum,
  Prod,
  Star,
  Plus,
};

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct TermNode {
  TermOp op;
  Nat value = 0;    // NatConst
  char letter = 0;  // Letter
  Term a, b;        // children
};

inline Term t_zero() {
  static const Term t = std::make_shared<TermNode>(TermNode{TermOp::Zero});
  return t;
}

inline Term t_one() {
  static const Term t = std::make_shared<TermNode>(TermNode{TermOp::One});
  return t;
}

inline Term t_inf() {
  static const Term t = std::make_shared<TermNode>(TermNode{TermOp::InfConst});
  return t;
}

inline Term t_nat(const Nat& n) {
  if (n == 0) return t_zero();
  if (n == 1) return t_one();
  return std::make_shared<TermNode>(TermNode{TermOp::NatConst, n});
}

inline Term t_letter(char a) {
  return std::make_shared<TermNode>(TermNode{TermOp::Letter, 0, a});
}

inline bool is_term_zero(const Term& t) { return t->op == TermOp::Zero; }
inline bool is_term_one(const Term& t) { return t->op == TermOp::One; }

inline Term t_sum(const Term& a, const Term& b) {
  if (is_term_zero(a)) return b;
  if (is_term_zero(b)) return a;
  return std::make_shared<TermNode>(TermNode{TermOp::Sum, 0, 0, a, b});
}

inline Term t_prod(const Term& a, const Term& b) {
  if (is_term_zero(a) || is_term_zero(b)) return t_zero();
  if (is_term_one(a)) return b;
  if (is_term_one(b)) return a;
  return std::make_shared<TermNode>(TermNode{TermOp::Prod, 0, 0, a, b});
}

inline Term t_star(const Term& a) {
  if (is_term_zero(a)) return t_one();
  return std::make_shared<TermNode>(TermNode{TermOp::Star, 0, 0, a});
}

inline Term t_plus(const Term& a) {
  if (is_term_zero(a)) return t_zero();
  return std::make_shared<TermNode>(TermNode{TermOp::Plus, 0, 0, a});
}

inline bool equal_terms(const Term& s, const Term& t) {
  if (s.get() == t.get()) return true;
  if (s->op != t->op) return false;
  switch (s->op) {
    case TermOp::Zero:
    case TermOp::One:
    case TermOp::InfConst:
      return true;
    case TermOp::NatConst:
      return s->value == t->value;
    case TermOp::Letter:
      return s->letter == t->letter;
    case TermOp::Star:
    case TermOp::Plus:
      return equal_terms(s->a, t->a);
    case TermOp::Sum:
    case TermOp::Prod:
      return equal_terms(s->a, t->a) && equal_terms(s->b, t->b);
  }
  return false;
}

namespace detail {

// precedence levels: sum 0 < prod 1 < star 2
inline int term_prec(TermOp op) {
  switch (op) {
    case TermOp::Sum:
      return 0;
    case TermOp::Prod:
    case TermOp::Plus:
      return 1;
    case TermOp::Star:
      return 2;
    default:
      return 3;
  }
}

inline void print_term(const Term& t, int min_prec, std::string& out) {
  int p = term_prec(t->op);
  bool paren = p < min_prec;
  if (paren) out += '(';
  switch (t->op) {
    case TermOp::Zero:
      out += '0';
      break;
    case TermOp::One:
      out += '1';
      break;
    case TermOp::NatConst:
      out += nat_str(t->value);
      break;
    case TermOp::InfConst:
      out += "inf";
      break;
    case TermOp::Letter:
      out += t->letter;
      break;
    case TermOp::Sum:
      print_term(t->a, 0, out);
      out += " + ";
      print_term(t->b, 0, out);
      break;
    case TermOp::Prod:
      print_term(t->a, 1, out);
      out += '.';
      print_term(t->b, 1, out);
      break;
    case TermOp::Plus:
      print_term(t->a, 1, out);
      out += '.';
      print_term(t->a, 3, out);
      out += '*';
      break;
    case TermOp::Star:
      print_term(t->a, 3, out);
      out += '*';
      break;
  }
  if (paren) out += ')';
}

}  // namespace detail

inline std::string term_str(const Term& t) {
  std::string out;
  detail::print_term(t, 0, out);
  return out;
}

// Recursive-descent parser for
//   expr := sum ; sum := prod ('+' prod)* ; prod := star ('.'? star)* ;
//   star := atom '*'* ; atom := '0'|'1'|nat|'inf'|letter|'(' expr ')'
// Letters are single lowercase symbols drawn from the declared alphabet.
class TermParser {
 public:
  TermParser(std::string text, std::string alphabet)
      : text_(std::move(text)), alphabet_(std::move(alphabet)) {}

  Term parse() {
    Term t = parse_sum();
    skip_ws();
    if (pos_ != text_.size())
      throw ParseError("unexpected character '" +
                           std::string(1, text_[pos_]) + "'",
                       pos_);
    return t;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(
        static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool starts_atom() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) ||
           std::islower(static_cast<unsigned char>(c)) || c == '(';
  }

  Term parse_sum() {
    Term t = parse_prod();
    while (true) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '+') {
        ++pos_;
        t = t_sum(t, parse_prod());
      } else {
        return t;
      }
    }
  }

  Term parse_prod() {
    Term t = parse_star();
    while (true) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '.') {
        ++pos_;
        t = t_prod(t, parse_star());
      } else if (starts_atom()) {
        t = t_prod(t, parse_star());
      } else {
        return t;
      }
    }
  }

  Term parse_star() {
    Term t = parse_atom();
    while (true) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '*') {
        ++pos_;
        t = t_star(t);
      } else {
        return t;
      }
    }
  }

  Term parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Term t = parse_sum();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')')
        throw ParseError("expected ')'", pos_);
      ++pos_;
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      return t_nat(Nat(text_.substr(start, pos_ - start)));
    }
    if (text_.compare(pos_, 3, "inf") == 0) {
      pos_ += 3;
      return t_inf();
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      if (alphabet_.find(c) == std::string::npos)
        throw ParseError("unknown letter '" + std::string(1, c) + "'", pos_);
      ++pos_;
      return t_letter(c);
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'",
                     pos_);
  }

  std::string text_;
  std::string alphabet_;
  std::size_t pos_ = 0;
};

inline Term parse_term(const std::string& text, const std::string& alphabet) {
  return TermParser(text, alphabet).parse();
}

// The least class I: contains 0 and letters; closed under +, under
// products where one factor is in I and the other is in I or an
// N-constant, and under plus s+ = s.s* (including the written-out
// s.s* and s*.s shapes).
inline bool is_ideal(const Term& t) {
  switch (t->op) {
    case TermOp::Zero:
    case TermOp::Letter:
      return true;
    case TermOp::One:
    case TermOp::NatConst:
    case TermOp::InfConst:
    case TermOp::Star:
      return false;
    case TermOp::Sum:
      return is_ideal(t->a) && is_ideal(t->b);
    case TermOp::Plus:
      return is_ideal(t->a);
    case TermOp::Prod: {
      if (t->b->op == TermOp::Star && equal_terms(t->a, t->b->a))
        return is_ideal(t->a);
      if (t->a->op == TermOp::Star && equal_terms(t->a->a, t->b))
        return is_ideal(t->b);
      auto factor_ok = [](const Term& f) {
        return is_ideal(f) || f->op == TermOp::One ||
               f->op == TermOp::NatConst;
      };
      return factor_ok(t->a) && factor_ok(t->b) &&
             (is_ideal(t->a) || is_ideal(t->b));
    }
  }
  return false;
}

namespace detail {

inline TruncatedSeries eval_term_memo(
    const Term& t, const Semiring& S, const std::string& alphabet, int bound,
    std::map<const TermNode*, TruncatedSeries>& memo) {
  auto it = memo.find(t.get());
  if (it != memo.end()) return it->second;
  TruncatedSeries r = [&]() -> TruncatedSeries {
    switch (t->op) {
      case TermOp::Zero:
        return series_zero(S, alphabet, bound);
      case TermOp::One:
        return series_const(S, alphabet, bound, S.one());
      case TermOp::NatConst:
        return series_const(S, alphabet, bound, S.from_nat(t->value));
      case TermOp::InfConst:
        return series_const(S, alphabet, bound, S.star(S.one()));
      case TermOp::Letter:
        return series_char(S, alphabet, bound, t->letter);
      case TermOp::Sum:
        return series_add(eval_term_memo(t->a, S, alphabet, bound, memo),
                          eval_term_memo(t->b, S, alphabet, bound, memo));
      case TermOp::Prod:
        return series_mul(eval_term_memo(t->a, S, alphabet, bound, memo),
                          eval_term_memo(t->b, S, alphabet, bound, memo));
      case TermOp::Star:
        return series_star(eval_term_memo(t->a, S, alphabet, bound, memo));
      case TermOp::Plus: {
        TruncatedSeries s = eval_term_memo(t->a, S, alphabet, bound, memo);
        return series_mul(s, series_star(s));
      }
    }
    throw Error("unreachable");
  }();
  memo.emplace(t.get(), r);
  return r;
}

}  // namespace detail

inline TruncatedSeries eval_term(const Term& t, const Semiring& S,
                                 const std::string& alphabet, int bound) {
  std::map<const TermNode*, TruncatedSeries> memo;
  return detail::eval_term_memo(t, S, alphabet, bound, memo);
}

}  // namespace ratseries
