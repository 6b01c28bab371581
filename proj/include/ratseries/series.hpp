#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "errors.hpp"
#include "semiring.hpp"

namespace ratseries {

// Words are stored as strings of alphabet letters; the canonical
// enumeration order is by length, then lexicographic.
using Word = std::string;

struct LengthLexLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

inline std::vector<Word> words_up_to(const std::string& alphabet, int maxlen) {
  std::vector<Word> out{""};
  std::size_t begin = 0;
  for (int len = 1; len <= maxlen; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (char a : alphabet) out.push_back(out[i] + a);
    begin = end;
  }
  return out;
}

// Formal power series truncated at a word-length bound L. Absent words have
// coefficient zero; zero coefficients are never stored.
class TruncatedSeries {
 public:
  TruncatedSeries(Semiring s, std::string alphabet, int bound)
      : S_(std::move(s)), alphabet_(std::move(alphabet)), bound_(bound) {
    if (bound_ < 0) throw Error("series bound must be >= 0");
  }

  const Semiring& semiring() const { return S_; }
  const std::string& alphabet() const { return alphabet_; }
  int bound() const { return bound_; }
  const std::map<Word, Value, LengthLexLess>& coeffs() const {
    return coeffs_;
  }

  void set(const Word& w, const Value& v) {
    if (static_cast<int>(w.size()) > bound_)
      throw OutOfWindow("set: word longer than truncation bound");
    check_word(w);
    if (S_.eq(v, S_.zero()))
      coeffs_.erase(w);
    else
      coeffs_[w] = v;
  }

  void add_at(const Word& w, const Value& v) {
    auto it = coeffs_.find(w);
    if (it == coeffs_.end())
      set(w, v);
    else
      set(w, S_.add(it->second, v));
  }

  Value coefficient(const Word& w) const {
    if (static_cast<int>(w.size()) > bound_)
      throw OutOfWindow("coefficient: word beyond truncation bound");
    check_word(w);
    auto it = coeffs_.find(w);
    return it == coeffs_.end() ? S_.zero() : it->second;
  }

  bool proper() const { return coeffs_.find("") == coeffs_.end(); }
  bool is_zero() const { return coeffs_.empty(); }

  TruncatedSeries truncated(int new_bound) const {
    TruncatedSeries r(S_, alphabet_, new_bound);
    for (const auto& [w, v] : coeffs_)
      if (static_cast<int>(w.size()) <= new_bound) r.coeffs_[w] = v;
    return r;
  }

  std::string str() const {
    std::string out = "{";
    bool first = true;
    for (const auto& [w, v] : coeffs_) {
      if (!first) out += ", ";
      first = false;
      out += (w.empty() ? std::string("\xce\xb5") : w) + ": " + S_.str(v);
    }
    return out + "}";
  }

 private:
  void check_word(const Word& w) const {
    for (char c : w)
      if (alphabet_.find(c) == std::string::npos)
        throw AlphabetMismatch(std::string("letter '") + c +
                               "' not in alphabet");
  }

  Semiring S_;
  std::string alphabet_;
  int bound_;
  std::map<Word, Value, LengthLexLess> coeffs_;
};

namespace detail {

inline void require_compatible(const TruncatedSeries& a,
                               const TruncatedSeries& b) {
  if (a.alphabet() != b.alphabet())
    throw AlphabetMismatch("series over different alphabets");
  if (!a.semiring().same(b.semiring()))
    throw SemiringMismatch("series over different semirings");
}

}  // namespace detail

inline TruncatedSeries series_zero(const Semiring& s,
                                   const std::string& alphabet, int bound) {
  return TruncatedSeries(s, alphabet, bound);
}

inline TruncatedSeries series_const(const Semiring& s,
                                    const std::string& alphabet, int bound,
                                    const Value& v) {
  TruncatedSeries r(s, alphabet, bound);
  r.set("", v);
  return r;
}

inline TruncatedSeries series_char(const Semiring& s,
                                   const std::string& alphabet, int bound,
                                   char letter) {
  TruncatedSeries r(s, alphabet, bound);
  if (bound >= 1) r.set(Word(1, letter), s.one());
  return r;
}

inline TruncatedSeries series_add(const TruncatedSeries& a,
                                  const TruncatedSeries& b) {
  detail::require_compatible(a, b);
  int bound = std::min(a.bound(), b.bound());
  TruncatedSeries r = a.truncated(bound);
  for (const auto& [w, v] : b.coeffs())
    if (static_cast<int>(w.size()) <= bound) r.add_at(w, v);
  return r;
}

// Cauchy product restricted to words within the result bound.
inline TruncatedSeries series_mul(const TruncatedSeries& a,
                                  const TruncatedSeries& b) {
  detail::require_compatible(a, b);
  int bound = std::min(a.bound(), b.bound());
  TruncatedSeries r(a.semiring(), a.alphabet(), bound);
  for (const auto& [u, cu] : a.coeffs()) {
    if (static_cast<int>(u.size()) > bound) continue;
    for (const auto& [v, cv] : b.coeffs()) {
      if (static_cast<int>(u.size() + v.size()) > bound) continue;
      r.add_at(u + v, a.semiring().mul(cu, cv));
    }
  }
  return r;
}

// Star of a series. Proper case: the unique fixed point of y = sy + 1 up
// to the bound, computed by iterating the defining equation. Non-proper
// case: split s = s0 + r and use s* = (s0* r)* s0*, which needs a total
// scalar star.
inline TruncatedSeries series_star(const TruncatedSeries& s) {
  const Semiring& S = s.semiring();
  int bound = s.bound();
  if (s.proper()) {
    TruncatedSeries acc =
        series_const(S, s.alphabet(), bound, S.one());
    // s^n contributes no word shorter than n, so bound+1 rounds converge.
    for (int i = 0; i <= bound; ++i)
      acc = series_add(series_mul(s, acc),
                       series_const(S, s.alphabet(), bound, S.one()));
    return acc;
  }
  Value s0 = s.coefficient("");
  if (!S.in_star_domain(s0))
    throw NotInStarDomain("series star: constant term " + S.str(s0) +
                          " outside star domain");
  Value s0star = S.star(s0);
  TruncatedSeries r = s;
  r.set("", S.zero());
  TruncatedSeries scaled(S, s.alphabet(), bound);
  for (const auto& [w, v] : r.coeffs()) scaled.add_at(w, S.mul(s0star, v));
  return series_mul(series_star(scaled),
                    series_const(S, s.alphabet(), bound, s0star));
}

enum class SeriesOp { Add, Mul };

inline TruncatedSeries series_combine(SeriesOp op, const TruncatedSeries& a,
                                      const TruncatedSeries& b) {
  return op == SeriesOp::Add ? series_add(a, b) : series_mul(a, b);
}

inline TruncatedSeries map_coefficients(const TruncatedSeries& s,
                                        const Morphism& h) {
  if (!s.semiring().same(h.from()))
    throw SemiringMismatch("map_coefficients: morphism domain mismatch");
  TruncatedSeries r(h.to(), s.alphabet(), s.bound());
  for (const auto& [w, v] : s.coeffs()) r.set(w, h(v));
  return r;
}

// s = s0 + sInf with disjoint supports: s0 keeps the finite coefficients
// (as an N-series), sInf the infinite ones.
inline std::pair<TruncatedSeries, TruncatedSeries> split_finite_infinite(
    const TruncatedSeries& s) {
  if (s.semiring().kind() != SemiringKind::Ninf)
    throw SemiringMismatch("split_finite_infinite: expects an Ninf series");
  TruncatedSeries fin(Semiring::nat(), s.alphabet(), s.bound());
  TruncatedSeries inf(s.semiring(), s.alphabet(), s.bound());
  for (const auto& [w, v] : s.coeffs()) {
    if (v.tag == ValueTag::Inf)
      inf.set(w, v);
    else
      fin.set(w, v);
  }
  return {fin, inf};
}

// Buckets an N-series by coefficient value: parts s_0..s_k where each
// coefficient of s_i (i < k) is 0 or i, and s_k keeps everything >= k.
inline std::vector<TruncatedSeries> decompose_by_value(
    const TruncatedSeries& s, unsigned k) {
  if (s.semiring().kind() != SemiringKind::N)
    throw SemiringMismatch("decompose_by_value: expects an N series");
  if (k < 1) throw Error("decompose_by_value: k must be >= 1");
  std::vector<TruncatedSeries> parts(
      k + 1, TruncatedSeries(s.semiring(), s.alphabet(), s.bound()));
  for (const auto& [w, v] : s.coeffs()) {
    std::size_t bucket = v.n >= k ? k : static_cast<std::size_t>(v.n);
    parts[bucket].set(w, v);
  }
  return parts;
}

// Polynomial: finite support, no truncation bound.
class Polynomial {
 public:
  Polynomial(Semiring s, std::string alphabet)
      : S_(std::move(s)), alphabet_(std::move(alphabet)) {}

  const Semiring& semiring() const { return S_; }
  const std::string& alphabet() const { return alphabet_; }
  const std::map<Word, Value, LengthLexLess>& coeffs() const {
    return coeffs_;
  }

  void set(const Word& w, const Value& v) {
    if (S_.eq(v, S_.zero()))
      coeffs_.erase(w);
    else
      coeffs_[w] = v;
  }

  bool linear() const {
    for (const auto& [w, v] : coeffs_)
      if (w.size() != 1) return false;
    return true;
  }

  TruncatedSeries to_series(int bound) const {
    TruncatedSeries r(S_, alphabet_, bound);
    for (const auto& [w, v] : coeffs_)
      if (static_cast<int>(w.size()) <= bound) r.set(w, v);
    return r;
  }

 private:
  Semiring S_;
  std::string alphabet_;
  std::map<Word, Value, LengthLexLess> coeffs_;
};

// Evaluates a polynomial under a coefficient morphism and a letter
// assignment, the unique morphism extension when the commuting condition
// (s h)(a h) = (a h)(s h) holds.
template <class Ctx>
typename Ctx::value_type polynomial_eval(
    const Ctx& ctx, const Polynomial& p,
    const std::function<typename Ctx::value_type(const Value&)>& coeff_image,
    const std::map<char, typename Ctx::value_type>& letter_image) {
  using V = typename Ctx::value_type;
  for (const auto& [w, c] : p.coeffs()) {
    V ci = coeff_image(c);
    for (const auto& [a, av] : letter_image)
      if (!ctx.eq(ctx.mul(ci, av), ctx.mul(av, ci)))
        throw NotAMorphismExtension(
            "coefficient image does not commute with letter image");
  }
  V acc = ctx.zero();
  for (const auto& [w, c] : p.coeffs()) {
    V term = coeff_image(c);
    for (char a : w) {
      auto it = letter_image.find(a);
      if (it == letter_image.end())
        throw AlphabetMismatch("polynomial_eval: unassigned letter");
      term = ctx.mul(term, it->second);
    }
    acc = ctx.add(acc, term);
  }
  return acc;
}

// Pointwise coefficient order at truncation (coincides coefficient-wise
// with the sum order for Ninf coefficients).
inline bool series_leq(const TruncatedSeries& a, const TruncatedSeries& b) {
  detail::require_compatible(a, b);
  int bound = std::min(a.bound(), b.bound());
  for (const Word& w : words_up_to(a.alphabet(), bound))
    if (!a.semiring().leq(a.coefficient(w), b.coefficient(w))) return false;
  return true;
}

inline bool series_eq(const TruncatedSeries& a, const TruncatedSeries& b) {
  detail::require_compatible(a, b);
  int bound = std::min(a.bound(), b.bound());
  for (const auto& [w, v] : a.coeffs())
    if (static_cast<int>(w.size()) <= bound &&
        !a.semiring().eq(v, b.coefficient(w)))
      return false;
  for (const auto& [w, v] : b.coeffs())
    if (static_cast<int>(w.size()) <= bound &&
        !a.semiring().eq(v, a.coefficient(w)))
      return false;
  return true;
}

// Series star context for the generic matrix routines.
struct SeriesCtx {
  using value_type = TruncatedSeries;
  Semiring S;
  std::string alphabet;
  int bound;

  TruncatedSeries zero() const { return series_zero(S, alphabet, bound); }
  TruncatedSeries one() const {
    return series_const(S, alphabet, bound, S.one());
  }
  TruncatedSeries add(const TruncatedSeries& a,
                      const TruncatedSeries& b) const {
    return series_add(a, b);
  }
  TruncatedSeries mul(const TruncatedSeries& a,
                      const TruncatedSeries& b) const {
    return series_mul(a, b);
  }
  TruncatedSeries star(const TruncatedSeries& a) const {
    return series_star(a);
  }
  bool eq(const TruncatedSeries& a, const TruncatedSeries& b) const {
    return series_eq(a, b);
  }
};

}  // namespace ratseries
