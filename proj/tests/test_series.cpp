#include <catch2/catch_amalgamated.hpp>

#include "ratseries/harness.hpp"
#include "ratseries/rng.hpp"
#include "ratseries/series.hpp"

using namespace ratseries;

namespace {

const Semiring N = Semiring::nat();
const Semiring Ninf = Semiring::nat_inf();

}  // namespace

TEST_CASE("word enumeration is length-lex") {
  auto ws = words_up_to("ab", 2);
  REQUIRE(ws.size() == 7);
  CHECK(ws[0] == "");
  CHECK(ws[1] == "a");
  CHECK(ws[2] == "b");
  CHECK(ws[3] == "aa");
  CHECK(ws[6] == "bb");
}

TEST_CASE("coefficients, zero pruning and the truncation window") {
  TruncatedSeries s(N, "ab", 3);
  s.set("ab", Value::fin(2));
  s.set("a", Value::fin(0));
  CHECK(s.coeffs().size() == 1);
  CHECK(s.coefficient("a") == Value::fin(0));
  CHECK(s.coefficient("ab") == Value::fin(2));
  CHECK_THROWS_AS(s.coefficient("aaaa"), OutOfWindow);
  CHECK_THROWS_AS(s.set("abab", Value::fin(1)), OutOfWindow);
  CHECK_THROWS_AS(s.coefficient("c"), AlphabetMismatch);
}

TEST_CASE("sum and Cauchy product") {
  // (1 + a)(1 + a) = 1 + 2a + aa
  TruncatedSeries one_a = series_add(series_const(N, "a", 4, Value::fin(1)),
                                     series_char(N, "a", 4, 'a'));
  TruncatedSeries sq = series_mul(one_a, one_a);
  CHECK(sq.coefficient("") == Value::fin(1));
  CHECK(sq.coefficient("a") == Value::fin(2));
  CHECK(sq.coefficient("aa") == Value::fin(1));
  CHECK(sq.coefficient("aaa") == Value::fin(0));
  // noncommuting letters: ab vs ba
  TruncatedSeries ab = series_mul(series_char(N, "ab", 2, 'a'),
                                  series_char(N, "ab", 2, 'b'));
  CHECK(ab.coefficient("ab") == Value::fin(1));
  CHECK(ab.coefficient("ba") == Value::fin(0));
}

TEST_CASE("star of a proper series") {
  TruncatedSeries a = series_char(N, "a", 5, 'a');
  TruncatedSeries st = series_star(a);
  for (int i = 0; i <= 5; ++i)
    CHECK(st.coefficient(Word(i, 'a')) == Value::fin(1));
  // fixed point: s* = s s* + 1
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    TruncatedSeries s = random_series(rng, Ninf, "ab", 4, true);
    TruncatedSeries lhs = series_star(s);
    TruncatedSeries rhs = series_add(
        series_mul(s, lhs), series_const(Ninf, "ab", 4, Value::fin(1)));
    CHECK(series_eq(lhs, rhs));
  }
}

TEST_CASE("star of a non-proper series") {
  // 1* = inf at epsilon
  TruncatedSeries one = series_const(Ninf, "a", 2, Value::fin(1));
  CHECK(series_star(one).coefficient("") == Value::inf());
  // (1 + a)* = 1* a*: every coefficient infinite
  TruncatedSeries s = series_add(one, series_char(Ninf, "a", 2, 'a'));
  TruncatedSeries st = series_star(s);
  CHECK(st.coefficient("") == Value::inf());
  CHECK(st.coefficient("a") == Value::inf());
  // over N the epsilon coefficient must be 0
  TruncatedSeries bad = series_const(N, "a", 2, Value::fin(1));
  CHECK_THROWS_AS(series_star(bad), NotInStarDomain);
}

TEST_CASE("coefficient morphisms on series") {
  TruncatedSeries s(Ninf, "a", 2);
  s.set("", Value::fin(2));
  s.set("a", Value::inf());
  TruncatedSeries b = map_coefficients(s, Morphism::support_to_bool(Ninf));
  CHECK(b.semiring().kind() == SemiringKind::Bool);
  CHECK(b.coefficient("") == Value::fin(1));
  CHECK(b.coefficient("a") == Value::fin(1));
  TruncatedSeries q = map_coefficients(s, Morphism::quotient_to_k(3));
  CHECK(q.coefficient("") == Value::fin(2));
  CHECK(q.coefficient("a") == Value::fin(3));
}

TEST_CASE("splitting by finiteness and by value") {
  TruncatedSeries s(Ninf, "ab", 2);
  s.set("a", Value::inf());
  s.set("b", Value::fin(2));
  auto [fin, inf] = split_finite_infinite(s);
  CHECK(fin.semiring().kind() == SemiringKind::N);
  CHECK(fin.coefficient("b") == Value::fin(2));
  CHECK(fin.coefficient("a") == Value::fin(0));
  CHECK(inf.coefficient("a") == Value::inf());

  TruncatedSeries t(N, "a", 2);
  t.set("", Value::fin(1));
  t.set("a", Value::fin(5));
  auto parts = decompose_by_value(t, 2);
  REQUIRE(parts.size() == 3);
  CHECK(parts[1].coefficient("") == Value::fin(1));
  CHECK(parts[2].coefficient("a") == Value::fin(5));
  CHECK(parts[0].is_zero());
}

TEST_CASE("polynomial evaluation as a morphism extension") {
  SeriesCtx ctx{N, "ab", 4};
  Polynomial p(N, "ab");
  p.set("ab", Value::fin(2));
  p.set("", Value::fin(1));
  auto coeff = std::function<TruncatedSeries(const Value&)>(
      [&](const Value& v) { return series_const(N, "ab", 4, v); });
  std::map<char, TruncatedSeries> letters{
      {'a', series_char(N, "ab", 4, 'a')},
      {'b', series_char(N, "ab", 4, 'b')}};
  TruncatedSeries out = polynomial_eval(ctx, p, coeff, letters);
  CHECK(out.coefficient("ab") == Value::fin(2));
  CHECK(out.coefficient("") == Value::fin(1));

  // a letter image that fails to commute with a coefficient image
  auto bad_coeff = std::function<TruncatedSeries(const Value&)>(
      [&](const Value&) { return series_char(N, "ab", 4, 'a'); });
  CHECK_THROWS_AS(polynomial_eval(ctx, p, bad_coeff, letters),
                  NotAMorphismExtension);
}

TEST_CASE("series printing uses length-lex order") {
  TruncatedSeries s(Ninf, "ab", 2);
  s.set("ab", Value::fin(3));
  s.set("", Value::fin(2));
  s.set("a", Value::inf());
  CHECK(s.str() == "{\xce\xb5: 2, a: inf, ab: 3}");
}

TEST_CASE("pointwise series order") {
  TruncatedSeries a(Ninf, "a", 2), b(Ninf, "a", 2);
  a.set("a", Value::fin(1));
  b.set("a", Value::inf());
  b.set("", Value::fin(1));
  CHECK(series_leq(a, b));
  CHECK_FALSE(series_leq(b, a));
}
