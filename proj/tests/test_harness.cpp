#include <catch2/catch_amalgamated.hpp>

#include "ratseries/automaton.hpp"
#include "ratseries/harness.hpp"

using namespace ratseries;

namespace {

const Semiring Ninf = Semiring::nat_inf();

std::vector<Value> small_values() {
  return {Value::fin(0), Value::fin(1), Value::fin(2), Value::inf()};
}

}  // namespace

TEST_CASE("group tables are validated") {
  CayleyTable z3 = CayleyTable::cyclic(3);
  CHECK(z3.order() == 3);
  CHECK(z3.mul(1, 2) == 0);
  CHECK(z3.inverse(1) == 2);
  CayleyTable s3 = CayleyTable::s3();
  CHECK(s3.order() == 6);
  for (std::size_t i = 0; i < 6; ++i)
    CHECK(s3.mul(i, s3.inverse(i)) == 0);

  CHECK_THROWS_AS(CayleyTable("bad", {{0, 1}, {1, 1}}), Error);  // no inverse
  CHECK_THROWS_AS(CayleyTable("bad", {{1, 0}, {0, 1}}), Error);  // 0 not unit
  CHECK_THROWS_AS(CayleyTable("bad", {{0, 1}}), Error);          // not square
  CHECK_THROWS_AS(CayleyTable("bad", {}), Error);                // empty
}

TEST_CASE("group matrix layout") {
  ScalarCtx c{Ninf};
  std::vector<Value> as{Value::fin(1), Value::fin(2)};
  Matrix<Value> m = group_matrix(CayleyTable::cyclic(2), as);
  CHECK(m.at(0, 0) == Value::fin(1));
  CHECK(m.at(0, 1) == Value::fin(2));
  CHECK(m.at(1, 0) == Value::fin(2));
  CHECK(m.at(1, 1) == Value::fin(1));

  Matrix<Value> t = group_matrix(CayleyTable::cyclic(1),
                                 std::vector<Value>{Value::fin(5)});
  CHECK(t.at(0, 0) == Value::fin(5));

  // row 0 of M_G lists a_0, a_1, ..., a_{n-1} in order
  std::vector<Value> a3{Value::fin(0), Value::fin(1), Value::fin(2)};
  Matrix<Value> z3 = group_matrix(CayleyTable::cyclic(3), a3);
  for (std::size_t j = 0; j < 3; ++j) CHECK(z3.at(0, j) == a3[j]);
  CHECK_THROWS_AS(group_matrix(CayleyTable::cyclic(3), as), DimensionMismatch);
}

TEST_CASE("conway identities hold for scalars and series") {
  ScalarCtx c{Ninf};
  for (const Value& a : small_values())
    for (const Value& b : small_values())
      for (const CheckReport& r : check_conway(c, a, b, "scalar"))
        CHECK(r.verdict == Verdict::Pass);

  SeriesCtx sc{Ninf, "ab", 4};
  Rng rng(27);
  for (int i = 0; i < 10; ++i) {
    TruncatedSeries a = random_series(rng, Ninf, "ab", 4);
    TruncatedSeries b = random_series(rng, Ninf, "ab", 4);
    for (const CheckReport& r : check_conway(sc, a, b, "series"))
      CHECK(r.verdict == Verdict::Pass);
  }
}

TEST_CASE("conway checks report failures with both sides") {
  // the boolean semiring with a broken star would fail; simulate by
  // comparing a genuinely false identity through the same reporter
  ScalarCtx c{Ninf};
  CheckReport r = detail::equality_check(
      c, "a = a + 1", "scalar",
      std::function<Value()>([] { return Value::fin(1); }),
      std::function<Value()>([] { return Value::fin(2); }));
  CHECK(r.verdict == Verdict::Fail);
  CHECK(r.detail == "left=1 right=2");
}

TEST_CASE("group identity checks") {
  ScalarCtx c{Ninf};
  std::vector<Value> ones(2, Value::fin(1));
  CheckReport z2 = check_group_identity(c, CayleyTable::cyclic(2), ones, "z2");
  CHECK(z2.verdict == Verdict::Pass);

  std::vector<Value> s3_vals(6, Value::fin(1));
  CHECK(check_group_identity(c, CayleyTable::s3(), s3_vals, "s3").verdict ==
        Verdict::Pass);

  SeriesCtx sc{Ninf, "ab", 3};
  Rng rng(33);
  std::vector<TruncatedSeries> as;
  for (int i = 0; i < 3; ++i) as.push_back(random_series(rng, Ninf, "ab", 3));
  CHECK(check_group_identity(sc, CayleyTable::cyclic(3), as, "z3 series")
            .verdict == Verdict::Pass);
}

TEST_CASE("commutative identity instances") {
  Rng rng(45);
  SeriesCtx sc{Ninf, "ab", 4};
  std::map<char, TruncatedSeries> letters{
      {'a', series_char(Ninf, "ab", 4, 'a')},
      {'b', series_char(Ninf, "ab", 4, 'b')}};
  for (int i = 0; i < 5; ++i) {
    CommutativeInstance inst =
        generate_commutative_instance(rng, 3, 2, 3, "ab");
    CHECK(check_commutative(sc, inst, letters, CommDirection::Primal, "gen")
              .verdict == Verdict::Pass);
    CHECK(check_commutative(sc, inst, letters, CommDirection::Dual, "gen")
              .verdict == Verdict::Pass);
  }

  // the identity holds for arbitrary C once the side condition does, so
  // corrupting C alone must not break it
  CommutativeInstance bad = generate_commutative_instance(rng, 3, 2, 3, "ab");
  bad.C.at(0, 0) = t_sum(bad.C.at(0, 0), t_letter('a'));
  CHECK(check_commutative(sc, bad, letters, CommDirection::Primal, "bad")
            .verdict == Verdict::Pass);

  // broken side condition is rejected up front
  CommutativeInstance wrong = generate_commutative_instance(rng, 3, 2, 3, "ab");
  std::vector<std::size_t> twisted(3);
  for (std::size_t p = 0; p < 3; ++p)
    twisted[p] = (wrong.rhos[0](p) + 1) % 3;
  bool differs = false;
  FunctionalMatrix cand(3, twisted);
  if (!(cand.compose(wrong.rho) == wrong.taus[wrong.rho(0)])) differs = true;
  wrong.rhos[0] = cand;
  if (differs)
    CHECK_THROWS_AS(
        check_commutative(sc, wrong, letters, CommDirection::Primal, "wrong"),
        PremiseViolated);
}

TEST_CASE("inductive laws on scalars") {
  ScalarCtx c{Ninf};
  auto leq = std::function<bool(const Value&, const Value&)>(
      [&](const Value& x, const Value& y) { return Ninf.leq(x, y); });
  int skipped = 0, passed = 0;
  for (const Value& a : small_values())
    for (const Value& b : small_values())
      for (const Value& x : small_values())
        for (const CheckReport& r :
             check_inductive_laws(c, a, b, x, leq, "scalar")) {
          CHECK(r.verdict != Verdict::Fail);
          (r.verdict == Verdict::Skip ? skipped : passed)++;
        }
  CHECK(passed > 0);
  CHECK(skipped > 0);  // pre-fixed-point premises fail for some triples
}

TEST_CASE("inductive laws on series") {
  SeriesCtx sc{Ninf, "a", 4};
  auto leq = std::function<bool(const TruncatedSeries&, const TruncatedSeries&)>(
      series_leq);
  Rng rng(51);
  for (int i = 0; i < 10; ++i) {
    TruncatedSeries a = random_series(rng, Ninf, "a", 4);
    TruncatedSeries b = random_series(rng, Ninf, "a", 4);
    // x = a*b satisfies ax + b <= x with equality
    TruncatedSeries x = series_mul(series_star(a), b);
    for (const CheckReport& r :
         check_inductive_laws(sc, a, b, x, leq, "series"))
      CHECK(r.verdict != Verdict::Fail);
  }
}

TEST_CASE("term evaluation agrees across contexts") {
  // evaluating a closed term in the scalar context matches the epsilon
  // coefficient of its series evaluation
  Rng rng(57);
  ScalarCtx c{Ninf};
  std::map<char, Value> no_letters;
  for (int i = 0; i < 20; ++i) {
    Term t = random_term(rng, 3, "a");
    std::map<char, Value> zeroed{{'a', Value::fin(0)}};
    Value scalar = term_eval_in(c, t, zeroed);
    // sending a -> 0 keeps only the epsilon coefficient
    TruncatedSeries s = eval_term(t, Ninf, "a", 3);
    WeightedAutomaton m = compile_term(t, Ninf, "a");
    CHECK(morphic_image(m, Ninf, zeroed) == scalar);
    CHECK(s.coefficient("") == scalar);
  }
}
