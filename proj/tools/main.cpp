#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ratseries/equivalence.hpp"
#include "ratseries/harness.hpp"
#include "ratseries/json_io.hpp"

using namespace ratseries;

namespace {

struct CliConfig {
  std::string semiring = "ninf";
  std::string alphabet = "ab";
  int maxlen = 8;
  std::uint64_t seed = 0;
  std::string output = "text";
};

Semiring parse_semiring(const std::string& name) {
  if (name == "n") return Semiring::nat();
  if (name == "ninf") return Semiring::nat_inf();
  if (name == "bool") return Semiring::boolean();
  if (name.rfind("k:", 0) == 0)
    return Semiring::quotient(static_cast<unsigned>(std::stoul(name.substr(2))));
  throw Error("unknown semiring: " + name + " (expected n, ninf, bool, k:<int>)");
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

int cmd_eval(const CliConfig& cfg, const std::string& expr) {
  Semiring s = parse_semiring(cfg.semiring);
  TruncatedSeries out =
      eval_term(parse_term(expr, cfg.alphabet), s, cfg.alphabet, cfg.maxlen);
  if (cfg.output == "json")
    std::cout << series_to_json(out).dump() << "\n";
  else
    std::cout << out.str() << "\n";
  return 0;
}

int cmd_normalize(const CliConfig& cfg, const std::string& expr,
                  bool disjoint) {
  Term t = parse_term(expr, cfg.alphabet);
  NormalForm nf =
      disjoint ? normalize_disjoint(t, cfg.alphabet) : normalize(t);
  if (cfg.output == "json") {
    json j{{"tc", nat_str(nf.tc)},
           {"t0", term_str(nf.t0)},
           {"tinf", term_str(nf.tinf)}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << normal_form_str(nf) << "\n";
  }
  return 0;
}

int cmd_compile(const CliConfig& cfg, const std::string& expr,
                const std::string& out_path) {
  Semiring s = parse_semiring(cfg.semiring);
  WeightedAutomaton m =
      compile_term(parse_term(expr, cfg.alphabet), s, cfg.alphabet);
  json j = automaton_to_json(m);
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw Error("cannot write " + out_path);
    out << j.dump(2) << "\n";
  }
  return 0;
}

int cmd_totterm(const CliConfig& cfg, const std::string& path) {
  WeightedAutomaton m =
      automaton_from_json(load_json(path), parse_semiring(cfg.semiring));
  std::cout << term_str(automaton_to_term(m)) << "\n";
  return 0;
}

int report_inequivalent(const CliConfig& cfg, const Word& witness) {
  if (cfg.output == "json")
    std::cout << json{{"equivalent", false}, {"witness", witness}}.dump()
              << "\n";
  else
    std::cout << "inequivalent, witness: "
              << (witness.empty() ? "\xce\xb5" : witness) << "\n";
  return 1;
}

int report_equivalent(const CliConfig& cfg) {
  if (cfg.output == "json")
    std::cout << json{{"equivalent", true}}.dump() << "\n";
  else
    std::cout << "equivalent\n";
  return 0;
}

int cmd_equiv(const CliConfig& cfg, const std::string& e1,
              const std::string& e2) {
  Semiring s = parse_semiring(cfg.semiring);
  EquivResult r = equivalent(parse_term(e1, cfg.alphabet),
                             parse_term(e2, cfg.alphabet), s, cfg.alphabet);
  return r.equivalent ? report_equivalent(cfg)
                      : report_inequivalent(cfg, r.witness);
}

int cmd_equiv_file(const CliConfig& cfg, const std::string& p1,
                   const std::string& p2) {
  Semiring fallback = parse_semiring(cfg.semiring);
  WeightedAutomaton a = automaton_from_json(load_json(p1), fallback);
  WeightedAutomaton b = automaton_from_json(load_json(p2), fallback);
  if (a.S.kind() == SemiringKind::N) {
    auto w = nat_automata_difference(a, b);
    return w ? report_inequivalent(cfg, *w) : report_equivalent(cfg);
  }
  EquivResult r = equivalent(automaton_to_term(a), automaton_to_term(b), a.S,
                             a.alphabet);
  return r.equivalent ? report_equivalent(cfg)
                      : report_inequivalent(cfg, r.witness);
}

int cmd_simulate(const CliConfig& cfg, const std::string& p1,
                 const std::string& p2) {
  Semiring fallback = parse_semiring(cfg.semiring);
  WeightedAutomaton a = automaton_from_json(load_json(p1), fallback);
  WeightedAutomaton b = automaton_from_json(load_json(p2), fallback);
  auto w = search_simulation(a, b);
  if (!w) {
    if (cfg.output == "json")
      std::cout << json{{"found", false}}.dump() << "\n";
    else
      std::cout << "no simulation found\n";
    return 1;
  }
  json j{{"found", true},
         {"direction",
          w->direction == SimDirection::Forward ? "forward" : "dual"},
         {"rho", w->rho.map()}};
  if (cfg.output == "json")
    std::cout << j.dump() << "\n";
  else {
    std::cout << (w->direction == SimDirection::Forward ? "forward" : "dual")
              << " simulation, rho = [";
    for (std::size_t i = 0; i < w->rho.domain(); ++i)
      std::cout << (i ? " " : "") << w->rho(i);
    std::cout << "]\n";
  }
  return 0;
}

CayleyTable group_by_name(const std::string& name) {
  if (name == "z1") return CayleyTable::cyclic(1);
  if (name == "z2") return CayleyTable::cyclic(2);
  if (name == "z3") return CayleyTable::cyclic(3);
  if (name == "z4") return CayleyTable::cyclic(4);
  if (name == "s3") return CayleyTable::s3();
  // otherwise treat as a path to a JSON table
  return cayley_from_json(load_json(name));
}

bool emit(const CliConfig& cfg, const CheckReport& r) {
  if (cfg.output == "json")
    std::cout << report_to_json(r).dump() << "\n";
  else
    std::cout << r.identity << " | " << r.instance << " | "
              << verdict_str(r.verdict)
              << (r.detail.empty() ? "" : " | " + r.detail) << "\n";
  return r.verdict != Verdict::Fail;
}

int cmd_check(const CliConfig& cfg, const std::string& suite,
              const std::string& group, unsigned trials) {
  Semiring s = parse_semiring(cfg.semiring);
  ScalarCtx sc{s};
  int bound = std::min(cfg.maxlen, 6);
  SeriesCtx ser{s, cfg.alphabet, bound};
  Rng rng(cfg.seed);
  bool ok = true;
  std::vector<Value> scalars{Value::fin(0), Value::fin(1), Value::fin(2)};
  if (s.total_star() && s.kind() == SemiringKind::Ninf)
    scalars.push_back(Value::inf());

  if (suite == "conway") {
    for (const Value& a : scalars)
      for (const Value& b : scalars)
        for (const auto& r :
             check_conway(sc, a, b, s.str(a) + "," + s.str(b)))
          ok = emit(cfg, r) && ok;
    for (unsigned i = 0; i < trials; ++i) {
      TruncatedSeries a = random_series(rng, s, cfg.alphabet, bound,
                                        !s.total_star());
      TruncatedSeries b = random_series(rng, s, cfg.alphabet, bound,
                                        !s.total_star());
      for (const auto& r :
           check_conway(ser, a, b, "series #" + std::to_string(i)))
        ok = emit(cfg, r) && ok;
    }
  } else if (suite == "group") {
    CayleyTable g = group_by_name(group);
    std::vector<Value> vals{Value::fin(0), Value::fin(1)};
    if (s.kind() == SemiringKind::Ninf) vals.push_back(Value::inf());
    std::vector<std::size_t> idx(g.order(), 0);
    while (true) {
      std::vector<Value> as;
      std::string desc;
      for (std::size_t i : idx) {
        as.push_back(vals[i]);
        desc += (desc.empty() ? "" : ",") + s.str(vals[i]);
      }
      ok = emit(cfg, check_group_identity(sc, g, as, desc)) && ok;
      std::size_t p = idx.size();
      while (p > 0 && idx[p - 1] == vals.size() - 1) idx[--p] = 0;
      if (p == 0) break;
      ++idx[p - 1];
    }
    for (unsigned i = 0; i < trials; ++i) {
      std::vector<TruncatedSeries> as;
      for (std::size_t j = 0; j < g.order(); ++j)
        as.push_back(random_series(rng, s, cfg.alphabet, bound,
                                   !s.total_star()));
      ok = emit(cfg, check_group_identity(ser, g, as,
                                          "series #" + std::to_string(i))) &&
           ok;
    }
  } else if (suite == "commutative") {
    for (unsigned i = 0; i < trials; ++i) {
      std::size_t n = 1 + rng.below(2);
      std::size_t m = n + rng.below(2);
      std::size_t k = 1 + rng.below(2);
      auto inst = generate_commutative_instance(rng, m, n, k, cfg.alphabet);
      std::map<char, Value> lv;
      for (char a : cfg.alphabet)
        lv[a] = rng.coin() && s.kind() == SemiringKind::Ninf ? Value::inf()
                                                             : Value::fin(1);
      std::map<char, TruncatedSeries> ls;
      for (char a : cfg.alphabet)
        ls.emplace(a, series_char(s, cfg.alphabet, bound, a));
      std::string desc = "instance #" + std::to_string(i);
      for (auto dir : {CommDirection::Primal, CommDirection::Dual}) {
        ok = emit(cfg, check_commutative(sc, inst, lv, dir, desc)) && ok;
        ok = emit(cfg, check_commutative(ser, inst, ls, dir, desc)) && ok;
      }
    }
  } else if (suite == "inductive") {
    auto leq_scalar = std::function<bool(const Value&, const Value&)>(
        [&](const Value& x, const Value& y) { return s.leq(x, y); });
    for (const Value& a : scalars)
      for (const Value& b : scalars)
        for (const Value& x : scalars)
          for (const auto& r : check_inductive_laws(
                   sc, a, b, x, leq_scalar,
                   s.str(a) + "," + s.str(b) + "," + s.str(x)))
            ok = emit(cfg, r) && ok;
    auto leq_series = std::function<bool(const TruncatedSeries&,
                                         const TruncatedSeries&)>(
        series_leq);
    for (unsigned i = 0; i < trials; ++i) {
      TruncatedSeries a = random_series(rng, s, cfg.alphabet, bound,
                                        !s.total_star());
      TruncatedSeries b = random_series(rng, s, cfg.alphabet, bound,
                                        !s.total_star());
      TruncatedSeries x = random_series(rng, s, cfg.alphabet, bound,
                                        !s.total_star());
      for (const auto& r : check_inductive_laws(
               ser, a, b, x, leq_series, "series #" + std::to_string(i)))
        ok = emit(cfg, r) && ok;
    }
  } else {
    throw Error("unknown suite: " + suite +
                " (expected conway, group, commutative, inductive)");
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rational power series and weighted automata toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  CliConfig cfg;
  app.add_option("--semiring", cfg.semiring, "n, ninf, bool, or k:<int>");
  app.add_option("--alphabet", cfg.alphabet, "letters, e.g. ab");
  app.add_option("--maxlen", cfg.maxlen, "truncation bound")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", cfg.seed, "RNG seed");
  app.add_option("--output", cfg.output, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  std::string expr, expr2, path, path2, out_path, group = "z2";
  std::string suite;
  bool disjoint = false;
  unsigned trials = 20;

  auto* c_eval = app.add_subcommand("eval", "evaluate an expression");
  c_eval->add_option("expr", expr)->required();

  auto* c_norm = app.add_subcommand("normalize", "normal form of a term");
  c_norm->add_option("expr", expr)->required();
  c_norm->add_flag("--disjoint", disjoint, "prune t0 against supp(tinf)");

  auto* c_comp = app.add_subcommand("compile", "term to automaton JSON");
  c_comp->add_option("expr", expr)->required();
  c_comp->add_option("--out", out_path, "output file (default stdout)");

  auto* c_tot = app.add_subcommand("totterm", "automaton JSON to a term");
  c_tot->add_option("file", path)->required();

  auto* c_eq = app.add_subcommand("equiv", "decide term equivalence");
  c_eq->add_option("expr1", expr)->required();
  c_eq->add_option("expr2", expr2)->required();

  auto* c_eqf = app.add_subcommand("equiv-file", "decide automata equivalence");
  c_eqf->add_option("file1", path)->required();
  c_eqf->add_option("file2", path2)->required();

  auto* c_sim = app.add_subcommand("simulate", "search for a simulation");
  c_sim->add_option("file1", path)->required();
  c_sim->add_option("file2", path2)->required();

  auto* c_chk = app.add_subcommand("check", "run an identity suite");
  c_chk->add_option("suite", suite, "conway, group, commutative, inductive")
      ->required();
  c_chk->add_option("--group", group, "z1..z4, s3, or a JSON table file");
  c_chk->add_option("--trials", trials, "number of random instances");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cfg.alphabet.empty()) throw Error("alphabet must not be empty");
    if (*c_eval) return cmd_eval(cfg, expr);
    if (*c_norm) return cmd_normalize(cfg, expr, disjoint);
    if (*c_comp) return cmd_compile(cfg, expr, out_path);
    if (*c_tot) return cmd_totterm(cfg, path);
    if (*c_eq) return cmd_equiv(cfg, expr, expr2);
    if (*c_eqf) return cmd_equiv_file(cfg, path, path2);
    if (*c_sim) return cmd_simulate(cfg, path, path2);
    if (*c_chk) return cmd_check(cfg, suite, group, trials);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
