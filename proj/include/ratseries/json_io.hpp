#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "automaton.hpp"
#include "harness.hpp"
#include "semiring.hpp"

namespace ratseries {

using nlohmann::json;

inline json value_to_json(const Semiring& s, const Value& v) {
  return s.str(v);
}

inline Value value_from_json(const Semiring& s, const json& j) {
  if (j.is_number_unsigned())
    return s.from_nat(Nat(j.get<std::uint64_t>()));
  if (j.is_string()) return s.parse(j.get<std::string>());
  throw Error("weight must be a decimal string or \"inf\"");
}

inline json automaton_to_json(const WeightedAutomaton& m) {
  json j;
  j["dim"] = m.dim;
  j["semiring"] = m.S.name();
  j["alphabet"] = json::array();
  for (char a : m.alphabet) j["alphabet"].push_back(std::string(1, a));
  j["alpha"] = json::array();
  for (std::size_t i = 0; i < m.dim; ++i)
    j["alpha"].push_back(value_to_json(m.S, m.alpha.at(0, i)));
  j["beta"] = json::array();
  for (std::size_t i = 0; i < m.dim; ++i)
    j["beta"].push_back(value_to_json(m.S, m.beta.at(i, 0)));
  j["trans"] = json::object();
  for (char a : m.alphabet) {
    json rows = json::array();
    const auto& t = m.trans.at(a);
    for (std::size_t i = 0; i < m.dim; ++i) {
      json row = json::array();
      for (std::size_t k = 0; k < m.dim; ++k)
        row.push_back(value_to_json(m.S, t.at(i, k)));
      rows.push_back(row);
    }
    j["trans"][std::string(1, a)] = rows;
  }
  return j;
}

inline WeightedAutomaton automaton_from_json(const json& j,
                                             const Semiring& fallback) {
  Semiring s = fallback;
  if (j.contains("semiring")) {
    std::string name = j.at("semiring").get<std::string>();
    if (name == "n")
      s = Semiring::nat();
    else if (name == "ninf")
      s = Semiring::nat_inf();
    else if (name == "bool")
      s = Semiring::boolean();
    else if (name.rfind("k:", 0) == 0)
      s = Semiring::quotient(static_cast<unsigned>(std::stoul(name.substr(2))));
    else
      throw Error("unknown semiring name: " + name);
  }
  std::string alphabet;
  for (const auto& a : j.at("alphabet")) {
    std::string l = a.get<std::string>();
    if (l.size() != 1) throw Error("alphabet letters must be single symbols");
    alphabet += l[0];
  }
  std::size_t dim = j.at("dim").get<std::size_t>();
  WeightedAutomaton m(s, alphabet, dim);
  const json& alpha = j.at("alpha");
  const json& beta = j.at("beta");
  if (alpha.size() != dim || beta.size() != dim)
    throw DimensionMismatch("automaton json: alpha/beta length");
  for (std::size_t i = 0; i < dim; ++i) {
    m.alpha.at(0, i) = value_from_json(s, alpha[i]);
    m.beta.at(i, 0) = value_from_json(s, beta[i]);
  }
  for (char a : alphabet) {
    const json& rows = j.at("trans").at(std::string(1, a));
    if (rows.size() != dim) throw DimensionMismatch("automaton json: trans");
    for (std::size_t i = 0; i < dim; ++i) {
      if (rows[i].size() != dim)
        throw DimensionMismatch("automaton json: trans row");
      for (std::size_t k = 0; k < dim; ++k)
        m.trans.at(a).at(i, k) = value_from_json(s, rows[i][k]);
    }
  }
  return m;
}

inline json series_to_json(const TruncatedSeries& s) {
  json j = json::object();
  for (const auto& [w, v] : s.coeffs())
    j[w.empty() ? "\xce\xb5" : w] = value_to_json(s.semiring(), v);
  return j;
}

inline json report_to_json(const CheckReport& r) {
  return json{{"identity", r.identity},
              {"instance", r.instance},
              {"verdict", verdict_str(r.verdict)},
              {"detail", r.detail}};
}

inline CayleyTable cayley_from_json(const json& j) {
  std::string name = j.value("name", "custom");
  std::vector<std::vector<std::size_t>> table;
  for (const auto& row : j.at("table"))
    table.push_back(row.get<std::vector<std::size_t>>());
  return CayleyTable(name, std::move(table));
}

}  // namespace ratseries
