#ifndef SPRAYLIE_CLI_PROBLEM_HPP
#define SPRAYLIE_CLI_PROBLEM_HPP

// Problem files: a JSON document holding a metric, named base fields, named
// generator sets and optional expected data to check the computation against.

#include "spraylie/geom.hpp"
#include "spraylie/linalg.hpp"
#include "spraylie/parser.hpp"
#include "spraylie/vector_fields.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace spraylie::cli {

using json = nlohmann::ordered_json;

/// Malformed or inconsistent input; maps to exit code 1.
class InputError : public Error {
public:
  using Error::Error;
};

struct NamedSet {
  std::string name;
  std::vector<std::string> members;
  std::vector<BaseField> fields;

  std::size_t index_of(const std::string& member) const
  {
    for (std::size_t i = 0; i < members.size(); ++i)
      if (members[i] == member) return i;
    throw InputError("'" + member + "' is not a member of set '" + name + "'");
  }
};

struct Claim {
  std::string kind;
  std::string set;
  json spec;
};

struct ProblemFile {
  std::string title;
  int dim = 0;
  std::vector<std::string> coordinates;
  MetricSpec metric;
  std::vector<std::pair<std::string, BaseField>> fields;
  std::vector<NamedSet> sets;
  std::map<std::string, std::vector<std::vector<std::string>>> expected_tables;
  std::optional<std::vector<Expr>> expected_spray;
  std::optional<std::map<std::pair<int, int>, Expr>> expected_gamma; ///< (j, i) -> Gamma^j_i, 1-based
  std::optional<std::vector<TMField>> horizontal_frame;
  std::vector<Claim> claims;
  std::map<std::string, std::string> known_discrepancies;

  const NamedSet& set(const std::string& name) const
  {
    for (const auto& s : sets)
      if (s.name == name) return s;
    throw InputError("unknown set '" + name + "'");
  }

  const BaseField& field(const std::string& name) const
  {
    for (const auto& [n, f] : fields)
      if (n == name) return f;
    throw InputError("unknown field '" + name + "'");
  }
};

// ---------------------------------------------------------------------------

/// Parses "e2/2", "-e1/2 + e6/2", "3/2*g1 - g4", "0" over a named basis.
inline RationalVector parse_combination(std::string_view text, const std::vector<std::string>& names)
{
  RationalVector v(names.size());
  std::size_t p = 0;
  auto skip = [&] {
    while (p < text.size() && std::isspace(static_cast<unsigned char>(text[p]))) ++p;
  };
  auto fail = [&](const std::string& msg) -> InputError {
    return InputError("in combination '" + std::string(text) + "' at offset " + std::to_string(p) + ": " + msg);
  };
  auto number = [&]() -> std::optional<Rational> {
    skip();
    const std::size_t start = p;
    while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) ++p;
    if (p == start) return std::nullopt;
    return Rational(Integer(std::string(text.substr(start, p - start))));
  };
  auto identifier = [&]() -> std::optional<std::string> {
    skip();
    const std::size_t start = p;
    if (p < text.size() && (std::isalpha(static_cast<unsigned char>(text[p])) || text[p] == '_'))
      while (p < text.size() && (std::isalnum(static_cast<unsigned char>(text[p])) || text[p] == '_')) ++p;
    if (p == start) return std::nullopt;
    return std::string(text.substr(start, p - start));
  };

  bool first = true;
  for (;;) {
    skip();
    if (p == text.size()) {
      if (first) throw fail("empty combination");
      break;
    }
    Rational sign(1);
    if (text[p] == '+' || text[p] == '-') {
      if (text[p] == '-') sign = -1;
      ++p;
    } else if (!first) {
      throw fail("expected '+' or '-'");
    }
    first = false;
    Rational coef(1);
    if (auto num = number()) {
      coef = *num;
      skip();
      if (p < text.size() && text[p] == '/') {
        ++p;
        auto den = number();
        if (!den || den->is_zero()) throw fail("bad denominator");
        coef /= *den;
      }
      skip();
      if (p < text.size() && text[p] == '*') {
        ++p;
      } else {
        if (!coef.is_zero()) throw fail("a bare constant term must be 0");
        continue;
      }
    }
    auto id = identifier();
    if (!id) throw fail("expected a basis name");
    std::size_t k = names.size();
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == *id) k = i;
    if (k == names.size()) throw fail("unknown basis name '" + *id + "'");
    skip();
    if (p < text.size() && text[p] == '/') {
      ++p;
      auto den = number();
      if (!den || den->is_zero()) throw fail("bad denominator");
      coef /= *den;
    }
    v[k] += sign * coef;
  }
  return v;
}

namespace detail {

inline Expr expr_at(const json& j, int dim, const std::string& where)
{
  if (!j.is_string()) throw InputError(where + ": expected an expression string");
  try {
    return parse_expr(j.get<std::string>(), ParseOptions{dim});
  } catch (const Error& e) {
    throw InputError(where + ": " + e.what());
  }
}

inline std::vector<Expr> expr_list(const json& j, std::size_t len, int dim, const std::string& where)
{
  if (!j.is_array() || j.size() != len) throw InputError(where + ": expected an array of " + std::to_string(len) + " expressions");
  std::vector<Expr> out;
  for (std::size_t i = 0; i < len; ++i) out.push_back(expr_at(j[i], dim, where + "[" + std::to_string(i) + "]"));
  return out;
}

inline ExprMatrix expr_matrix(const json& j, int n, const std::string& where)
{
  if (!j.is_array() || static_cast<int>(j.size()) != n) throw InputError(where + ": expected " + std::to_string(n) + " rows");
  ExprMatrix m(n);
  for (int r = 0; r < n; ++r) {
    const auto row = expr_list(j[r], static_cast<std::size_t>(n), n, where + "[" + std::to_string(r) + "]");
    for (int c = 0; c < n; ++c) m(r, c) = row[c];
  }
  return m;
}

inline std::pair<int, int> index_pair(const std::string& key, int n, const std::string& where)
{
  int j = 0, i = 0;
  char comma = 0;
  std::istringstream in(key);
  if (!(in >> j >> comma >> i) || comma != ',' || !in.eof() || j < 1 || i < 1 || j > n || i > n)
    throw InputError(where + ": key '" + key + "' is not of the form \"j,i\" within the dimension");
  return {j, i};
}

} // namespace detail

inline ProblemFile load_problem(const json& doc)
{
  if (!doc.is_object()) throw InputError("problem file must be a JSON object");
  ProblemFile pf;
  pf.title = doc.value("title", "");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer()) throw InputError("missing integer 'dim'");
  pf.dim = doc["dim"].get<int>();
  if (pf.dim < 2) throw InputError("'dim' must be at least 2");
  const int n = pf.dim;

  if (doc.contains("coordinates")) {
    for (const auto& c : doc["coordinates"]) pf.coordinates.push_back(c.get<std::string>());
    if (static_cast<int>(pf.coordinates.size()) != n) throw InputError("'coordinates' must list dim names");
  } else {
    for (int i = 1; i <= n; ++i) pf.coordinates.push_back("x" + std::to_string(i));
  }

  if (!doc.contains("metric") || !doc["metric"].is_object()) throw InputError("missing 'metric' object");
  const json& mj = doc["metric"];
  const std::string kind = mj.value("kind", "");
  if (!mj.contains("entries")) throw InputError("metric: missing 'entries'");
  try {
    if (kind == "diagonal") {
      const json& e = mj["entries"];
      if (e.is_array() && !e.empty() && e[0].is_array()) {
        pf.metric = MetricSpec(detail::expr_matrix(e, n, "metric.entries"), MetricKind::diagonal);
      } else {
        pf.metric = MetricSpec::diagonal(detail::expr_list(e, static_cast<std::size_t>(n), n, "metric.entries"));
      }
    } else if (kind == "general") {
      if (!mj.contains("inverse")) throw InputError("metric: kind 'general' needs 'inverse'");
      pf.metric = MetricSpec(detail::expr_matrix(mj["entries"], n, "metric.entries"), MetricKind::general,
                             detail::expr_matrix(mj["inverse"], n, "metric.inverse"));
    } else {
      throw InputError("metric: 'kind' must be \"diagonal\" or \"general\"");
    }
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    throw InputError(std::string("metric: ") + e.what());
  }

  if (doc.contains("fields")) {
    if (!doc["fields"].is_object()) throw InputError("'fields' must be an object");
    for (const auto& [name, comps] : doc["fields"].items()) {
      const auto c = detail::expr_list(comps, static_cast<std::size_t>(n), n, "fields." + name);
      try {
        pf.fields.emplace_back(name, BaseField(c));
      } catch (const Error& e) {
        throw InputError("fields." + name + ": " + e.what());
      }
    }
  }

  if (doc.contains("sets")) {
    if (!doc["sets"].is_object()) throw InputError("'sets' must be an object");
    for (const auto& [name, members] : doc["sets"].items()) {
      NamedSet s{name, {}, {}};
      if (!members.is_array()) throw InputError("sets." + name + ": expected an array of field names");
      for (const auto& m : members) {
        const std::string fname = m.get<std::string>();
        s.members.push_back(fname);
        s.fields.push_back(pf.field(fname));
      }
      pf.sets.push_back(std::move(s));
    }
  }

  if (doc.contains("expected_tables")) {
    for (const auto& [name, rows] : doc["expected_tables"].items()) {
      const NamedSet& s = pf.set(name);
      std::vector<std::vector<std::string>> table;
      if (!rows.is_array() || rows.size() != s.members.size()) throw InputError("expected_tables." + name + ": wrong number of rows");
      for (const auto& row : rows) {
        if (!row.is_array() || row.size() != s.members.size()) throw InputError("expected_tables." + name + ": wrong row length");
        std::vector<std::string> r;
        for (const auto& cell : row) r.push_back(cell.get<std::string>());
        table.push_back(std::move(r));
      }
      pf.expected_tables[name] = std::move(table);
    }
  }

  if (doc.contains("expected_spray"))
    pf.expected_spray = detail::expr_list(doc["expected_spray"], static_cast<std::size_t>(n), n, "expected_spray");

  if (doc.contains("expected_gamma")) {
    std::map<std::pair<int, int>, Expr> g;
    for (const auto& [key, val] : doc["expected_gamma"].items())
      g[detail::index_pair(key, n, "expected_gamma")] = detail::expr_at(val, n, "expected_gamma." + key);
    pf.expected_gamma = std::move(g);
  }

  if (doc.contains("horizontal_frame")) {
    std::vector<TMField> frame;
    const json& hf = doc["horizontal_frame"];
    if (!hf.is_array() || static_cast<int>(hf.size()) != n) throw InputError("horizontal_frame: expected dim vectors");
    for (int i = 0; i < n; ++i)
      frame.emplace_back(detail::expr_list(hf[i], static_cast<std::size_t>(2 * n), n, "horizontal_frame[" + std::to_string(i) + "]"));
    pf.horizontal_frame = std::move(frame);
  }

  if (doc.contains("claims")) {
    for (const auto& c : doc["claims"]) {
      if (!c.is_object() || !c.contains("kind")) throw InputError("claims: each claim needs a 'kind'");
      Claim cl{c["kind"].get<std::string>(), c.value("set", ""), c};
      if (!cl.set.empty()) pf.set(cl.set);
      pf.claims.push_back(std::move(cl));
    }
  }

  if (doc.contains("known_discrepancies"))
    for (const auto& d : doc["known_discrepancies"]) pf.known_discrepancies[d.at("key").get<std::string>()] = d.value("note", "");

  return pf;
}

inline ProblemFile load_problem_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  try {
    return load_problem(doc);
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

} // namespace spraylie::cli

#endif // SPRAYLIE_CLI_PROBLEM_HPP
