#pragma once

#include "toricq/divisor.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace toricq {

using json = nlohmann::ordered_json;

inline constexpr int kWorkspaceVersion = 1;

/// How a named divisor was written: coefficients a_rho, or PL values psi(u_rho)
/// in the workspace's sign convention.
enum class DivisorInput { Coeffs, PL };

struct NamedDivisor {
  std::string name;
  DivisorInput input = DivisorInput::Coeffs;
  QVector values;
  friend bool operator==(const NamedDivisor&, const NamedDivisor&) = default;
};

struct Workspace {
  std::string name;
  SignConvention convention = SignConvention::Internal;
  Fan fan;
  std::vector<NamedDivisor> divisors;
  std::string ample;           // name of the default ample divisor, may be empty
  std::vector<json> queries;   // {"command": ..., args...}

  friend bool operator==(const Workspace& a, const Workspace& b) {
    return a.name == b.name && a.convention == b.convention && a.fan.lattice_rank == b.fan.lattice_rank &&
           a.fan.rays == b.fan.rays && a.fan.max_cones == b.fan.max_cones && a.divisors == b.divisors &&
           a.ample == b.ample && a.queries == b.queries;
  }
};

namespace detail {

[[noreturn]] inline void schema_fail(const std::string& where, const std::string& what) {
  fail(ErrorKind::Schema, where + ": " + what);
}

inline void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) schema_fail(where, "expected an object");
  for (const auto& [k, v] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) schema_fail(where, "unknown field \"" + k + "\"");
  }
}

inline Rational json_rational(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const std::exception&) {
      schema_fail(where, "not a rational: \"" + v.get<std::string>() + "\"");
    }
  }
  schema_fail(where, "expected an integer or a rational string");
}

inline json rational_json(const Rational& r) {
  if (is_integral(r) && r.get_num().fits_slong_p()) return json(r.get_num().get_si());
  return json(r.get_str());
}

inline QVector json_qvector(const json& v, const std::string& where) {
  if (!v.is_array()) schema_fail(where, "expected an array");
  QVector out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(json_rational(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace detail

/// Parses and validates a workspace document. Cone indices are 1-based in the
/// file and 0-based in memory.
inline Workspace parse_workspace(const json& doc) {
  using namespace detail;
  only_keys(doc, "workspace", {"version", "name", "sign_convention", "fan", "divisors", "ample", "queries"});
  Workspace ws;
  if (doc.contains("version") && doc["version"] != kWorkspaceVersion)
    schema_fail("version", "unsupported workspace version");
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) schema_fail("name", "expected a string");
    ws.name = doc["name"].get<std::string>();
  }
  const std::string conv = doc.value("sign_convention", std::string("internal"));
  if (conv == "paper") ws.convention = SignConvention::Paper;
  else if (conv != "internal") schema_fail("sign_convention", "expected \"paper\" or \"internal\"");

  if (!doc.contains("fan")) schema_fail("workspace", "missing field \"fan\"");
  const auto& f = doc["fan"];
  only_keys(f, "fan", {"lattice_rank", "rays", "max_cones"});
  for (const char* k : {"lattice_rank", "rays", "max_cones"})
    if (!f.contains(k)) schema_fail("fan", std::string("missing field \"") + k + "\"");
  if (!f["lattice_rank"].is_number_integer() || f["lattice_rank"].get<int>() < 0)
    schema_fail("fan.lattice_rank", "expected a nonnegative integer");
  ws.fan.lattice_rank = f["lattice_rank"].get<int>();
  if (!f["rays"].is_array()) schema_fail("fan.rays", "expected an array");
  for (std::size_t i = 0; i < f["rays"].size(); ++i) {
    const auto& r = f["rays"][i];
    const std::string where = "fan.rays[" + std::to_string(i) + "]";
    if (!r.is_array()) schema_fail(where, "expected an integer array");
    IntPoint p;
    for (const auto& x : r) {
      if (!x.is_number_integer()) schema_fail(where, "expected integers");
      p.push_back(x.get<std::int64_t>());
    }
    ws.fan.rays.push_back(std::move(p));
  }
  if (!f["max_cones"].is_array()) schema_fail("fan.max_cones", "expected an array");
  for (std::size_t i = 0; i < f["max_cones"].size(); ++i) {
    const auto& c = f["max_cones"][i];
    const std::string where = "fan.max_cones[" + std::to_string(i) + "]";
    if (!c.is_array()) schema_fail(where, "expected an index array");
    Cone cone;
    for (const auto& x : c) {
      if (!x.is_number_integer()) schema_fail(where, "expected integers");
      const auto k = x.get<std::int64_t>();
      if (k < 1 || k > static_cast<std::int64_t>(ws.fan.rays.size()))
        schema_fail(where, "ray index " + std::to_string(k) + " out of range 1.." + std::to_string(ws.fan.rays.size()));
      cone.push_back(static_cast<int>(k - 1));
    }
    ws.fan.max_cones.push_back(std::move(cone));
  }

  const std::size_t r = ws.fan.rays.size();
  if (doc.contains("divisors")) {
    const auto& ds = doc["divisors"];
    if (!ds.is_object()) schema_fail("divisors", "expected an object");
    for (const auto& [name, v] : ds.items()) {
      const std::string where = "divisors." + name;
      NamedDivisor nd{name, DivisorInput::Coeffs, {}};
      if (v.is_array()) {
        nd.values = json_qvector(v, where);
      } else {
        only_keys(v, where, {"coeffs", "pl"});
        if (v.contains("coeffs") == v.contains("pl")) schema_fail(where, "give exactly one of \"coeffs\" or \"pl\"");
        if (v.contains("pl")) {
          nd.input = DivisorInput::PL;
          nd.values = json_qvector(v["pl"], where + ".pl");
        } else {
          nd.values = json_qvector(v["coeffs"], where + ".coeffs");
        }
      }
      if (nd.values.size() != r)
        schema_fail(where, "has " + std::to_string(nd.values.size()) + " entries but the fan has " + std::to_string(r) +
                               " rays");
      ws.divisors.push_back(std::move(nd));
    }
  }
  if (doc.contains("ample")) {
    if (!doc["ample"].is_string()) schema_fail("ample", "expected a divisor name");
    ws.ample = doc["ample"].get<std::string>();
  }
  if (doc.contains("queries")) {
    if (!doc["queries"].is_array()) schema_fail("queries", "expected an array");
    for (std::size_t i = 0; i < doc["queries"].size(); ++i) {
      const auto& q = doc["queries"][i];
      const std::string where = "queries[" + std::to_string(i) + "]";
      only_keys(q, where, {"name", "command", "divisor", "q", "tau", "mode", "ample", "expect"});
      if (!q.contains("command") || !q["command"].is_string()) schema_fail(where, "missing string field \"command\"");
      for (const char* k : {"name", "divisor", "tau", "mode", "ample"})
        if (q.contains(k) && !q[k].is_string()) schema_fail(where + "." + k, "expected a string");
      if (q.contains("q") && !q["q"].is_number_integer()) schema_fail(where + ".q", "expected an integer");
      if (q.contains("expect") && !q["expect"].is_boolean()) schema_fail(where + ".expect", "expected true or false");
      ws.queries.push_back(q);
    }
  }
  return ws;
}

inline Workspace parse_workspace(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Schema, std::string("JSON syntax error: ") + e.what());
  }
  return parse_workspace(doc);
}

inline json serialize_workspace(const Workspace& ws) {
  json doc;
  doc["version"] = kWorkspaceVersion;
  if (!ws.name.empty()) doc["name"] = ws.name;
  doc["sign_convention"] = convention_name(ws.convention);
  json rays = json::array();
  for (const auto& u : ws.fan.rays) rays.push_back(u);
  json cones = json::array();
  for (const auto& c : ws.fan.max_cones) {
    json one = json::array();
    for (int i : c) one.push_back(i + 1);
    cones.push_back(one);
  }
  doc["fan"] = {{"lattice_rank", ws.fan.lattice_rank}, {"rays", rays}, {"max_cones", cones}};
  json ds = json::object();
  for (const auto& d : ws.divisors) {
    json vals = json::array();
    for (const auto& x : d.values) vals.push_back(detail::rational_json(x));
    if (d.input == DivisorInput::PL) ds[d.name] = {{"pl", vals}};
    else ds[d.name] = vals;
  }
  if (!ws.divisors.empty()) doc["divisors"] = ds;
  if (!ws.ample.empty()) doc["ample"] = ws.ample;
  if (!ws.queries.empty()) doc["queries"] = ws.queries;
  return doc;
}

// ---------------------------------------------------------------------------
// Built-in examples

namespace detail {

inline Workspace make_builtin(std::string name, Fan fan, std::vector<std::pair<std::string, std::vector<std::int64_t>>> divs,
                              std::string ample) {
  Workspace ws;
  ws.name = std::move(name);
  ws.fan = std::move(fan);
  for (auto& [n, v] : divs) ws.divisors.push_back({n, DivisorInput::Coeffs, to_qvector(v)});
  ws.ample = std::move(ample);
  return ws;
}

}  // namespace detail

inline std::vector<std::string> builtin_names() { return {"p1", "p2", "p1xp1", "p1xp2", "totaro-x"}; }

inline Workspace builtin_workspace(const std::string& name) {
  using detail::make_builtin;
  if (name == "p1") return make_builtin("p1", Fan{1, {{1}, {-1}}, {{0}, {1}}}, {{"H", {1, 0}}}, "H");
  if (name == "p2")
    return make_builtin("p2", Fan{2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {0, 2}}}, {{"H", {1, 0, 0}}}, "H");
  if (name == "p1xp1")
    return make_builtin("p1xp1", Fan{2, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}},
                        {{"A", {1, 0, 0, 0}}, {"B", {0, 1, 0, 0}}, {"H", {1, 1, 0, 0}}}, "H");
  if (name == "p1xp2")
    return make_builtin("p1xp2",
                        Fan{3,
                            {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, -1, -1}},
                            {{0, 2, 3}, {0, 3, 4}, {0, 2, 4}, {1, 2, 3}, {1, 3, 4}, {1, 2, 4}}},
                        {{"A", {1, 0, 0, 0, 0}}, {"B", {0, 0, 1, 0, 0}}, {"H", {1, 0, 1, 0, 0}}}, "H");
  if (name == "totaro-x")
    return make_builtin("totaro-x",
                        Fan{3,
                            {{0, 0, -1}, {0, 0, 1}, {1, 0, 1}, {0, 1, -1}, {-1, 0, 0}, {0, -1, 0}},
                            {{0, 2, 3}, {0, 2, 5}, {0, 3, 4}, {0, 4, 5}, {1, 2, 3}, {1, 2, 5}, {1, 3, 4}, {1, 4, 5}}},
                        {{"L", {3, 3, -1, -1, -1, -1}}, {"H", {1, 1, 1, 1, 1, 1}}, {"Lp", {0, 6, -4, 2, -1, -1}}, {"Lc", {0, 6, 2, -4, -1, -1}}}, "H");
  fail(ErrorKind::InvalidArgument, "unknown built-in workspace \"" + name + "\"");
}

// ---------------------------------------------------------------------------
// Bound workspace: validated variety plus resolved divisors

struct BoundWorkspace {
  Workspace source;
  VarietyPtr variety;
  std::vector<std::pair<std::string, ToricDivisor>> divisors;

  const ToricDivisor* find(const std::string& n) const {
    for (const auto& [k, d] : divisors)
      if (k == n) return &d;
    return nullptr;
  }
};

inline ToricDivisor resolve_divisor(const VarietyPtr& X, const NamedDivisor& nd, SignConvention conv) {
  if (nd.input == DivisorInput::Coeffs) return ToricDivisor(X, nd.values);
  // paper: psi(u_rho) = a_rho; internal: psi(u_rho) = -a_rho
  QVector a(nd.values);
  if (conv == SignConvention::Internal)
    for (auto& x : a) x = -x;
  return ToricDivisor(X, std::move(a));
}

inline BoundWorkspace bind(const Workspace& ws) {
  BoundWorkspace b;
  b.source = ws;
  b.variety = ToricVariety::create(ws.fan, ws.name);
  for (const auto& nd : ws.divisors) b.divisors.emplace_back(nd.name, resolve_divisor(b.variety, nd, ws.convention));
  if (!ws.ample.empty() && !b.find(ws.ample)) fail(ErrorKind::Schema, "ample: no divisor named \"" + ws.ample + "\"");
  return b;
}

/// Divisor expressions: sums of rational multiples of named divisors, prime
/// divisors F1..Fr and the canonical divisor K, e.g. "2L-H", "F1+F2",
/// "-4H", "1/2*L + 3F2". A bracketed list is read as a coefficient vector.
inline ToricDivisor parse_divisor_expr(const BoundWorkspace& b, const std::string& text) {
  const auto& X = b.variety;
  auto bad = [&](const std::string& why) -> void { fail(ErrorKind::InvalidArgument, "divisor \"" + text + "\": " + why); };
  std::size_t first = text.find_first_not_of(" \t");
  if (first != std::string::npos && text[first] == '[') {
    json v;
    try {
      v = json::parse(text);
    } catch (const json::parse_error&) {
      bad("malformed coefficient list");
    }
    auto c = detail::json_qvector(v, "divisor");
    if (c.size() != static_cast<std::size_t>(X->ray_count()))
      bad("has " + std::to_string(c.size()) + " entries but the fan has " + std::to_string(X->ray_count()) + " rays");
    return ToricDivisor(X, std::move(c));
  }
  auto total = ToricDivisor::zero(X);
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  bool any = false;
  while (true) {
    skip();
    if (i >= text.size()) break;
    Rational sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      if (text[i] == '-') sign = -1;
      ++i;
      skip();
    } else if (any) {
      bad("expected + or - at position " + std::to_string(i));
    }
    Rational coef = 1;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      std::size_t j = i;
      while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '/')) ++j;
      coef = parse_rational(text.substr(i, j - i));
      i = j;
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip();
      }
    }
    std::size_t j = i;
    while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_' || text[j] == '\'')) ++j;
    if (j == i) bad("expected a divisor name at position " + std::to_string(i));
    const std::string name = text.substr(i, j - i);
    i = j;
    ToricDivisor term = ToricDivisor::zero(X);
    if (const auto* d = b.find(name)) {
      term = *d;
    } else if (name == "K") {
      term = canonical_divisor(X);
    } else if (name.size() > 1 && name[0] == 'F' &&
               std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      const int k = std::stoi(name.substr(1));
      if (k < 1 || k > X->ray_count()) bad("prime divisor " + name + " out of range");
      term = ToricDivisor::prime(X, k - 1);
    } else {
      bad("unknown divisor name \"" + name + "\"");
    }
    total = total + term * (sign * coef);
    any = true;
  }
  if (!any) bad("empty expression");
  return total;
}

/// Cone given as 1-based ray indices, e.g. "1,3" or "(13)" or "" for the zero cone.
inline Cone parse_cone(const std::string& text, int ray_count) {
  Cone c;
  std::string digits;
  const bool has_sep = text.find(',') != std::string::npos || text.find(' ') != std::string::npos;
  auto push = [&](const std::string& s) {
    if (s.empty()) return;
    const int k = std::stoi(s);
    if (k < 1 || k > ray_count) fail(ErrorKind::InvalidArgument, "ray index " + s + " out of range in \"" + text + "\"");
    c.push_back(k - 1);
  };
  for (char ch : text) {
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      if (has_sep) digits += ch;
      else push(std::string(1, ch));  // compact form (134) for fewer than 10 rays
    } else {
      push(digits);
      digits.clear();
    }
  }
  push(digits);
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return c;
}

}  // namespace toricq
