#pragma once

#include "toricq/report.hpp"

#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace toricq {

enum ExitCode { kExitOk = 0, kExitMismatch = 1, kExitInput = 2, kExitInternal = 3 };

inline int exit_code_for(ErrorKind k) { return is_internal(k) ? kExitInternal : kExitInput; }

struct CommandOptions {
  std::string workspace = "totaro-x";  // built-in name or path to a JSON file
  std::string divisor;
  std::string ample;                   // expression; defaults to the workspace's ample divisor
  std::optional<int> q;
  std::string tau;
  std::string mode = "asymptotic";
  int n_max = 12;
  int j_max = 4;
  std::int64_t stable_horizon = 24;
  std::optional<bool> expect;          // expected verdict for qample/qnef/connectivity
  // chambers
  std::string origin = "0";
  std::string dir1;
  std::string dir2;
  std::string s_range = "-1:1";
  std::string t_range = "-1:1";
  int steps = 8;
  std::vector<std::string> points;     // "s,t"
  std::string emit_plot;
  bool timing = false;
};

struct CommandResult {
  json report;
  int exit_code = kExitOk;
};

inline Workspace load_workspace(const std::string& spec) {
  for (const auto& n : builtin_names())
    if (n == spec) return builtin_workspace(spec);
  std::ifstream in(spec);
  if (!in) fail(ErrorKind::InvalidArgument, "\"" + spec + "\" is neither a built-in workspace nor a readable file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_workspace(ss.str());
}

namespace detail {

inline std::pair<Rational, Rational> parse_range(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) fail(ErrorKind::InvalidArgument, "range \"" + s + "\" must look like lo:hi");
  Rational lo = parse_rational(s.substr(0, colon)), hi = parse_rational(s.substr(colon + 1));
  if (!(lo < hi)) fail(ErrorKind::InvalidArgument, "range \"" + s + "\" is empty");
  return {lo, hi};
}

inline ToricDivisor ample_of(const BoundWorkspace& b, const CommandOptions& o) {
  ToricDivisor H = o.ample.empty() ? (b.source.ample.empty() ? default_ample(b.variety) : *b.find(b.source.ample))
                                   : parse_divisor_expr(b, o.ample);
  if (!classify_cones(H).ample) fail(ErrorKind::InvalidArgument, "the chosen polarization " + to_string(H) + " is not ample");
  return H;
}

inline ToricDivisor require_divisor(const BoundWorkspace& b, const CommandOptions& o) {
  if (o.divisor.empty()) fail(ErrorKind::InvalidArgument, "--divisor is required");
  return parse_divisor_expr(b, o.divisor);
}

inline int require_q(const BoundWorkspace& b, const CommandOptions& o) {
  if (!o.q) fail(ErrorKind::InvalidArgument, "--q is required");
  if (*o.q < 0 || *o.q > b.variety->dim()) fail(ErrorKind::InvalidArgument, "--q must lie in 0..dim");
  return *o.q;
}

struct Check {
  std::string name;
  json expected;
  json observed;
  bool pass = false;
};

inline json checks_json(const std::vector<Check>& cs) {
  json a = json::array();
  for (const auto& c : cs)
    a.push_back({{"check", c.name}, {"expected", c.expected}, {"observed", c.observed}, {"pass", c.pass}});
  return a;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Individual commands. Each fills `result` and may set a verdict mismatch.

inline json cmd_validate(const BoundWorkspace& b) {
  const auto& X = *b.variety;
  json j = properties_json(X);
  j["fan"] = fan_json(X.fan());
  return j;
}

inline json cmd_cohomology(const BoundWorkspace& b, const CommandOptions& o) {
  const auto D = detail::require_divisor(b, o);
  json j = {{"divisor", divisor_json(D, b.source.convention)}};
  j.update(cohomology_json(cohomology_dims(D)));
  return j;
}

inline json cmd_classify(const BoundWorkspace& b, const CommandOptions& o) {
  const auto D = detail::require_divisor(b, o);
  const auto H = detail::ample_of(b, o);
  const auto rep = positivity_report(D, H);
  json qn = json::array(), qa = json::array();
  for (const auto& r : rep.qnef) qn.push_back(qnef_json(r, b.source.convention));
  for (const auto& v : rep.qample) qa.push_back(asymptotic_json(v));
  return {{"divisor", divisor_json(D, b.source.convention)},
          {"class", class_json(class_of(D))},
          {"flags", flags_json(rep.flags)},
          {"smallest_q", rep.smallest_q},
          {"q_nef", qn},
          {"q_ample", qa}};
}

inline json cmd_qample(const BoundWorkspace& b, const CommandOptions& o, bool& mismatch) {
  const auto D = detail::require_divisor(b, o);
  const int q = detail::require_q(b, o);
  const auto H = detail::ample_of(b, o);
  QAmpleMode mode;
  if (o.mode == "asymptotic") mode = QAmpleMode::Asymptotic;
  else if (o.mode == "scan") mode = QAmpleMode::Scan;
  else fail(ErrorKind::InvalidArgument, "--mode must be asymptotic or scan");
  ScanParams sp;
  sp.n_max = o.n_max;
  sp.j_max = o.j_max;
  const auto d = decide_qample(D, q, H, mode, sp);
  json j = {{"divisor", divisor_json(D, b.source.convention)},
            {"polarization", divisor_json(H, b.source.convention)},
            {"q", q},
            {"mode", o.mode},
            {"qample", d.qample},
            {"asymptotic", asymptotic_json(d.asymptotic)}};
  if (d.scan) j["scan"] = scan_json(*d.scan);
  if (o.expect && *o.expect != d.qample) mismatch = true;
  return j;
}

inline json cmd_qnef(const BoundWorkspace& b, const CommandOptions& o, bool& mismatch) {
  const auto D = detail::require_divisor(b, o);
  const int q = detail::require_q(b, o);
  const auto r = is_qnef(D, q);
  json j = {{"divisor", divisor_json(D, b.source.convention)}};
  j.update(qnef_json(r, b.source.convention));
  if (o.expect && *o.expect != r.qnef) mismatch = true;
  return j;
}

inline json cmd_baselocus(const BoundWorkspace& b, const CommandOptions& o) {
  const auto D = detail::require_divisor(b, o);
  const auto H = detail::ample_of(b, o);
  json j = {{"divisor", divisor_json(D, b.source.convention)}};
  if (D.integral()) j["base_locus"] = locus_json(base_locus(D));
  const auto B = stable_base_locus(D, o.stable_horizon);
  json sb = locus_json(B);
  json chain = json::array();
  for (const auto& step : B.chain) {
    json s = json::array();
    for (const auto& c : step) s.push_back(cone_json(c));
    chain.push_back(s);
  }
  sb["chain"] = chain;
  j["stable_base_locus"] = sb;
  const auto Bp = augmented_base_locus(D, H);
  j["augmented_base_locus"] = locus_json(Bp);
  j["polarization"] = divisor_json(H, b.source.convention);
  return j;
}

inline json cmd_restrict(const BoundWorkspace& b, const CommandOptions& o) {
  const auto D = detail::require_divisor(b, o);
  const auto tau = parse_cone(o.tau, b.variety->ray_count());
  const auto r = restrict_divisor(D, tau);
  const auto& V = r.orbit->variety;
  json img = json::array();
  for (std::size_t i = 0; i < r.orbit->ray_image.size(); ++i)
    if (const auto& m = r.orbit->ray_image[i])
      img.push_back({{"ray", i + 1}, {"image", m->index + 1}, {"multiplicity", m->multiplicity}});
  // a second representative must give a linearly equivalent restriction
  const auto r2 = restrict_divisor(D, tau, 1);
  const auto eq = is_linearly_equivalent(r.divisor, r2.divisor);
  json j = {{"divisor", divisor_json(D, b.source.convention)},
            {"tau", cone_json(tau)},
            {"orbit_fan", fan_json(V->fan())},
            {"orbit_properties", properties_json(*V)},
            {"ray_image", img},
            {"shift_m", to_json(r.shift)},
            {"representative", divisor_json(r.representative, b.source.convention)},
            {"restriction", divisor_json(r.divisor, b.source.convention)},
            {"restriction_class", class_json(class_of(r.divisor))},
            {"restriction_flags", flags_json(classify_cones(r.divisor))},
            {"negative_restriction_big", classify_cones(-r.divisor).big},
            {"second_representative_equivalent", eq.equivalent}};
  if (V->complete() && V->dim() > 0) j["restriction_smallest_q"] = smallest_qample(r.divisor, default_ample(V));
  // compare against every named divisor of the workspace that vanishes on tau
  json named = json::array();
  for (const auto& [n, E] : b.divisors) {
    bool vanishes = true;
    for (int t : tau) vanishes = vanishes && E[static_cast<std::size_t>(t)] == 0;
    if (!vanishes || tau.empty()) continue;
    const auto le = is_linearly_equivalent(D, E);
    json e = {{"name", n}, {"linearly_equivalent", le.equivalent}};
    if (le.witness) e["witness_m"] = to_json(*le.witness);
    named.push_back(e);
  }
  if (!named.empty()) j["named_representatives"] = named;
  return j;
}

inline json cmd_connectivity(const BoundWorkspace& b, const CommandOptions& o, bool& mismatch) {
  const auto D = detail::require_divisor(b, o);
  const int n = b.variety->dim();
  const int q = o.q.value_or(n - 2);
  const auto r = disconnected_section_criterion(D, q);
  json h1 = json::array();
  for (const auto& [m, h] : r.h1_checks) h1.push_back({{"m", m}, {"h1", to_json(h)}});
  json j = {{"divisor", divisor_json(D, b.source.convention)},
            {"support", cone_json(r.support)},
            {"connected", r.connected},
            {"applies", r.applies},
            {"q_target", q},
            {"conclusion", r.applies ? (r.rules_out_target ? "not " + std::to_string(q) + "-ample"
                                                           : "not " + std::to_string(r.threshold_q) + "-ample; inconclusive for q_target")
                                     : std::string("inconclusive")},
            {"h1_of_negative_multiples", h1}};
  if (o.expect && *o.expect != r.rules_out_target) mismatch = true;
  return j;
}

inline ChamberSpec chamber_spec(const BoundWorkspace& b, const CommandOptions& o) {
  if (o.dir1.empty() || o.dir2.empty()) fail(ErrorKind::InvalidArgument, "--dir1 and --dir2 are required");
  ChamberSpec spec{o.origin == "0" ? ToricDivisor::zero(b.variety) : parse_divisor_expr(b, o.origin),
                   parse_divisor_expr(b, o.dir1), parse_divisor_expr(b, o.dir2), -1, 1, -1, 1, 8, {}};
  std::tie(spec.s_min, spec.s_max) = detail::parse_range(o.s_range);
  std::tie(spec.t_min, spec.t_max) = detail::parse_range(o.t_range);
  spec.steps = o.steps;
  for (const auto& p : o.points) {
    const auto comma = p.find(',');
    if (comma == std::string::npos) fail(ErrorKind::InvalidArgument, "point \"" + p + "\" must look like s,t");
    spec.extra_points.emplace_back(parse_rational(p.substr(0, comma)), parse_rational(p.substr(comma + 1)));
  }
  return spec;
}

inline json cmd_chambers(const BoundWorkspace& b, const CommandOptions& o) {
  const auto spec = chamber_spec(b, o);
  const auto H = detail::ample_of(b, o);
  const auto map = chamber_scan(spec, H);
  if (!o.emit_plot.empty()) {
    std::ofstream out(o.emit_plot);
    if (!out) fail(ErrorKind::InvalidArgument, "cannot write " + o.emit_plot);
    out << chamber_svg(map);
  }
  json j = {{"origin", divisor_json(spec.origin, b.source.convention)},
            {"dir1", divisor_json(spec.dir1, b.source.convention)},
            {"dir2", divisor_json(spec.dir2, b.source.convention)}};
  j.update(chamber_json(map));
  return j;
}

/// The example threefold end to end: 1-nef on every prime divisor, L not
/// 1-ample with its certificate, the restriction to F1, the disconnected
/// section of F1+F2, and chamber labels at [H], [L], -[H].
inline std::vector<detail::Check> replication_checks() {
  using detail::Check;
  const auto b = bind(builtin_workspace("totaro-x"));
  const auto& X = b.variety;
  const auto L = *b.find("L");
  const auto H = *b.find("H");
  std::vector<Check> cs;
  auto add = [&](std::string name, json expected, json observed) {
    const bool pass = expected == observed;
    cs.push_back({std::move(name), std::move(expected), std::move(observed), pass});
  };
  const auto& p = X->properties();
  add("fan is smooth, complete, simplicial", true, p.smooth && p.complete && p.simplicial);
  add("Picard rank", 3, X->picard().rank);

  const auto qn = is_qnef(L, 1);
  add("L is 1-nef", true, qn.qnef);
  for (int i = 0; i < X->ray_count(); ++i) {
    const auto r = restrict_divisor(L, {i});
    add("-L|F" + std::to_string(i + 1) + " not big", true, !classify_cones(-r.divisor).big);
  }

  const auto v = decide_qample_asymptotic(L, 1, H);
  add("L is 1-ample", false, v.qample);
  json cert = json::array();
  for (const auto& ob : v.obstructions)
    if (ob.degree == 2) cert.push_back({{"subset", cone_json(ob.subset)}, {"reduced_dim", ob.reduced_dim}});
  add("degree-2 obstruction subsets", json::array({{{"subset", {3, 4, 5, 6}}, {"reduced_dim", 1}}}), cert);
  add("h(2L)", json::array({0, 100, 35, 0}), cohomology_json(cohomology_dims(L * Rational(2)))["dims"]);

  const auto r1 = restrict_divisor(L, {0});
  add("restriction of L to F1 is P1xP1", json::array({1, 1}),
      json::array({r1.orbit->variety->properties().smooth ? 1 : 0, r1.orbit->variety->picard().rank == 2 ? 1 : 0}));
  add("-L|F1 big", false, classify_cones(-r1.divisor).big);
  add("L|F1 coefficients on images of f3,f4,f5,f6", json::array({0, 0, 1, -5}), to_json(r1.divisor.coeffs()));
  add("published representative Lp equivalent to L", false, is_linearly_equivalent(L, *b.find("Lp")).equivalent);
  add("representative Lc equivalent to L", true, is_linearly_equivalent(L, *b.find("Lc")).equivalent);

  const auto F12 = parse_divisor_expr(b, "F1+F2");
  const auto dc = disconnected_section_criterion(F12, 1);
  add("support of F1+F2 connected", false, dc.connected);
  add("criterion rules out 1-ample for F1+F2", true, dc.rules_out_target);
  add("F1+F2 is 1-ample", false, decide_qample_asymptotic(F12, 1, H).qample);

  add("smallest q at [H]", 0, smallest_qample(H, H));
  add("smallest q at [L]", 2, smallest_qample(L, H));
  add("smallest q at -[H]", 3, smallest_qample(-H, H));
  add("pseudoeffective at [H]", true, classify_cones(H).pseudoeffective);
  add("pseudoeffective at -[H]", false, classify_cones(-H).pseudoeffective);
  // L + div(chi^m) >= 0 has no solution, so L lies outside the effective cone
  add("pseudoeffective at [L]", false, classify_cones(L).pseudoeffective);
  return cs;
}

inline json cmd_replicate(bool& mismatch) {
  const auto cs = replication_checks();
  for (const auto& c : cs) mismatch = mismatch || !c.pass;
  int passed = 0;
  for (const auto& c : cs) passed += c.pass;
  return {{"checks", detail::checks_json(cs)}, {"passed", passed}, {"total", cs.size()}};
}

inline std::vector<std::string> command_names() {
  return {"validate", "cohomology", "classify", "qample", "qnef", "baselocus", "restrict",
          "connectivity", "chambers", "replicate-paper", "queries"};
}

inline CommandResult run(const std::string& command, const CommandOptions& o);

/// Runs every named query of the workspace; the exit code is the worst one.
inline json cmd_queries(const BoundWorkspace& b, const CommandOptions& o, int& worst) {
  json out = json::array();
  for (std::size_t i = 0; i < b.source.queries.size(); ++i) {
    const auto& q = b.source.queries[i];
    const auto command = q["command"].get<std::string>();
    if (command == "queries") fail(ErrorKind::Schema, "queries[" + std::to_string(i) + "]: a query cannot run queries");
    CommandOptions qo;
    qo.workspace = o.workspace;
    qo.divisor = q.value("divisor", std::string());
    qo.ample = q.value("ample", std::string());
    qo.tau = q.value("tau", std::string());
    qo.mode = q.value("mode", qo.mode);
    if (q.contains("q")) qo.q = q["q"].get<int>();
    if (q.contains("expect")) qo.expect = q["expect"].get<bool>();
    auto r = run(command, qo);
    worst = std::max(worst, r.exit_code);
    json entry = {{"name", q.value("name", "query " + std::to_string(i + 1))}, {"query", q}, {"status", r.report["status"]}};
    if (r.report.contains("result")) entry["result"] = r.report["result"];
    if (r.report.contains("error")) entry["error"] = r.report["error"];
    out.push_back(std::move(entry));
  }
  return out;
}

/// Runs one command. Errors become structured report entries plus the exit
/// code contract: 0 ok, 1 verdict mismatch, 2 input error, 3 internal failure.
inline CommandResult run(const std::string& command, const CommandOptions& o) {
  CommandResult res;
  json& rep = res.report;
  rep["tool"] = "toricq";
  rep["version"] = kToolVersion;
  rep["command"] = command;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    bool mismatch = false;
    json result;
    if (command == "replicate-paper") {
      rep["workspace"] = "totaro-x";
      rep["convention"] = convention_name(SignConvention::Internal);
      result = cmd_replicate(mismatch);
    } else {
      const auto b = bind(load_workspace(o.workspace));
      rep["workspace"] = b.source.name;
      rep["convention"] = convention_name(b.source.convention);
      json input = {{"workspace", o.workspace}};
      if (!o.divisor.empty()) input["divisor"] = o.divisor;
      if (o.q) input["q"] = *o.q;
      if (!o.tau.empty()) input["tau"] = o.tau;
      rep["input"] = input;
      if (command == "validate") result = cmd_validate(b);
      else if (command == "cohomology") result = cmd_cohomology(b, o);
      else if (command == "classify") result = cmd_classify(b, o);
      else if (command == "qample") result = cmd_qample(b, o, mismatch);
      else if (command == "qnef") result = cmd_qnef(b, o, mismatch);
      else if (command == "baselocus") result = cmd_baselocus(b, o);
      else if (command == "restrict") result = cmd_restrict(b, o);
      else if (command == "connectivity") result = cmd_connectivity(b, o, mismatch);
      else if (command == "chambers") result = cmd_chambers(b, o);
      else if (command == "queries") {
        int worst = kExitOk;
        result = cmd_queries(b, o, worst);
        if (worst == kExitMismatch) mismatch = true;
        if (worst > kExitMismatch) res.exit_code = worst;
      }
      else fail(ErrorKind::InvalidArgument, "unknown command \"" + command + "\"");
    }
    rep["status"] = res.exit_code > kExitMismatch ? "error" : mismatch ? "mismatch" : "ok";
    rep["result"] = std::move(result);
    if (res.exit_code == kExitOk) res.exit_code = mismatch ? kExitMismatch : kExitOk;
  } catch (const Error& e) {
    rep["status"] = "error";
    rep["error"] = {{"kind", error_kind_name(e.kind())}, {"message", e.what()}};
    res.exit_code = exit_code_for(e.kind());
  } catch (const std::exception& e) {
    rep["status"] = "error";
    rep["error"] = {{"kind", "InvalidArgument"}, {"message", e.what()}};
    res.exit_code = kExitInput;
  }
  if (o.timing) {
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    rep["timing_ms"] = ms;
  }
  return res;
}

}  // namespace toricq
