#include "toricq/commands.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace toricq;

namespace {

const char* kThreefold = R"({
  "version": 1,
  "name": "threefold",
  "sign_convention": "paper",
  "fan": {
    "lattice_rank": 3,
    "rays": [[0,0,-1],[0,0,1],[1,0,1],[0,1,-1],[-1,0,0],[0,-1,0]],
    "max_cones": [[1,3,4],[1,3,6],[1,4,5],[1,5,6],[2,3,4],[2,3,6],[2,4,5],[2,5,6]]
  },
  "divisors": {
    "L": {"pl": [3,3,-1,-1,-1,-1]},
    "H": {"coeffs": [1,1,1,1,1,1]},
    "half": {"coeffs": ["1/2",0,0,0,0,0]}
  },
  "ample": "H",
  "queries": [{"command": "qample", "divisor": "L", "q": 1}]
})";

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InternalConsistency;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

CommandOptions opts(std::string ws, std::string d = "", std::optional<int> q = std::nullopt) {
  CommandOptions o;
  o.workspace = std::move(ws);
  o.divisor = std::move(d);
  o.q = q;
  return o;
}

}  // namespace

TEST(Workspace, ParsesDivisorsInBothForms) {
  auto ws = parse_workspace(std::string(kThreefold));
  EXPECT_EQ(ws.convention, SignConvention::Paper);
  EXPECT_EQ(ws.fan.max_cones[0], (Cone{0, 2, 3}));
  auto b = bind(ws);
  EXPECT_EQ(b.find("L")->coeffs(), (QVector{3, 3, -1, -1, -1, -1}));
  EXPECT_EQ((*b.find("half"))[0], Rational(1, 2));
  EXPECT_EQ(b.find("missing"), nullptr);
}

TEST(Workspace, InternalConventionFlipsPlValues) {
  auto doc = json::parse(kThreefold);
  doc["sign_convention"] = "internal";
  doc["divisors"]["L"] = {{"pl", {-3, -3, 1, 1, 1, 1}}};
  auto b = bind(parse_workspace(doc));
  EXPECT_EQ(b.find("L")->coeffs(), (QVector{3, 3, -1, -1, -1, -1}));
}

TEST(Workspace, SchemaErrors) {
  auto doc = json::parse(kThreefold);
  doc["divisors"]["bad"] = {{"coeffs", {1, 2, 3, 4, 5}}};
  EXPECT_EQ(kind_of([&] { parse_workspace(doc); }), ErrorKind::Schema);
  doc = json::parse(kThreefold);
  doc["colour"] = "blue";
  EXPECT_EQ(kind_of([&] { parse_workspace(doc); }), ErrorKind::Schema);
  doc = json::parse(kThreefold);
  doc["fan"]["max_cones"][0] = {1, 3, 7};
  EXPECT_EQ(kind_of([&] { parse_workspace(doc); }), ErrorKind::Schema);
  doc = json::parse(kThreefold);
  doc["sign_convention"] = "other";
  EXPECT_EQ(kind_of([&] { parse_workspace(doc); }), ErrorKind::Schema);
  EXPECT_EQ(kind_of([&] { parse_workspace(std::string("{not json")); }), ErrorKind::Schema);
}

TEST(Workspace, RoundTrip) {
  auto ws = parse_workspace(std::string(kThreefold));
  auto again = parse_workspace(serialize_workspace(ws));
  EXPECT_EQ(ws, again);
  EXPECT_EQ(serialize_workspace(ws).dump(), serialize_workspace(again).dump());
  for (const auto& n : builtin_names()) {
    auto b = builtin_workspace(n);
    EXPECT_EQ(parse_workspace(serialize_workspace(b)), b) << n;
  }
}

TEST(Workspace, Builtins) {
  auto t = bind(builtin_workspace("totaro-x"));
  EXPECT_EQ(t.variety->ray_count(), 6);
  EXPECT_EQ(t.variety->max_cones().size(), 8u);
  auto p = bind(builtin_workspace("p1xp1"));
  EXPECT_EQ(p.variety->ray_count(), 4);
  EXPECT_EQ(p.variety->max_cones().size(), 4u);
  auto q = bind(builtin_workspace("p1xp2"));
  EXPECT_EQ(q.variety->dim(), 3);
  EXPECT_EQ(q.variety->ray_count(), 5);
  EXPECT_EQ(kind_of([] { builtin_workspace("nope"); }), ErrorKind::InvalidArgument);
}

TEST(Expressions, Divisors) {
  auto b = bind(builtin_workspace("totaro-x"));
  EXPECT_EQ(parse_divisor_expr(b, "2L-H").coeffs(), (QVector{5, 5, -3, -3, -3, -3}));
  EXPECT_EQ(parse_divisor_expr(b, "F1+F2").coeffs(), (QVector{1, 1, 0, 0, 0, 0}));
  EXPECT_EQ(parse_divisor_expr(b, "K"), -*b.find("H"));
  EXPECT_EQ(parse_divisor_expr(b, "1/2*L")[0], Rational(3, 2));
  EXPECT_EQ(parse_divisor_expr(b, "[1,0,0,0,0,-1]").coeffs(), (QVector{1, 0, 0, 0, 0, -1}));
  EXPECT_EQ(kind_of([&] { parse_divisor_expr(b, "[1,2]"); }), ErrorKind::InvalidArgument);
  EXPECT_NE(kind_of([&] { parse_divisor_expr(b, "2Q"); }), ErrorKind::InternalConsistency);
}

TEST(Expressions, Cones) {
  EXPECT_EQ(parse_cone("1,3", 6), (Cone{0, 2}));
  EXPECT_EQ(parse_cone("(134)", 6), (Cone{0, 2, 3}));
  EXPECT_TRUE(parse_cone("", 6).empty());
  EXPECT_THROW(parse_cone("9", 6), Error);
}

TEST(Run, QAmpleVerdictAndCertificate) {
  auto r = run("qample", opts("totaro-x", "L", 1));
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_EQ(r.report["status"], "ok");
  EXPECT_EQ(r.report["result"]["qample"], false);
  const auto& ob = r.report["result"]["asymptotic"]["obstructions"];
  ASSERT_EQ(ob.size(), 1u);
  EXPECT_EQ(ob[0]["subset"], json({3, 4, 5, 6}));
  EXPECT_EQ(ob[0]["degree"], 2);
  auto o = opts("totaro-x", "L", 1);
  o.expect = true;
  EXPECT_EQ(run("qample", o).exit_code, kExitMismatch);
  o.expect = false;
  EXPECT_EQ(run("qample", o).exit_code, kExitOk);
}

TEST(Run, Cohomology) {
  auto r = run("cohomology", opts("p2", "-4H"));
  ASSERT_EQ(r.exit_code, kExitOk);
  EXPECT_EQ(r.report["result"]["dims"], json({0, 0, 3}));
}

TEST(Run, Connectivity) {
  auto r = run("connectivity", opts("totaro-x", "F1+F2", 1));
  ASSERT_EQ(r.exit_code, kExitOk);
  EXPECT_EQ(r.report["result"]["connected"], false);
  EXPECT_EQ(r.report["result"]["conclusion"], "not 1-ample");
}

TEST(Run, InputErrors) {
  auto r = run("qample", opts("totaro-x", "[1,2,3,4,5]", 1));
  EXPECT_EQ(r.exit_code, kExitInput);
  EXPECT_EQ(r.report["status"], "error");
  EXPECT_EQ(run("qample", opts("totaro-x", "L")).exit_code, kExitInput);
  EXPECT_EQ(run("cohomology", opts("totaro-x", "1/2*L")).exit_code, kExitInput);
  EXPECT_EQ(run("frobnicate", opts("totaro-x")).exit_code, kExitInput);
  EXPECT_EQ(run("validate", opts("/nonexistent/file.json")).exit_code, kExitInput);
  auto o = opts("totaro-x", "L", 1);
  o.ample = "L";
  EXPECT_EQ(run("qample", o).exit_code, kExitInput);
}

TEST(Run, IncompleteFanRejected) {
  auto doc = json::parse(kThreefold);
  doc["fan"]["max_cones"].erase(7);
  auto path = write_temp("toricq_incomplete.json", doc.dump());
  auto r = run("cohomology", opts(path, "H"));
  EXPECT_EQ(r.exit_code, kExitInput);
  std::filesystem::remove(path);
}

TEST(Run, FileWorkspaceMatchesBuiltin) {
  auto path = write_temp("toricq_threefold.json", kThreefold);
  auto a = run("classify", opts(path, "L"));
  auto b = run("classify", opts("totaro-x", "L"));
  ASSERT_EQ(a.exit_code, kExitOk);
  EXPECT_EQ(a.report["result"]["smallest_q"], b.report["result"]["smallest_q"]);
  EXPECT_EQ(a.report["result"]["smallest_q"], 2);
  EXPECT_EQ(a.report["convention"], "paper");
  EXPECT_EQ(a.report["result"]["divisor"]["pl"], json({3, 3, -1, -1, -1, -1}));
  std::filesystem::remove(path);
}

TEST(Run, ByteStable) {
  for (const auto& cmd : {"validate", "cohomology", "classify", "qnef", "baselocus", "restrict"}) {
    auto o = opts("totaro-x", "2L-H", 1);
    o.tau = "1";
    auto a = run(cmd, o).report.dump(2), b = run(cmd, o).report.dump(2);
    EXPECT_EQ(a, b) << cmd;
    EXPECT_EQ(a.find("timing_ms"), std::string::npos);
  }
}

TEST(Run, Restrict) {
  auto o = opts("totaro-x", "L");
  o.tau = "1";
  auto r = run("restrict", o);
  ASSERT_EQ(r.exit_code, kExitOk) << r.report.dump();
  EXPECT_EQ(r.report["result"]["restriction"]["coeffs"], json({0, 0, 1, -5}));
}

TEST(Run, Replicate) {
  auto r = run("replicate-paper", {});
  EXPECT_EQ(r.exit_code, kExitOk) << r.report.dump(2);
  for (const auto& c : r.report["result"]["checks"]) EXPECT_TRUE(c["pass"].get<bool>()) << c.dump();
}

TEST(Run, Queries) {
  auto path = write_temp("toricq_queries.json", kThreefold);
  auto r = run("queries", opts(path));
  ASSERT_EQ(r.exit_code, kExitOk) << r.report.dump(2);
  ASSERT_EQ(r.report["result"].size(), 1u);
  EXPECT_EQ(r.report["result"][0]["result"]["qample"], false);

  auto doc = json::parse(kThreefold);
  doc["queries"].push_back({{"name", "wrong"}, {"command", "qample"}, {"divisor", "L"}, {"q", 1}, {"expect", true}});
  std::ofstream(path) << doc.dump();
  r = run("queries", opts(path));
  EXPECT_EQ(r.exit_code, kExitMismatch);
  EXPECT_EQ(r.report["result"][1]["status"], "mismatch");

  doc["queries"].push_back({{"command", "cohomology"}, {"divisor", "half"}});
  std::ofstream(path) << doc.dump();
  r = run("queries", opts(path));
  EXPECT_EQ(r.exit_code, kExitInput);
  EXPECT_EQ(r.report["result"][2]["error"]["kind"], "NotIntegral");

  doc["queries"] = json::array({{{"command", "queries"}}});
  std::ofstream(path) << doc.dump();
  EXPECT_EQ(run("queries", opts(path)).exit_code, kExitInput);
  doc["queries"] = json::array({{{"command", "qample"}, {"q", "one"}}});
  EXPECT_EQ(kind_of([&] { parse_workspace(doc); }), ErrorKind::Schema);
  std::filesystem::remove(path);
}
