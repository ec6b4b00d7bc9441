#include "toricq/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using namespace toricq;
  CLI::App app{"Positivity of line bundles on complete simplicial toric varieties"};
  app.require_subcommand(1);
  CommandOptions o;
  bool pretty = false;
  app.add_flag("--pretty", pretty, "Indent the JSON report");
  app.add_flag("--timing", o.timing, "Add wall-clock timing to the report (breaks byte stability)");

  auto workspace_opts = [&](CLI::App* c) {
    c->add_option("-w,--workspace", o.workspace, "Built-in name (p1, p2, p1xp1, p1xp2, totaro-x) or JSON file")
        ->capture_default_str();
  };
  auto divisor_opt = [&](CLI::App* c) {
    c->add_option("-d,--divisor", o.divisor, "Divisor expression, e.g. 2L-H, F1+F2, [1,0,0]")->required();
  };
  auto ample_opt = [&](CLI::App* c) { c->add_option("--ample", o.ample, "Ample polarization (default: workspace's)"); };
  auto expect_opt = [&](CLI::App* c) {
    c->add_option("--expect", o.expect, "Expected verdict; exit 1 when it differs");
  };

  auto* validate = app.add_subcommand("validate", "Check the fan and report its properties");
  workspace_opts(validate);

  auto* coh = app.add_subcommand("cohomology", "dim H^p(X, O(D)) with per-subset witnesses");
  workspace_opts(coh);
  divisor_opt(coh);

  auto* classify = app.add_subcommand("classify", "Cone flags and per-q verdicts");
  workspace_opts(classify);
  divisor_opt(classify);
  ample_opt(classify);

  auto* qample = app.add_subcommand("qample", "Decide q-amplitude");
  workspace_opts(qample);
  divisor_opt(qample);
  ample_opt(qample);
  expect_opt(qample);
  qample->add_option("-q,--q", o.q)->required();
  qample->add_option("--mode", o.mode, "asymptotic or scan")->capture_default_str();
  qample->add_option("--n-max", o.n_max, "Largest N scanned")->capture_default_str();
  qample->add_option("--j-max", o.j_max, "Largest twist j scanned")->capture_default_str();

  auto* qnef = app.add_subcommand("qnef", "Torus-invariant q-nef test");
  workspace_opts(qnef);
  divisor_opt(qnef);
  expect_opt(qnef);
  qnef->add_option("-q,--q", o.q)->required();

  auto* bl = app.add_subcommand("baselocus", "Base locus, stable and augmented base loci");
  workspace_opts(bl);
  divisor_opt(bl);
  ample_opt(bl);
  bl->add_option("--horizon", o.stable_horizon, "Largest multiple k for the stable base locus chain")
      ->capture_default_str();

  auto* rs = app.add_subcommand("restrict", "Restrict a divisor to an orbit closure V(tau)");
  workspace_opts(rs);
  divisor_opt(rs);
  rs->add_option("--tau", o.tau, "Cone as 1-based ray indices, e.g. 1 or 1,3")->required();

  auto* conn = app.add_subcommand("connectivity", "Disconnected-section criterion for an effective divisor");
  workspace_opts(conn);
  divisor_opt(conn);
  expect_opt(conn);
  conn->add_option("-q,--q", o.q, "Target q (default n-2)");

  auto* ch = app.add_subcommand("chambers", "Sample smallest-q labels on a 2-plane of N^1");
  workspace_opts(ch);
  ample_opt(ch);
  ch->add_option("--origin", o.origin, "Origin class")->capture_default_str();
  ch->add_option("--dir1", o.dir1, "First direction")->required();
  ch->add_option("--dir2", o.dir2, "Second direction")->required();
  ch->add_option("--s-range", o.s_range, "lo:hi for the first coordinate")->capture_default_str();
  ch->add_option("--t-range", o.t_range, "lo:hi for the second coordinate")->capture_default_str();
  ch->add_option("--steps", o.steps, "Grid subdivisions per axis")->capture_default_str();
  ch->add_option("--point", o.points, "Extra sample s,t (repeatable)");
  ch->add_option("--emit-plot", o.emit_plot, "Write an SVG raster to this path");

  app.add_subcommand("replicate-paper", "Run the example threefold end to end");

  auto* qs = app.add_subcommand("queries", "Run the named queries stored in a workspace file");
  workspace_opts(qs);

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();
  const auto res = run(command, o);
  std::cout << res.report.dump(pretty ? 2 : -1) << "\n";
  if (res.exit_code != kExitOk && res.report.contains("error"))
    std::cerr << "toricq: " << res.report["error"]["message"].get<std::string>() << "\n";
  return res.exit_code;
}
