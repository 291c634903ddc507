#include <CLI11.hpp>
#include <fmt/format.h>

#include <iostream>

#include "commands.hpp"

using namespace octodpw::cli;

int main(int argc, char** argv) {
  CLI::App app{"Octonionic DPW surfaces: algebra checks, frame classification, surface generation and analysis"};
  app.require_subcommand(1);
  app.footer(
      "Exit codes: 0 success, 1 a check failed, 2 invalid input (including NotIsotropic), "
      "3 FactorizationDiverged or StepSizeTooCoarse, 4 OffBigCell beyond the allowed fraction.\n"
      "OCTO_DPW_THREADS caps the worker count.");

  RunConfig cfg;
  std::string grid, lambdas, project, seed_text;
  double tol = 0;
  const auto add_common = [&](CLI::App* sub, bool with_input) {
    if (with_input) sub->add_option("--input", cfg.input, "Input file")->check(CLI::ExistingFile);
    sub->add_option("--out", cfg.out, "Output directory")->capture_default_str();
    sub->add_option("--tol", tol, "Tolerance override");
  };
  const auto add_spec_overrides = [&](CLI::App* sub) {
    sub->add_option("--grid", grid, "Grid size NUxNV");
    sub->add_option("--truncation", cfg.truncation, "Loop truncation N");
    sub->add_option("--lambda", lambdas, "Lambda samples: 1,i,-1,-i, a+bi, or @deg for e^{i deg}");
    sub->add_option("--seed", cfg.seed, "Seed (kept for reproducible runs)");
    sub->add_option("--max-toeplitz", cfg.max_toeplitz, "Largest Iwasawa Toeplitz order")->capture_default_str();
  };

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify-algebra", "Run the algebra and geometry identity suites");
  verify_cmd->add_option("--seed", cfg.seed, "Sampler seed")->capture_default_str();
  verify_cmd->add_option("--count", verify.count, "Samples per identity")->capture_default_str();
  verify_cmd->add_flag("--inject-fault", verify.inject_fault, "Flip the sign of e1*e2 in the product table");
  verify_cmd->add_option("--tol", tol, "Tolerance override");

  std::vector<double> frame;
  auto* classify_cmd = app.add_subcommand("classify", "Classify the plane of a frame (q, q') given as 16 reals");
  classify_cmd->add_option("values", frame, "x0..x7 of q then of q'")->expected(16)->required();
  classify_cmd->add_option("--tol", tol, "Isotropy tolerance");

  DpwOptions dpw;
  auto* dpw_cmd = app.add_subcommand("dpw", "Generate a surface from a holomorphic potential");
  add_common(dpw_cmd, true);
  add_spec_overrides(dpw_cmd);
  dpw_cmd->add_option("--project", project, "Coordinate triple for OBJ export")->default_str("0,1,4");
  dpw_cmd->add_flag("--birkhoff", dpw.birkhoff, "Also Birkhoff-split every point");
  dpw_cmd->add_option("--max-off-big-cell", dpw.max_off_big_cell, "Allowed OffBigCell fraction")->capture_default_str();

  auto* analyze_cmd = app.add_subcommand("analyze", "Diagnostics of a surface CSV (u,v,X0..X7)");
  add_common(analyze_cmd, true);

  RoundTripOptions rt;
  auto* rt_cmd = app.add_subcommand("roundtrip", "dpw, Birkhoff, meromorphic potential, re-integration");
  add_common(rt_cmd, true);
  add_spec_overrides(rt_cmd);
  rt_cmd->add_option("--max-off-big-cell", rt.max_off_big_cell, "Allowed OffBigCell fraction")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    for (auto* sub : {verify_cmd, classify_cmd, dpw_cmd, analyze_cmd, rt_cmd})
      if (sub->get_option_no_throw("--tol") && sub->count("--tol")) cfg.tol = tol;
    if (!grid.empty()) cfg.grid = parse_grid(grid);
    if (!lambdas.empty()) cfg.lambdas = parse_lambdas(lambdas);
    if (!project.empty()) cfg.project = parse_projection(project);
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kInvalidInput;
  }

  if (*verify_cmd) return cmd_verify_algebra(cfg, verify, std::cout, std::cerr);
  if (*classify_cmd) return cmd_classify(frame, cfg, std::cout, std::cerr);
  if (*dpw_cmd) return cmd_dpw(cfg, dpw, std::cout, std::cerr);
  if (*analyze_cmd) return cmd_analyze(cfg, std::cout, std::cerr);
  return cmd_roundtrip(cfg, rt, std::cout, std::cerr);
}
