// fracpow: quadrature-based solvers for fractional powers of elliptic
// operators. Subcommands:
//   scalar-error  max |R_M(x) - x^(-alpha)| over a log-uniform scan
//   scalar-curve  per-sample error curve for one configuration
//   solve         u = A^(-alpha) f on the unit square (five-point Laplacian)
//   table         one of the built-in error studies (ids 1..7)

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracpow/errors.hpp"
#include "fracpow/fracsolve.hpp"
#include "fracpow/grid.hpp"
#include "fracpow/reporting.hpp"
#include "fracpow/scalar.hpp"
#include "fracpow/solve.hpp"

namespace {

using namespace fracpow;

std::string fmtg(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string join_doubles(const std::vector<double>& vs) {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ",";
    out += fmtg(vs[i]);
  }
  return out;
}

std::string join_ints(const std::vector<int>& vs) {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(vs[i]);
  }
  return out;
}

// Writes to the path, or stdout for "-".
void emit(const std::string& out_path,
          const std::function<void(std::ostream&)>& writer) {
  if (out_path.empty() || out_path == "-") {
    writer(std::cout);
    return;
  }
  std::ofstream os(out_path, std::ios::trunc);
  if (!os) throw IoError("cannot open " + out_path + " for write");
  writer(os);
  if (!os) throw IoError("write failed: " + out_path);
}

double default_kappa(Rule rule) {
  return rule == Rule::midpoint ? 3.0 : 5.0;
}

struct ScalarArgs {
  std::vector<double> alphas;
  std::vector<int> Ms;
  std::vector<double> kappas;
  std::string rule = "rect";
  std::string repr = "eq22";
  double xmax = 1e20;
  int samples_per_decade = 100;
  std::string out = "-";
  int threads = 1;
};

void add_scalar_flags(CLI::App* cmd, ScalarArgs& args) {
  cmd->add_option("--alpha", args.alphas, "fractional power(s) in (0,1)");
  cmd->add_option("--M", args.Ms, "quadrature panel count(s)");
  cmd->add_option("--kappa", args.kappas,
                  "sigma scaling factor(s), >= 1 (default 3 for rect, 5 for "
                  "simpson)");
  cmd->add_option("--rule", args.rule, "quadrature rule: rect | simpson")
      ->check(CLI::IsMember({"rect", "midpoint", "simpson"}));
  cmd->add_option("--repr", args.repr, "integral representation: eq22 | eq23")
      ->check(CLI::IsMember({"eq22", "eq23"}));
  cmd->add_option("--xmax", args.xmax, "upper end of the argument scan");
  cmd->add_option("--samples-per-decade", args.samples_per_decade,
                  "scan resolution");
  cmd->add_option("--out", args.out, "output CSV path ('-' for stdout)");
  cmd->add_option("--threads", args.threads, "worker threads");
}

int run_scalar_error(const ScalarArgs& args) {
  ScalarSweepSpec spec;
  spec.tag = parse_repr(args.repr);
  spec.rule = parse_rule(args.rule);
  if (!args.Ms.empty()) spec.Ms = args.Ms;
  if (!args.alphas.empty()) spec.alphas = args.alphas;
  if (!args.kappas.empty())
    spec.kappas = args.kappas;
  else
    spec.kappas = {default_kappa(spec.rule)};
  spec.scan.x_max = args.xmax;
  spec.scan.samples_per_decade = args.samples_per_decade;
  spec.threads = args.threads;

  auto rows = run_scalar_sweep(spec);
  RunManifest manifest = RunManifest::make(
      "scalar-error",
      {{"repr", args.repr},
       {"rule", to_string(spec.rule)},
       {"alpha", join_doubles(spec.alphas)},
       {"M", join_ints(spec.Ms)},
       {"kappa", join_doubles(spec.kappas)},
       {"xmax", fmtg(spec.scan.x_max)},
       {"samples_per_decade", std::to_string(spec.scan.samples_per_decade)}});
  emit(args.out,
       [&](std::ostream& os) { write_scalar_csv(os, manifest, rows); });
  return 0;
}

int run_scalar_curve(const ScalarArgs& args) {
  if (args.alphas.size() != 1 || args.Ms.size() > 1 ||
      args.kappas.size() > 1) {
    throw ConfigError(
        "scalar-curve takes exactly one --alpha and at most one --M/--kappa");
  }
  QuadratureSpec q;
  q.rule = parse_rule(args.rule);
  q.M = args.Ms.empty() ? 100 : args.Ms.front();
  const double kappa =
      args.kappas.empty() ? default_kappa(q.rule) : args.kappas.front();
  q.rep = parse_repr(args.repr) == RepTag::damped_scaled
              ? RepresentationSpec::damped_scaled(args.alphas.front(), kappa)
              : RepresentationSpec::split_scaled(args.alphas.front(), kappa);

  ScanSpec scan;
  scan.x_max = args.xmax;
  scan.samples_per_decade = args.samples_per_decade;
  const ErrorReport report = error_scan(q, scan);

  RunManifest manifest = RunManifest::make(
      "scalar-curve",
      {{"repr", args.repr},
       {"rule", to_string(q.rule)},
       {"alpha", fmtg(q.rep.alpha)},
       {"M", std::to_string(q.M)},
       {"kappa", fmtg(kappa)},
       {"xmax", fmtg(scan.x_max)},
       {"samples_per_decade", std::to_string(scan.samples_per_decade)}});
  emit(args.out,
       [&](std::ostream& os) { write_curve_csv(os, manifest, report); });
  return 0;
}

struct SolveArgs {
  double alpha = 0.5;
  int M = 100;
  double kappa = 0.0;  // 0 -> rule default
  std::string rule = "rect";
  std::string repr = "eq22";
  int grid = 256;
  std::string rhs = "sgn";
  std::string method = "fast";
  std::string format = "csv";
  std::string out;
  int threads = 1;
};

int run_solve(const SolveArgs& args) {
  const Rule rule = parse_rule(args.rule);
  const double kappa = args.kappa > 0.0 ? args.kappa : default_kappa(rule);
  const RepTag tag = parse_repr(args.repr);

  QuadratureSpec q;
  q.rule = rule;
  q.M = args.M;
  q.rep = tag == RepTag::damped_scaled
              ? RepresentationSpec::damped_scaled(args.alpha, kappa)
              : RepresentationSpec::split_scaled(args.alpha, kappa);

  GridSpec grid{1.0, 1.0, args.grid, args.grid};
  const EllipticCoeffs laplace{Coefficient::constant(1.0),
                               Coefficient::constant(0.0)};
  const OperatorHandle op(grid, laplace);
  const GridFunction b = rhs_library(parse_rhs(args.rhs), grid);

  FracSolveConfig cfg;
  cfg.solver.method = parse_method(args.method);
  cfg.solver.threads = args.threads;
  const FracSolveResult result = frac_apply_inverse(op, b, build_plan(q), cfg);

  const GridFunction ref = spectral_reference(op, b, args.alpha);
  const ErrorNorms norms = error_norms(result.u, ref);
  const NormalizedSolution normalized = normalized_solution(result.u);

  SolveReport report;
  report.manifest = RunManifest::make(
      "solve", {{"repr", args.repr},
                {"rule", to_string(rule)},
                {"alpha", fmtg(args.alpha)},
                {"M", std::to_string(args.M)},
                {"kappa", fmtg(kappa)},
                {"grid", std::to_string(args.grid)},
                {"rhs", args.rhs},
                {"method", args.method}});
  report.alpha = args.alpha;
  report.rule = rule;
  report.M = args.M;
  report.kappa = kappa;
  report.repr = args.repr;
  report.grid = grid;
  report.rhs = parse_rhs(args.rhs);
  report.method = cfg.solver.method;
  report.delta = result.delta;
  report.node_count = result.node_count;
  report.iterations = result.total_solver_iterations;
  report.wall_time_seconds = result.wall_time_seconds;
  report.eps = norms.eps;
  report.eps_inf = norms.eps_inf;
  report.umax = normalized.umax;

  const std::string metrics = solve_report_json(report);
  if (args.out.empty() || args.out == "-") {
    std::cout << metrics << "\n";
    return 0;
  }
  const DumpFormat format =
      args.format == "bin" ? DumpFormat::binary : DumpFormat::csv;
  const std::string ext = args.format == "bin" ? ".bin" : ".csv";
  save(result.u, args.out + "_u" + ext, format);
  save(normalized.y, args.out + "_y" + ext, format);
  {
    std::ofstream os(args.out + "_metrics.json", std::ios::trunc);
    if (!os) throw IoError("cannot open " + args.out + "_metrics.json");
    os << metrics << "\n";
  }
  std::cout << metrics << "\n";
  return 0;
}

struct TableArgs {
  int id = 0;
  std::string out = "-";
  int grid = 256;
  int threads = 1;
};

int run_table(const TableArgs& args) {
  TablePreset preset = table_preset(args.id, args.grid);
  RunManifest manifest =
      RunManifest::make("table", {{"id", std::to_string(args.id)},
                                  {"title", preset.title},
                                  {"grid", std::to_string(args.grid)}});
  if (preset.scalar) {
    preset.scalar_spec.threads = args.threads;
    auto rows = run_scalar_sweep(preset.scalar_spec);
    emit(args.out,
         [&](std::ostream& os) { write_scalar_csv(os, manifest, rows); });
  } else {
    preset.operator_spec.threads = args.threads;
    auto rows = run_operator_sweep(preset.operator_spec);
    emit(args.out,
         [&](std::ostream& os) { write_operator_csv(os, manifest, rows); });
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quadrature approximation of fractional powers of elliptic "
               "operators"};
  app.require_subcommand(1);

  ScalarArgs scalar_error_args;
  CLI::App* scalar_error =
      app.add_subcommand("scalar-error",
                         "max |R_M(x) - x^(-alpha)| over a log-uniform scan");
  add_scalar_flags(scalar_error, scalar_error_args);

  ScalarArgs scalar_curve_args;
  CLI::App* scalar_curve = app.add_subcommand(
      "scalar-curve", "per-sample error curve for one configuration");
  add_scalar_flags(scalar_curve, scalar_curve_args);

  SolveArgs solve_args;
  CLI::App* solve_cmd = app.add_subcommand(
      "solve", "u = A^(-alpha) f on the unit square, five-point Laplacian");
  solve_cmd->add_option("--alpha", solve_args.alpha,
                        "fractional power in (0,1)");
  solve_cmd->add_option("--M", solve_args.M, "quadrature panel count");
  solve_cmd->add_option("--kappa", solve_args.kappa,
                        "sigma scaling factor (default 3 rect / 5 simpson)");
  solve_cmd->add_option("--rule", solve_args.rule, "rect | simpson")
      ->check(CLI::IsMember({"rect", "midpoint", "simpson"}));
  solve_cmd->add_option("--repr", solve_args.repr, "eq22 | eq23")
      ->check(CLI::IsMember({"eq22", "eq23"}));
  solve_cmd->add_option("--grid", solve_args.grid, "panels per dimension");
  solve_cmd->add_option("--rhs", solve_args.rhs, "sgn | xy | bubble")
      ->check(CLI::IsMember({"sgn", "xy", "bubble"}));
  solve_cmd->add_option("--method", solve_args.method, "cg | fast")
      ->check(CLI::IsMember({"cg", "fast"}));
  solve_cmd->add_option("--format", solve_args.format,
                        "field dump format: csv | bin")
      ->check(CLI::IsMember({"csv", "bin"}));
  solve_cmd->add_option(
      "--out", solve_args.out,
      "output prefix; writes <out>_u, <out>_y and <out>_metrics.json");
  solve_cmd->add_option("--threads", solve_args.threads, "worker threads");

  TableArgs table_args;
  CLI::App* table_cmd =
      app.add_subcommand("table", "run one of the built-in error studies");
  table_cmd->add_option("--id", table_args.id, "table id, 1..7")->required();
  table_cmd->add_option("--out", table_args.out,
                        "output CSV path ('-' for stdout)");
  table_cmd->add_option("--grid", table_args.grid,
                        "panels per dimension (operator tables)");
  table_cmd->add_option("--threads", table_args.threads, "worker threads");

  CLI11_PARSE(app, argc, argv);

  try {
    if (scalar_error->parsed()) return run_scalar_error(scalar_error_args);
    if (scalar_curve->parsed()) return run_scalar_curve(scalar_curve_args);
    if (solve_cmd->parsed()) return run_solve(solve_args);
    if (table_cmd->parsed()) return run_table(table_args);
  } catch (const fracpow::Error& e) {
    std::cerr << "fracpow: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
