#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "fracpow/fracsolve.hpp"
#include "fracpow/grid.hpp"
#include "fracpow/scalar.hpp"
#include "fracpow/solve.hpp"

namespace fracpow {

/// Reproducibility header attached to every report: the invoking
/// command, its effective parameters, the library version and a UTC
/// timestamp. Emitted as '#'-prefixed comment lines atop CSV output
/// (the timestamp on its own line, so outputs can be compared modulo
/// timestamps) and embeddable in JSON.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;
  std::string version;
  std::string timestamp;

  static RunManifest make(std::string command,
                          std::vector<std::pair<std::string, std::string>> params);

  std::string to_json_string(int indent = 2) const;
  static RunManifest from_json_string(const std::string& text);

  /// '#'-prefixed comment block, one "key=value" per line.
  std::string csv_comment_block() const;
};

/// Library version string (matches the CMake project version).
std::string library_version();

// ---- enum <-> string plumbing shared by CLI and reports ----

std::string to_string(Rule rule);              // "rect" / "simpson"
Rule parse_rule(const std::string& s);         // accepts rect|midpoint|simpson
std::string to_string(RhsKind k);              // "sgn" / "xy" / "bubble"
RhsKind parse_rhs(const std::string& s);
std::string to_string(SolveMethod m);          // "cg" / "fast"
SolveMethod parse_method(const std::string& s);
std::string repr_name(RepTag tag);             // "eq22" / "eq23" / ...
RepTag parse_repr(const std::string& s);       // accepts eq22|eq23

// ---- scalar error sweeps (tables 1-3 and custom runs) ----

struct ScalarTableRow {
  int M = 0;
  double kappa = 0.0;
  double alpha = 0.0;
  double max_error = 0.0;
  double argmax_x = 0.0;
};

struct ScalarSweepSpec {
  RepTag tag = RepTag::damped_scaled;  ///< damped_scaled or split_scaled
  Rule rule = Rule::midpoint;
  std::vector<int> Ms = {50, 100, 200};
  std::vector<double> kappas = {1, 2, 3, 4, 5, 6};
  std::vector<double> alphas = {0.1, 0.25, 0.5, 0.75, 0.9};
  ScanSpec scan{};
  int threads = 1;
};

/// Max-error scan per (M, kappa, alpha) cell; rows sorted by
/// (M, kappa, alpha). Cells are independent, so threads > 1 fans them
/// out; row order is unaffected.
std::vector<ScalarTableRow> run_scalar_sweep(const ScalarSweepSpec& spec);

// ---- operator error sweeps (tables 4-7 and custom runs) ----

struct OperatorTableRow {
  int M = 0;
  double kappa = 0.0;
  double alpha = 0.0;
  double eps = 0.0;      ///< relative discrete L2 error vs spectral reference
  double eps_inf = 0.0;  ///< relative max error
  double eps_q4 = 0.0;   ///< quartic-mean relative error (see quartic_error_ratio)
};

struct OperatorSweepSpec {
  RepTag tag = RepTag::damped_scaled;
  Rule rule = Rule::midpoint;
  double kappa = 3.0;
  RhsKind rhs = RhsKind::sgn;
  std::vector<int> Ms = {50, 100, 200};
  std::vector<double> alphas = {0.1, 0.25, 0.5, 0.75, 0.9};
  GridSpec grid{1.0, 1.0, 256, 256};
  SolveMethod method = SolveMethod::fast_diagonalization;
  int threads = 1;
};

std::vector<OperatorTableRow> run_operator_sweep(const OperatorSweepSpec& spec);

// ---- canned table configurations ----

/// The seven built-in error studies. 1-3 are scalar sweeps (damped
/// representation with the rectangle rule, split representation with the
/// rectangle rule, damped representation with Simpson's rule); 4-7 are
/// operator runs on the unit square. Throws ConfigError for other ids.
struct TablePreset {
  int id = 0;
  bool scalar = true;
  std::string title;
  ScalarSweepSpec scalar_spec{};
  OperatorSweepSpec operator_spec{};
};

TablePreset table_preset(int id, int grid_N = 256);

// ---- CSV / JSON writers ----

/// CSV with manifest comment block; columns
/// M,kappa,alpha,max_error,argmax_x; values printf %.6e.
void write_scalar_csv(std::ostream& os, const RunManifest& manifest,
                      const std::vector<ScalarTableRow>& rows);

/// CSV with manifest comment block; columns
/// M,kappa,alpha,eps,eps_inf,eps_q4; values printf %.6e.
void write_operator_csv(std::ostream& os, const RunManifest& manifest,
                        const std::vector<OperatorTableRow>& rows);

/// CSV with manifest comment block; columns x,error.
void write_curve_csv(std::ostream& os, const RunManifest& manifest,
                     const ErrorReport& report);

/// Everything a solve run reports, serialized to JSON (includes the
/// manifest under "manifest").
struct SolveReport {
  RunManifest manifest;
  double alpha = 0.5;
  Rule rule = Rule::midpoint;
  int M = 0;
  double kappa = 0.0;
  std::string repr;
  GridSpec grid{};
  RhsKind rhs = RhsKind::sgn;
  SolveMethod method = SolveMethod::fast_diagonalization;
  double delta = 1.0;
  int node_count = 0;
  long iterations = 0;
  double wall_time_seconds = 0.0;
  double eps = 0.0;
  double eps_inf = 0.0;
  double umax = 0.0;
};

std::string solve_report_json(const SolveReport& report);

}  // namespace fracpow
