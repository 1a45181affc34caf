#include "fracpow/reporting.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <ctime>
#include <functional>
#include <mutex>
#include <ostream>
#include <thread>

#include <nlohmann/json.hpp>

#include "fracpow/errors.hpp"

#ifndef FRACPOW_VERSION
#define FRACPOW_VERSION "0.0.0"
#endif

namespace fracpow {

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string fmt6e(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

std::string fmtg(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// Runs fn(i) for i in [0,n) on up to `threads` workers. Used for
// embarrassingly parallel sweep cells; the caller writes results into
// pre-sized slots, so output order is deterministic.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& fn) {
  threads = std::min<int>(std::max(1, threads), static_cast<int>(n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex error_mutex;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

nlohmann::json manifest_json(const RunManifest& m) {
  nlohmann::json j;
  j["command"] = m.command;
  j["version"] = m.version;
  j["timestamp"] = m.timestamp;
  nlohmann::json params = nlohmann::json::array();
  for (const auto& [k, v] : m.params) {
    params.push_back(nlohmann::json::array({k, v}));
  }
  j["params"] = params;
  return j;
}

nlohmann::json grid_json(const GridSpec& g) {
  return nlohmann::json{{"l1", g.l1}, {"l2", g.l2}, {"N1", g.N1},
                        {"N2", g.N2}};
}

}  // namespace

std::string library_version() { return FRACPOW_VERSION; }

RunManifest RunManifest::make(
    std::string command,
    std::vector<std::pair<std::string, std::string>> params) {
  RunManifest m;
  m.command = std::move(command);
  m.params = std::move(params);
  m.version = library_version();
  m.timestamp = utc_timestamp();
  return m;
}

std::string RunManifest::to_json_string(int indent) const {
  return manifest_json(*this).dump(indent);
}

RunManifest RunManifest::from_json_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.version = j.at("version").get<std::string>();
    m.timestamp = j.at("timestamp").get<std::string>();
    for (const auto& kv : j.at("params")) {
      m.params.emplace_back(kv.at(0).get<std::string>(),
                            kv.at(1).get<std::string>());
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("bad manifest JSON: ") + e.what());
  }
}

std::string RunManifest::csv_comment_block() const {
  std::string out;
  out += "# command=" + command + "\n";
  out += "# version=" + version + "\n";
  for (const auto& [k, v] : params) {
    out += "# " + k + "=" + v + "\n";
  }
  // Timestamp stays on its own line so outputs can be compared while
  // ignoring it.
  out += "# timestamp=" + timestamp + "\n";
  return out;
}

std::string to_string(Rule rule) {
  return rule == Rule::midpoint ? "rect" : "simpson";
}

Rule parse_rule(const std::string& s) {
  if (s == "rect" || s == "midpoint") return Rule::midpoint;
  if (s == "simpson") return Rule::simpson;
  throw ConfigError("unknown rule '" + s + "' (expected rect or simpson)");
}

std::string to_string(RhsKind k) {
  switch (k) {
    case RhsKind::sgn:
      return "sgn";
    case RhsKind::xy:
      return "xy";
    case RhsKind::bubble:
      return "bubble";
  }
  return "?";
}

RhsKind parse_rhs(const std::string& s) {
  if (s == "sgn") return RhsKind::sgn;
  if (s == "xy") return RhsKind::xy;
  if (s == "bubble") return RhsKind::bubble;
  throw ConfigError("unknown rhs '" + s + "' (expected sgn, xy or bubble)");
}

std::string to_string(SolveMethod m) {
  return m == SolveMethod::cg ? "cg" : "fast";
}

SolveMethod parse_method(const std::string& s) {
  if (s == "cg") return SolveMethod::cg;
  if (s == "fast" || s == "fast_diagonalization")
    return SolveMethod::fast_diagonalization;
  throw ConfigError("unknown method '" + s + "' (expected cg or fast)");
}

std::string repr_name(RepTag tag) {
  switch (tag) {
    case RepTag::damped_generic:
      return "damped-generic";
    case RepTag::damped_minimal:
      return "damped-minimal";
    case RepTag::damped_scaled:
      return "eq22";
    case RepTag::mirror_generic:
      return "mirror-generic";
    case RepTag::mirror_minimal:
      return "mirror-minimal";
    case RepTag::split_generic:
      return "split-generic";
    case RepTag::split_scaled:
      return "eq23";
  }
  return "?";
}

RepTag parse_repr(const std::string& s) {
  if (s == "eq22") return RepTag::damped_scaled;
  if (s == "eq23") return RepTag::split_scaled;
  throw ConfigError("unknown representation '" + s +
                    "' (expected eq22 or eq23)");
}

std::vector<ScalarTableRow> run_scalar_sweep(const ScalarSweepSpec& spec) {
  if (spec.tag != RepTag::damped_scaled && spec.tag != RepTag::split_scaled) {
    throw ConfigError("scalar sweeps take the kappa-scaled representations");
  }
  auto Ms = spec.Ms;
  auto kappas = spec.kappas;
  auto alphas = spec.alphas;
  std::sort(Ms.begin(), Ms.end());
  std::sort(kappas.begin(), kappas.end());
  std::sort(alphas.begin(), alphas.end());

  std::vector<ScalarTableRow> rows;
  for (int M : Ms) {
    for (double kappa : kappas) {
      for (double alpha : alphas) {
        rows.push_back(ScalarTableRow{M, kappa, alpha, 0.0, 0.0});
      }
    }
  }

  parallel_for(rows.size(), spec.threads, [&](std::size_t i) {
    ScalarTableRow& row = rows[i];
    QuadratureSpec q;
    q.rep = spec.tag == RepTag::damped_scaled
                ? RepresentationSpec::damped_scaled(row.alpha, row.kappa)
                : RepresentationSpec::split_scaled(row.alpha, row.kappa);
    q.rule = spec.rule;
    q.M = row.M;
    const ErrorReport report = error_scan(q, spec.scan);
    row.max_error = report.max_error;
    row.argmax_x = report.argmax_x;
  });
  return rows;
}

std::vector<OperatorTableRow> run_operator_sweep(const OperatorSweepSpec& spec) {
  if (spec.tag != RepTag::damped_scaled && spec.tag != RepTag::split_scaled) {
    throw ConfigError("operator sweeps take the kappa-scaled representations");
  }
  auto Ms = spec.Ms;
  auto alphas = spec.alphas;
  std::sort(Ms.begin(), Ms.end());
  std::sort(alphas.begin(), alphas.end());

  const EllipticCoeffs laplace{Coefficient::constant(1.0),
                               Coefficient::constant(0.0)};
  const OperatorHandle op(spec.grid, laplace);
  const GridFunction b = rhs_library(spec.rhs, spec.grid);

  // One spectral reference per alpha, shared across M.
  std::vector<GridFunction> refs(alphas.size());
  parallel_for(alphas.size(), spec.threads, [&](std::size_t i) {
    refs[i] = spectral_reference(op, b, alphas[i]);
  });

  std::vector<OperatorTableRow> rows;
  std::vector<std::size_t> ref_of;
  for (int M : Ms) {
    for (std::size_t ia = 0; ia < alphas.size(); ++ia) {
      rows.push_back(
          OperatorTableRow{M, spec.kappa, alphas[ia], 0.0, 0.0, 0.0});
      ref_of.push_back(ia);
    }
  }

  parallel_for(rows.size(), spec.threads, [&](std::size_t i) {
    OperatorTableRow& row = rows[i];
    QuadratureSpec q;
    q.rep = spec.tag == RepTag::damped_scaled
                ? RepresentationSpec::damped_scaled(row.alpha, row.kappa)
                : RepresentationSpec::split_scaled(row.alpha, row.kappa);
    q.rule = spec.rule;
    q.M = row.M;
    FracSolveConfig cfg;
    cfg.solver.method = spec.method;
    FracSolveResult result = frac_apply_inverse(op, b, build_plan(q), cfg);
    const GridFunction& ref = refs[ref_of[i]];
    const ErrorNorms norms = error_norms(result.u, ref);
    row.eps = norms.eps;
    row.eps_inf = norms.eps_inf;
    row.eps_q4 = quartic_error_ratio(result.u, ref);
  });
  return rows;
}

TablePreset table_preset(int id, int grid_N) {
  TablePreset p;
  p.id = id;
  switch (id) {
    case 1:
      p.scalar = true;
      p.title = "scalar max error, damped representation, rectangle rule";
      p.scalar_spec.tag = RepTag::damped_scaled;
      p.scalar_spec.rule = Rule::midpoint;
      return p;
    case 2:
      p.scalar = true;
      p.title = "scalar max error, split representation, rectangle rule";
      p.scalar_spec.tag = RepTag::split_scaled;
      p.scalar_spec.rule = Rule::midpoint;
      return p;
    case 3:
      p.scalar = true;
      p.title = "scalar max error, damped representation, Simpson's rule";
      p.scalar_spec.tag = RepTag::damped_scaled;
      p.scalar_spec.rule = Rule::simpson;
      return p;
    case 4:
      p.scalar = false;
      p.title = "solution error, rectangle rule, discontinuous rhs";
      p.operator_spec.rule = Rule::midpoint;
      p.operator_spec.kappa = 3.0;
      p.operator_spec.rhs = RhsKind::sgn;
      break;
    case 5:
      p.scalar = false;
      p.title = "solution error, Simpson's rule, discontinuous rhs";
      p.operator_spec.rule = Rule::simpson;
      p.operator_spec.kappa = 5.0;
      p.operator_spec.rhs = RhsKind::sgn;
      break;
    case 6:
      p.scalar = false;
      p.title = "solution error, Simpson's rule, bilinear rhs";
      p.operator_spec.rule = Rule::simpson;
      p.operator_spec.kappa = 5.0;
      p.operator_spec.rhs = RhsKind::xy;
      break;
    case 7:
      p.scalar = false;
      p.title = "solution error, Simpson's rule, bubble rhs";
      p.operator_spec.rule = Rule::simpson;
      p.operator_spec.kappa = 5.0;
      p.operator_spec.rhs = RhsKind::bubble;
      break;
    default:
      throw ConfigError("table id must be 1..7, got " + std::to_string(id));
  }
  p.operator_spec.grid = GridSpec{1.0, 1.0, grid_N, grid_N};
  return p;
}

void write_scalar_csv(std::ostream& os, const RunManifest& manifest,
                      const std::vector<ScalarTableRow>& rows) {
  os << manifest.csv_comment_block();
  os << "M,kappa,alpha,max_error,argmax_x\n";
  for (const auto& r : rows) {
    os << r.M << ',' << fmtg(r.kappa) << ',' << fmtg(r.alpha) << ','
       << fmt6e(r.max_error) << ',' << fmt6e(r.argmax_x) << '\n';
  }
}

void write_operator_csv(std::ostream& os, const RunManifest& manifest,
                        const std::vector<OperatorTableRow>& rows) {
  os << manifest.csv_comment_block();
  os << "M,kappa,alpha,eps,eps_inf,eps_q4\n";
  for (const auto& r : rows) {
    os << r.M << ',' << fmtg(r.kappa) << ',' << fmtg(r.alpha) << ','
       << fmt6e(r.eps) << ',' << fmt6e(r.eps_inf) << ','
       << fmt6e(r.eps_q4) << '\n';
  }
}

void write_curve_csv(std::ostream& os, const RunManifest& manifest,
                     const ErrorReport& report) {
  os << manifest.csv_comment_block();
  os << "x,error\n";
  for (std::size_t i = 0; i < report.x.size(); ++i) {
    os << fmt6e(report.x[i]) << ',' << fmt6e(report.error[i]) << '\n';
  }
}

std::string solve_report_json(const SolveReport& report) {
  nlohmann::json j;
  j["manifest"] = manifest_json(report.manifest);
  j["alpha"] = report.alpha;
  j["rule"] = to_string(report.rule);
  j["M"] = report.M;
  j["kappa"] = report.kappa;
  j["repr"] = report.repr;
  j["grid"] = grid_json(report.grid);
  j["rhs"] = to_string(report.rhs);
  j["method"] = to_string(report.method);
  j["delta"] = report.delta;
  j["node_count"] = report.node_count;
  j["iterations"] = report.iterations;
  j["wall_time_seconds"] = report.wall_time_seconds;
  j["eps"] = report.eps;
  j["eps_inf"] = report.eps_inf;
  j["umax"] = report.umax;
  return j.dump(2);
}

}  // namespace fracpow
