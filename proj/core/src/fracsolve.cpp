#include "fracpow/fracsolve.hpp"

#include <chrono>
#include <cmath>
#include <future>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fracpow/dst.hpp"
#include "fracpow/errors.hpp"

namespace fracpow {

namespace {

constexpr std::size_t kDenseLimit = 10000;

struct NodeTerms {
  double weight = 0.0;
  double gamma = 0.0;
  double beta = 0.0;
};

void push_node(std::vector<PlanNode>& nodes, double t, const NodeTerms& n) {
  if (n.weight == 0.0 || !std::isfinite(n.weight)) return;
  nodes.push_back(PlanNode{t, n.weight, n.gamma, n.beta});
}

double delta_for(const OperatorHandle& op, const FracSolveConfig& cfg) {
  switch (cfg.delta_policy) {
    case DeltaPolicy::auto_scale: {
      const double bound = min_eigenvalue(op).value;
      return bound >= 1.0 ? 1.0 : bound;
    }
    case DeltaPolicy::min_eigenvalue:
      return min_eigenvalue(op).value;
    case DeltaPolicy::fixed:
      if (!(cfg.fixed_delta > 0.0)) {
        throw ConfigError("fixed delta must be positive");
      }
      return cfg.fixed_delta;
  }
  throw ConfigError("unknown delta policy");
}

FracSolveResult frac_apply_fast(const OperatorHandle& op,
                                const GridFunction& b,
                                const OperatorQuadraturePlan& plan,
                                double delta, double scale) {
  const GridSpec& g = op.grid();
  const double a = op.coeffs().a.constant_value();
  const double c = op.coeffs().c.constant_value();
  const std::vector<double> lam1 = laplace_eigenvalues_1d(g.l1, g.N1);
  const std::vector<double> lam2 = laplace_eigenvalues_1d(g.l2, g.N2);

  SineTransform2D st(g);
  std::vector<double> bhat(b.size());
  st.forward(b.data(), bhat.data());

  // Accumulate the node sum per eigencoefficient, ascending node order.
  std::vector<double> uhat(b.size(), 0.0);
  for (const PlanNode& node : plan.nodes) {
    const double g_eff = node.gamma / delta;
    std::size_t k = 0;
    for (int k2 = 0; k2 < g.n2(); ++k2) {
      for (int k1 = 0; k1 < g.n1(); ++k1, ++k) {
        const double mu = a * (lam1[k1] + lam2[k2]) + c;
        uhat[k] += node.weight * bhat[k] / (g_eff * mu + node.beta);
      }
    }
  }
  for (std::size_t k = 0; k < uhat.size(); ++k) uhat[k] *= scale;

  FracSolveResult res;
  res.u = GridFunction(g);
  st.inverse(uhat.data(), res.u.data());
  res.delta = delta;
  res.node_count = static_cast<int>(plan.nodes.size());
  res.total_solver_iterations = 0;
  return res;
}

FracSolveResult frac_apply_cg(const OperatorHandle& op, const GridFunction& b,
                              const OperatorQuadraturePlan& plan, double delta,
                              double scale, const FracSolveConfig& cfg) {
  FracSolveResult res;
  res.u = GridFunction(op.grid());
  res.delta = delta;
  res.node_count = static_cast<int>(plan.nodes.size());

  SolveConfig node_cfg = cfg.solver;
  node_cfg.method = SolveMethod::cg;

  const int threads = std::max(1, cfg.solver.threads);
  const std::size_t n = plan.nodes.size();

  auto solve_node = [&](std::size_t i) {
    const PlanNode& node = plan.nodes[i];
    return solve(ShiftedSystem{&op, node.gamma / delta, node.beta}, b,
                 node_cfg);
  };

  double* acc = res.u.data();
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) {
      SolveOutput so = solve_node(i);
      res.total_solver_iterations += so.iterations;
      const double w = plan.nodes[i].weight;
      for (std::size_t k = 0; k < res.u.size(); ++k) {
        acc[k] += w * so.w.data()[k];
      }
    }
  } else {
    // Solve blocks of nodes concurrently, but always accumulate in
    // ascending node order so results do not depend on thread count.
    for (std::size_t base = 0; base < n;
         base += static_cast<std::size_t>(threads)) {
      const std::size_t end =
          std::min(n, base + static_cast<std::size_t>(threads));
      std::vector<std::future<SolveOutput>> block;
      block.reserve(end - base);
      for (std::size_t i = base; i < end; ++i) {
        block.push_back(
            std::async(std::launch::async, solve_node, i));
      }
      for (std::size_t i = base; i < end; ++i) {
        SolveOutput so = block[i - base].get();
        res.total_solver_iterations += so.iterations;
        const double w = plan.nodes[i].weight;
        for (std::size_t k = 0; k < res.u.size(); ++k) {
          acc[k] += w * so.w.data()[k];
        }
      }
    }
  }
  for (std::size_t k = 0; k < res.u.size(); ++k) acc[k] *= scale;
  return res;
}

}  // namespace

double OperatorQuadraturePlan::scalar_apply(double x) const {
  double acc = 0.0;
  for (const PlanNode& node : nodes) {
    acc += node.weight / (node.gamma * x + node.beta);
  }
  return acc;
}

OperatorQuadraturePlan build_plan(const QuadratureSpec& q) {
  validate(q);
  const RepresentationSpec& rep = q.rep;
  const double a = rep.alpha;
  const double s = rep.sigma;
  const double pi = std::numbers::pi;

  OperatorQuadraturePlan plan;
  plan.rep = rep;
  plan.rule = q.rule;
  plan.M = q.M;

  const QuadratureNodes nodes = quadrature_nodes(q.rule, q.M);
  for (std::size_t i = 0; i < nodes.t.size(); ++i) {
    const double t = nodes.t[i];
    const double w = nodes.w[i];
    switch (rep.family) {
      case RepFamily::damped: {
        const double pref = std::sin(pi * a) / ((1.0 - a) * pi);
        NodeTerms n;
        n.weight = w * pref * pow1m(t, s * a / (1.0 - a) - 1.0) *
                   (1.0 + (s - 1.0) * t);
        n.gamma = pow1m(t, s / (1.0 - a));
        n.beta = std::pow(t, 1.0 / (1.0 - a));
        push_node(plan.nodes, t, n);
        break;
      }
      case RepFamily::mirror: {
        const double pref = std::sin(pi * a) / (a * pi);
        NodeTerms n;
        n.weight = w * pref * pow1m(t, s * (1.0 - a) / a - 1.0) *
                   (1.0 + (s - 1.0) * t);
        n.gamma = std::pow(t, 1.0 / a);
        n.beta = pow1m(t, s / a);
        push_node(plan.nodes, t, n);
        break;
      }
      case RepFamily::split: {
        const double pref = s * std::sin(pi * a) / pi;
        const double ts = std::pow(t, s);
        NodeTerms head;
        head.weight = w * pref * (t == 0.0 && s * a - 1.0 == 0.0
                                      ? 1.0
                                      : std::pow(t, s * a - 1.0));
        head.gamma = ts;
        head.beta = 1.0;
        push_node(plan.nodes, t, head);
        NodeTerms tail;
        tail.weight = w * pref * (t == 0.0 && s * (1.0 - a) - 1.0 == 0.0
                                      ? 1.0
                                      : std::pow(t, s * (1.0 - a) - 1.0));
        tail.gamma = 1.0;
        tail.beta = ts;
        push_node(plan.nodes, t, tail);
        break;
      }
    }
  }
  return plan;
}

OperatorQuadraturePlan build_plan(double alpha, Rule rule, int M,
                                  double kappa) {
  QuadratureSpec q;
  q.rep = RepresentationSpec::damped_scaled(alpha, kappa);
  q.rule = rule;
  q.M = M;
  return build_plan(q);
}

FracSolveResult frac_apply_inverse(const OperatorHandle& op,
                                   const GridFunction& b,
                                   const OperatorQuadraturePlan& plan,
                                   const FracSolveConfig& cfg) {
  if (!(b.grid() == op.grid())) {
    throw ConfigError("frac_apply_inverse(): right-hand side grid mismatch");
  }
  if (plan.nodes.empty()) {
    throw ConfigError("frac_apply_inverse(): empty quadrature plan");
  }
  const auto t0 = std::chrono::steady_clock::now();

  const double delta = delta_for(op, cfg);
  const double scale = std::pow(delta, -plan.rep.alpha);

  FracSolveResult res;
  if (cfg.solver.method == SolveMethod::fast_diagonalization) {
    if (!op.constant_coefficients()) {
      throw ConfigError(
          "fast diagonalization requires constant coefficients; use CG");
    }
    res = frac_apply_fast(op, b, plan, delta, scale);
  } else {
    res = frac_apply_cg(op, b, plan, delta, scale, cfg);
  }

  res.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return res;
}

GridFunction spectral_reference(const OperatorHandle& op,
                                const GridFunction& b, double alpha) {
  if (!(b.grid() == op.grid())) {
    throw ConfigError("spectral_reference(): grid mismatch");
  }
  if (!(alpha > 0.0)) {
    throw DomainError("spectral_reference needs alpha > 0");
  }
  const GridSpec& g = op.grid();

  if (op.constant_coefficients()) {
    const double a = op.coeffs().a.constant_value();
    const double c = op.coeffs().c.constant_value();
    const std::vector<double> lam1 = laplace_eigenvalues_1d(g.l1, g.N1);
    const std::vector<double> lam2 = laplace_eigenvalues_1d(g.l2, g.N2);
    SineTransform2D st(g);
    std::vector<double> bhat(b.size());
    st.forward(b.data(), bhat.data());
    std::size_t k = 0;
    for (int k2 = 0; k2 < g.n2(); ++k2) {
      for (int k1 = 0; k1 < g.n1(); ++k1, ++k) {
        const double mu = a * (lam1[k1] + lam2[k2]) + c;
        if (!(mu > 0.0)) throw DomainError("operator spectrum not positive");
        bhat[k] *= std::pow(mu, -alpha);
      }
    }
    GridFunction u(g);
    st.inverse(bhat.data(), u.data());
    return u;
  }

  const std::size_t K = g.size();
  if (K > kDenseLimit) {
    throw ConfigError(
        "spectral_reference for variable coefficients is limited to " +
        std::to_string(kDenseLimit) + " unknowns, got " + std::to_string(K));
  }

  // Assemble the dense symmetric matrix from the stencil arrays.
  const int n1 = g.n1();
  const int n2 = g.n2();
  const double ih1 = 1.0 / (g.h1() * g.h1());
  const double ih2 = 1.0 / (g.h2() * g.h2());
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(K, K);
  std::size_t k = 0;
  for (int i2 = 1; i2 <= n2; ++i2) {
    for (int i1 = 1; i1 <= n1; ++i1, ++k) {
      A(k, k) = ih1 * (op.a_west()[k] + op.a_east()[k]) +
                ih2 * (op.a_south()[k] + op.a_north()[k]) + op.c_node()[k];
      if (i1 > 1) A(k, k - 1) = -ih1 * op.a_west()[k];
      if (i1 < n1) A(k, k + 1) = -ih1 * op.a_east()[k];
      if (i2 > 1) A(k, k - n1) = -ih2 * op.a_south()[k];
      if (i2 < n2) A(k, k + n1) = -ih2 * op.a_north()[k];
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(A);
  if (eig.info() != Eigen::Success) {
    throw ConvergenceError("dense eigendecomposition failed");
  }
  Eigen::Map<const Eigen::VectorXd> bv(b.data(), K);
  Eigen::VectorXd coeffs = eig.eigenvectors().transpose() * bv;
  for (std::size_t i = 0; i < K; ++i) {
    const double mu = eig.eigenvalues()(static_cast<Eigen::Index>(i));
    if (!(mu > 0.0)) throw DomainError("operator spectrum not positive");
    coeffs(static_cast<Eigen::Index>(i)) *= std::pow(mu, -alpha);
  }
  Eigen::VectorXd uv = eig.eigenvectors() * coeffs;
  GridFunction u(g);
  Eigen::Map<Eigen::VectorXd>(u.data(), K) = uv;
  return u;
}

GridFunction rhs_library(RhsKind kind, const GridSpec& grid) {
  switch (kind) {
    case RhsKind::sgn:
      return GridFunction::sample(grid, [](double x1, double x2) {
        const auto side = [](double v) {  // sign(v - 1/2), sign(0) = 0
          return v > 0.5 ? 1.0 : (v < 0.5 ? -1.0 : 0.0);
        };
        return side(x1) * side(x2);
      });
    case RhsKind::xy:
      return GridFunction::sample(
          grid, [](double x1, double x2) { return x1 * x2; });
    case RhsKind::bubble:
      return GridFunction::sample(grid, [](double x1, double x2) {
        return x1 * (1.0 - x1) * x2 * (1.0 - x2);
      });
  }
  throw ConfigError("unknown right-hand side kind");
}

ErrorNorms error_norms(const GridFunction& w, const GridFunction& u) {
  if (!(w.grid() == u.grid())) {
    throw ConfigError("error_norms(): grid mismatch");
  }
  double diff2 = 0.0, ref2 = 0.0, diff_inf = 0.0, ref_inf = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double d = w.data()[i] - u.data()[i];
    diff2 += d * d;
    ref2 += u.data()[i] * u.data()[i];
    diff_inf = std::max(diff_inf, std::abs(d));
    ref_inf = std::max(ref_inf, std::abs(u.data()[i]));
  }
  if (ref2 == 0.0 || ref_inf == 0.0) {
    throw DomainError("error_norms(): reference solution is identically zero");
  }
  // The h1*h2 weights of the discrete L2 norm cancel in the ratio.
  return ErrorNorms{std::sqrt(diff2 / ref2), diff_inf / ref_inf};
}

double quartic_error_ratio(const GridFunction& w, const GridFunction& u) {
  if (!(w.grid() == u.grid())) {
    throw ConfigError("quartic_error_ratio(): grid mismatch");
  }
  double diff4 = 0.0, ref4 = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double d = w.data()[i] - u.data()[i];
    diff4 += d * d * d * d;
    const double r = u.data()[i];
    ref4 += r * r * r * r;
  }
  if (ref4 == 0.0) {
    throw DomainError(
        "quartic_error_ratio(): reference solution is identically zero");
  }
  return std::pow(diff4 / ref4, 0.25);
}

NormalizedSolution normalized_solution(const GridFunction& u) {
  NormalizedSolution out;
  out.umax = norm_inf(u);
  if (out.umax == 0.0) {
    throw DomainError("normalized_solution(): zero field");
  }
  out.y = GridFunction(u.grid(), u.values());
  for (std::size_t i = 0; i < out.y.size(); ++i) out.y.data()[i] /= out.umax;
  return out;
}

}  // namespace fracpow
