#pragma once

#include <vector>

#include "fracpow/elliptic.hpp"
#include "fracpow/grid.hpp"
#include "fracpow/scalar.hpp"
#include "fracpow/solve.hpp"

namespace fracpow {

/// One shifted solve contributed by a quadrature node: the term
/// weight * (gamma*A~ + beta*I)^(-1) b. `weight` already folds the
/// quadrature weight into the representation's density and prefactor.
struct PlanNode {
  double t = 0.0;
  double weight = 0.0;
  double gamma = 0.0;
  double beta = 0.0;
};

/// A quadrature rule compiled against a representation: the list of
/// shifted solves whose weighted sum approximates A^(-alpha) b. The
/// damped and mirror families contribute one node per abscissa, the
/// split family two (its kernel is a sum of two resolvent terms).
/// Zero-weight abscissae (where the density vanishes) are dropped.
struct OperatorQuadraturePlan {
  RepresentationSpec rep;
  Rule rule = Rule::midpoint;
  int M = 0;
  std::vector<PlanNode> nodes;

  /// Scalar evaluation sum_i w_i / (gamma_i*x + beta_i) in ascending
  /// node order; agrees with approx_frac_power for the same spec.
  double scalar_apply(double x) const;
};

OperatorQuadraturePlan build_plan(const QuadratureSpec& q);

/// Convenience overload for the damped family with sigma scaling kappa.
OperatorQuadraturePlan build_plan(double alpha, Rule rule, int M,
                                  double kappa);

/// How the operator is rescaled before x^(-alpha) is applied. The
/// integral representations require spectrum(A~) in [1, inf), so A is
/// replaced by A~ = A/delta with a suitable delta <= lambda_min(A).
enum class DeltaPolicy {
  auto_scale,      ///< delta = 1 if the certified bound is already >= 1,
                   ///< otherwise delta = that bound
  min_eigenvalue,  ///< always delta = min_eigenvalue(op).value
  fixed            ///< caller-provided delta (must satisfy
                   ///< 0 < delta <= lambda_min(A))
};

struct FracSolveConfig {
  SolveConfig solver;
  DeltaPolicy delta_policy = DeltaPolicy::auto_scale;
  double fixed_delta = 1.0;
};

struct FracSolveResult {
  GridFunction u;
  double delta = 1.0;               ///< normalization actually used
  int node_count = 0;               ///< shifted solves performed
  long total_solver_iterations = 0; ///< summed CG iterations (0 for fast)
  double wall_time_seconds = 0.0;
};

/// Evaluates u = A^(-alpha) b as
///   u = delta^(-alpha) * sum_i weight_i * (gamma_i*A~ + beta_i*I)^(-1) b
/// with A~ = A/delta, accumulating contributions in ascending node
/// order. With the fast-diagonalization method the accumulation happens
/// in the (shared) eigenbasis with a single final back-transform, which
/// is the same linear combination evaluated spectrally. CG solves are
/// independent and may be dispatched on cfg.solver.threads workers;
/// accumulation order stays ascending regardless, so results are
/// deterministic for a fixed configuration.
FracSolveResult frac_apply_inverse(const OperatorHandle& op,
                                   const GridFunction& b,
                                   const OperatorQuadraturePlan& plan,
                                   const FracSolveConfig& cfg = {});

/// Quadrature-free reference for u = A^(-alpha) b. Constant
/// coefficients: exact diagonalization by the sine transform. Variable
/// coefficients: dense symmetric eigendecomposition, allowed for
/// K <= 10000 unknowns (throws ConfigError beyond). Accepts any
/// alpha > 0; alpha = 1 is the plain inverse.
GridFunction spectral_reference(const OperatorHandle& op,
                                const GridFunction& b, double alpha);

/// Built-in right-hand sides used by the error studies (defined on the
/// unit square but sampled on any rectangle):
///   sgn:    sign(x1 - 1/2) * sign(x2 - 1/2), with sign(0) = 0
///   xy:     x1 * x2
///   bubble: x1 (1-x1) x2 (1-x2)
enum class RhsKind { sgn, xy, bubble };

GridFunction rhs_library(RhsKind kind, const GridSpec& grid);

/// Relative discrete errors of w against a reference u:
///   eps     = ||w - u||_2  / ||u||_2   (h1*h2-weighted norm)
///   eps_inf = ||w - u||_inf / ||u||_inf
/// Throws DomainError if u is identically zero.
struct ErrorNorms {
  double eps = 0.0;
  double eps_inf = 0.0;
};

ErrorNorms error_norms(const GridFunction& w, const GridFunction& u);

/// Quartic-mean relative error (sum e^4 / sum u^4)^(1/4); an
/// outlier-weighted companion to eps that is insensitive to the exact
/// placement of sign changes of the spectral error.
double quartic_error_ratio(const GridFunction& w, const GridFunction& u);

/// u scaled by its max-abs value, for plotting level sets.
struct NormalizedSolution {
  GridFunction y;
  double umax = 0.0;
};

NormalizedSolution normalized_solution(const GridFunction& u);

}  // namespace fracpow
