#pragma once

#include "fracpow/elliptic.hpp"
#include "fracpow/grid.hpp"

namespace fracpow {

class SineTransform2D;

/// Linear solver backend for shifted systems (gamma*A + beta*I) w = r.
enum class SolveMethod {
  cg,                  ///< matrix-free conjugate gradients, any coefficients
  fast_diagonalization ///< sine-transform diagonalization, constant
                       ///< coefficients on a rectangle only
};

struct SolveConfig {
  SolveMethod method = SolveMethod::cg;
  double rel_tol = 1e-12;  ///< stop when ||r_k|| <= rel_tol * ||b||
  int max_iter = 0;        ///< 0 -> 10 * ceil(sqrt(K)) iterations
  int threads = 1;         ///< worker threads for multi-solve drivers
};

/// One member of the family (gamma*A + beta*I) w = r. Requires
/// gamma >= 0, beta >= 0, gamma + beta > 0; with A symmetric positive
/// definite every member is SPD, so CG applies.
struct ShiftedSystem {
  const OperatorHandle* op = nullptr;
  double gamma = 1.0;
  double beta = 0.0;
};

struct SolveOutput {
  GridFunction w;
  int iterations = 0;  ///< CG iterations; 0 for the direct fast path
};

/// Solves one shifted system. CG starts from zero and stops on the
/// relative residual; it throws ConvergenceError if max_iter is
/// exhausted. The fast path requires constant coefficients and throws
/// ConfigError otherwise. A zero right-hand side short-circuits to the
/// zero solution.
SolveOutput solve(const ShiftedSystem& sys, const GridFunction& r,
                  const SolveConfig& cfg);

/// Fast-diagonalization solve reusing a caller-owned transform (avoids
/// re-planning when solving many shifts on one grid).
SolveOutput solve_fast(const ShiftedSystem& sys, const GridFunction& r,
                       const SineTransform2D& st);

/// Effective iteration cap for a grid with K unknowns.
int default_max_iter(std::size_t K);

}  // namespace fracpow
