#include "fracpow/solve.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "fracpow/dst.hpp"
#include "fracpow/errors.hpp"

namespace fracpow {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

void check_system(const ShiftedSystem& sys, const GridFunction& r) {
  if (sys.op == nullptr) {
    throw ConfigError("shifted system has no operator");
  }
  if (!(r.grid() == sys.op->grid())) {
    throw ConfigError("solve(): right-hand side grid mismatch");
  }
  if (!(sys.gamma >= 0.0) || !(sys.beta >= 0.0) ||
      !(sys.gamma + sys.beta > 0.0)) {
    throw DomainError("shift coefficients must satisfy gamma, beta >= 0 and "
                      "gamma + beta > 0");
  }
}

bool is_zero(const GridFunction& r) {
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r.data()[i] != 0.0) return false;
  }
  return true;
}

SolveOutput solve_cg(const ShiftedSystem& sys, const GridFunction& b,
                     const SolveConfig& cfg) {
  const std::size_t K = b.size();
  const int max_iter = cfg.max_iter > 0 ? cfg.max_iter : default_max_iter(K);
  if (!(cfg.rel_tol > 0.0)) {
    throw ConfigError("rel_tol must be positive");
  }

  SolveOutput out;
  out.w = GridFunction(b.grid());

  std::vector<double> x(K, 0.0);
  std::vector<double> r = b.values();
  std::vector<double> p = r;
  GridFunction pg(b.grid());

  double rs = dot(r, r);
  const double bnorm = std::sqrt(rs);
  const double target = cfg.rel_tol * bnorm;
  if (rs == 0.0) return out;

  for (int k = 1; k <= max_iter; ++k) {
    pg.values() = p;
    GridFunction apg = apply(*sys.op, pg);
    double* ap = apg.data();
    for (std::size_t i = 0; i < K; ++i) {
      ap[i] = sys.gamma * ap[i] + sys.beta * p[i];
    }
    const double pap = dot(p, apg.values());
    if (!(pap > 0.0)) {
      throw ConvergenceError("CG breakdown: operator is not positive "
                             "definite on the search direction");
    }
    const double step = rs / pap;
    for (std::size_t i = 0; i < K; ++i) {
      x[i] += step * p[i];
      r[i] -= step * ap[i];
    }
    const double rs_next = dot(r, r);
    if (std::sqrt(rs_next) <= target) {
      out.w = GridFunction(b.grid(), std::move(x));
      out.iterations = k;
      return out;
    }
    const double ratio = rs_next / rs;
    rs = rs_next;
    for (std::size_t i = 0; i < K; ++i) p[i] = r[i] + ratio * p[i];
  }
  throw ConvergenceError(
      "CG did not reach rel_tol = " + std::to_string(cfg.rel_tol) + " in " +
      std::to_string(max_iter) + " iterations (relative residual " +
      std::to_string(std::sqrt(rs) / bnorm) + ")");
}

}  // namespace

int default_max_iter(std::size_t K) {
  return 10 * static_cast<int>(std::ceil(std::sqrt(static_cast<double>(K))));
}

SolveOutput solve_fast(const ShiftedSystem& sys, const GridFunction& r,
                       const SineTransform2D& st) {
  check_system(sys, r);
  const OperatorHandle& op = *sys.op;
  if (!op.constant_coefficients()) {
    throw ConfigError(
        "fast diagonalization requires constant coefficients; use CG");
  }
  const GridSpec& g = op.grid();
  if (st.N1() != g.N1 || st.N2() != g.N2) {
    throw ConfigError("solve_fast(): transform size mismatch");
  }

  SolveOutput out;
  out.w = GridFunction(g);
  if (is_zero(r)) return out;

  const double a = op.coeffs().a.constant_value();
  const double c = op.coeffs().c.constant_value();
  const std::vector<double> lam1 = laplace_eigenvalues_1d(g.l1, g.N1);
  const std::vector<double> lam2 = laplace_eigenvalues_1d(g.l2, g.N2);

  std::vector<double> rhat(r.size());
  st.forward(r.data(), rhat.data());
  std::size_t k = 0;
  for (int k2 = 0; k2 < g.n2(); ++k2) {
    for (int k1 = 0; k1 < g.n1(); ++k1, ++k) {
      const double mu = a * (lam1[k1] + lam2[k2]) + c;
      const double denom = sys.gamma * mu + sys.beta;
      if (!(denom > 0.0)) {
        throw DomainError("shifted spectrum is not positive");
      }
      rhat[k] /= denom;
    }
  }
  st.inverse(rhat.data(), out.w.data());
  return out;
}

SolveOutput solve(const ShiftedSystem& sys, const GridFunction& r,
                  const SolveConfig& cfg) {
  check_system(sys, r);
  if (cfg.method == SolveMethod::fast_diagonalization) {
    SineTransform2D st(sys.op->grid());
    return solve_fast(sys, r, st);
  }
  if (is_zero(r)) {
    SolveOutput out;
    out.w = GridFunction(r.grid());
    return out;
  }
  return solve_cg(sys, r, cfg);
}

}  // namespace fracpow
