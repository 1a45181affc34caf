#include "fracpow/elliptic.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fracpow/dst.hpp"
#include "fracpow/errors.hpp"

namespace fracpow {

OperatorHandle::OperatorHandle(const GridSpec& grid,
                               const EllipticCoeffs& coeffs)
    : grid_(grid), coeffs_(coeffs) {
  validate(grid_);
  const std::size_t K = grid_.size();
  a_west_.resize(K);
  a_east_.resize(K);
  a_south_.resize(K);
  a_north_.resize(K);
  c_node_.resize(K);

  const double h1 = grid_.h1();
  const double h2 = grid_.h2();
  a_min_ = std::numeric_limits<double>::infinity();
  c_min_ = std::numeric_limits<double>::infinity();

  std::size_t k = 0;
  for (int i2 = 1; i2 <= grid_.n2(); ++i2) {
    const double x2 = grid_.x2(i2);
    for (int i1 = 1; i1 <= grid_.n1(); ++i1, ++k) {
      const double x1 = grid_.x1(i1);
      a_west_[k] = coeffs_.a(x1 - 0.5 * h1, x2);
      a_east_[k] = coeffs_.a(x1 + 0.5 * h1, x2);
      a_south_[k] = coeffs_.a(x1, x2 - 0.5 * h2);
      a_north_[k] = coeffs_.a(x1, x2 + 0.5 * h2);
      c_node_[k] = coeffs_.c(x1, x2);
      a_min_ = std::min({a_min_, a_west_[k], a_east_[k], a_south_[k],
                         a_north_[k]});
      c_min_ = std::min(c_min_, c_node_[k]);
    }
  }
  if (!(a_min_ > 0.0)) {
    throw DomainError("diffusion coefficient must be positive, sampled min " +
                      std::to_string(a_min_));
  }
  if (!(c_min_ >= 0.0)) {
    throw DomainError("reaction coefficient must be nonnegative, sampled min " +
                      std::to_string(c_min_));
  }
}

GridFunction apply(const OperatorHandle& op, const GridFunction& u) {
  if (!(u.grid() == op.grid())) {
    throw ConfigError("apply(): grid mismatch");
  }
  const GridSpec& g = op.grid();
  const int n1 = g.n1();
  const int n2 = g.n2();
  const double ih1 = 1.0 / (g.h1() * g.h1());
  const double ih2 = 1.0 / (g.h2() * g.h2());

  GridFunction out(g);
  const double* v = u.data();
  double* r = out.data();
  const double* aw = op.a_west().data();
  const double* ae = op.a_east().data();
  const double* as = op.a_south().data();
  const double* an = op.a_north().data();
  const double* cc = op.c_node().data();

  std::size_t k = 0;
  for (int i2 = 1; i2 <= n2; ++i2) {
    for (int i1 = 1; i1 <= n1; ++i1, ++k) {
      const double uc = v[k];
      const double uw = (i1 > 1) ? v[k - 1] : 0.0;
      const double ue = (i1 < n1) ? v[k + 1] : 0.0;
      const double us = (i2 > 1) ? v[k - n1] : 0.0;
      const double un = (i2 < n2) ? v[k + n1] : 0.0;
      r[k] = ih1 * (aw[k] * (uc - uw) + ae[k] * (uc - ue)) +
             ih2 * (as[k] * (uc - us) + an[k] * (uc - un)) + cc[k] * uc;
    }
  }
  return out;
}

MinEigenEstimate min_eigenvalue(const OperatorHandle& op) {
  const GridSpec& g = op.grid();
  const double h1 = g.h1();
  const double h2 = g.h2();
  const double s1 = std::sin(std::numbers::pi * h1 / (2.0 * g.l1));
  const double s2 = std::sin(std::numbers::pi * h2 / (2.0 * g.l2));
  const double mu_laplace =
      4.0 / (h1 * h1) * s1 * s1 + 4.0 / (h2 * h2) * s2 * s2;

  MinEigenEstimate est;
  if (op.constant_coefficients()) {
    est.value = op.coeffs().a.constant_value() * mu_laplace +
                op.coeffs().c.constant_value();
    est.exact = true;
  } else {
    est.value = op.a_min() * mu_laplace + op.c_min();
    est.exact = false;
  }
  return est;
}

std::pair<OperatorHandle, double> normalize(const OperatorHandle& op) {
  const double delta = min_eigenvalue(op).value;
  if (!(delta > 0.0)) {
    throw DomainError("operator lower bound is not positive");
  }

  EllipticCoeffs scaled;
  if (op.coeffs().a.is_constant()) {
    scaled.a = Coefficient::constant(op.coeffs().a.constant_value() / delta);
  } else {
    scaled.a = Coefficient::field(
        [a = op.coeffs().a, delta](double x1, double x2) {
          return a(x1, x2) / delta;
        });
  }
  if (op.coeffs().c.is_constant()) {
    scaled.c = Coefficient::constant(op.coeffs().c.constant_value() / delta);
  } else {
    scaled.c = Coefficient::field(
        [c = op.coeffs().c, delta](double x1, double x2) {
          return c(x1, x2) / delta;
        });
  }
  return {OperatorHandle(op.grid(), scaled), delta};
}

}  // namespace fracpow
