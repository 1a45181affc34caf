#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "fracpow/grid.hpp"

namespace fracpow {

/// Scalar coefficient field on the rectangle, evaluable at arbitrary
/// points (the stencil needs half-grid points). Constant coefficients
/// are detected so that spectral methods can be used.
class Coefficient {
 public:
  Coefficient() : constant_(true), value_(1.0) {}

  static Coefficient constant(double v) {
    Coefficient c;
    c.constant_ = true;
    c.value_ = v;
    return c;
  }

  static Coefficient field(std::function<double(double, double)> f) {
    Coefficient c;
    c.constant_ = false;
    c.f_ = std::move(f);
    return c;
  }

  double operator()(double x1, double x2) const {
    return constant_ ? value_ : f_(x1, x2);
  }

  bool is_constant() const { return constant_; }
  double constant_value() const { return value_; }

 private:
  bool constant_ = true;
  double value_ = 1.0;
  std::function<double(double, double)> f_;
};

/// Coefficients of the operator
///   (A u)(x) = -div(a(x) grad u)(x) + c(x) u(x),  u = 0 on the boundary,
/// with a(x) >= a_min > 0 and c(x) >= 0.
struct EllipticCoeffs {
  Coefficient a = Coefficient::constant(1.0);
  Coefficient c = Coefficient::constant(0.0);

  bool constant() const { return a.is_constant() && c.is_constant(); }
};

/// Second-order five-point discretization of the elliptic operator on a
/// GridSpec. The diffusion coefficient is sampled at half-grid points
/// (x1 +- h1/2, x2) and (x1, x2 +- h2/2), which keeps the stencil
/// symmetric, and c at the nodes. All sampled values are precomputed at
/// construction; a handle is immutable afterwards and safe to share
/// across threads.
class OperatorHandle {
 public:
  OperatorHandle(const GridSpec& grid, const EllipticCoeffs& coeffs);

  const GridSpec& grid() const { return grid_; }
  const EllipticCoeffs& coeffs() const { return coeffs_; }
  bool constant_coefficients() const { return coeffs_.constant(); }

  /// Smallest diffusion / reaction samples seen by the stencil
  /// (equal to the constants when the coefficients are constant).
  double a_min() const { return a_min_; }
  double c_min() const { return c_min_; }

  // Precomputed stencil coefficient arrays in GridFunction storage
  // order; west/east are a at (x1 -+ h1/2, x2), south/north are a at
  // (x1, x2 -+ h2/2), c_node is c at the node itself.
  const std::vector<double>& a_west() const { return a_west_; }
  const std::vector<double>& a_east() const { return a_east_; }
  const std::vector<double>& a_south() const { return a_south_; }
  const std::vector<double>& a_north() const { return a_north_; }
  const std::vector<double>& c_node() const { return c_node_; }

 private:
  GridSpec grid_{};
  EllipticCoeffs coeffs_{};
  std::vector<double> a_west_, a_east_, a_south_, a_north_, c_node_;
  double a_min_ = 0.0;
  double c_min_ = 0.0;
};

/// Matrix-free application of the five-point stencil to the interior
/// values of u (boundary values are zero by the Dirichlet condition).
GridFunction apply(const OperatorHandle& op, const GridFunction& u);

/// Smallest eigenvalue of the discrete operator, or a certified lower
/// bound for it.
struct MinEigenEstimate {
  double value = 0.0;
  bool exact = false;  ///< true when computed from the closed form
};

/// Constant coefficients: the exact closed form
///   a * (4/h1^2 sin^2(pi h1/(2 l1)) + 4/h2^2 sin^2(pi h2/(2 l2))) + c.
/// Variable coefficients: the certified lower bound
///   a_min * mu_1(Laplacian) + c_min,
/// where a_min/c_min run over the sample points used by the stencil.
MinEigenEstimate min_eigenvalue(const OperatorHandle& op);

/// Rescaled operator A~ = A/delta with delta = min_eigenvalue(op).value,
/// so that the smallest eigenvalue of A~ is >= 1 and x^(-alpha) may be
/// applied on [1, inf). Returns the new handle and delta.
std::pair<OperatorHandle, double> normalize(const OperatorHandle& op);

}  // namespace fracpow
