#pragma once

#include <vector>

namespace fracpow {

/// Composite quadrature rule over the unit interval.
enum class Rule {
  midpoint,  ///< M interior midpoints, uniform weight 1/M
  simpson    ///< M+1 uniform nodes, M even; see quadrature_nodes() for weights
};

/// The three finite-interval integral representations of x^(-alpha).
///
/// All three write x^(-alpha), alpha in (0,1), as an integral over t in
/// (0,1) of a smooth density against the resolvent-type kernel
/// 1 / (gamma(t)*x + beta(t)), which is what makes them directly usable
/// for operator arguments: each quadrature node turns into one (or, for
/// the split family, two) shifted linear solves.
enum class RepFamily {
  damped,  ///< kernel gamma(t)*x + beta(t) with gamma = (1-t)^(sigma/(1-alpha))
  mirror,  ///< same family with the roles of the two exponents swapped
  split    ///< two-term kernel: 1/(1 + t^sigma x) and 1/(x + t^sigma)
};

/// Named parameter choices within the families.
enum class RepTag {
  damped_generic,  ///< damped family, caller-provided sigma
  damped_minimal,  ///< damped family at the smallest admissible sigma
  damped_scaled,   ///< damped family with sigma = kappa * minimal sigma
  mirror_generic,  ///< mirror family, caller-provided sigma
  mirror_minimal,  ///< mirror family at the smallest admissible sigma
  split_generic,   ///< split family, caller-provided sigma
  split_scaled     ///< split family with sigma = kappa * minimal sigma
};

/// Smallest sigma for which the family's density stays bounded on [0,1]:
/// (1-alpha)/alpha for damped, alpha/(1-alpha) for mirror,
/// max(1/alpha, 1/(1-alpha)) for split.
double sigma_minimum(RepFamily family, double alpha);

/// A fully specified integral representation: family + exponent parameters.
///
/// Construct through the factory functions, which validate
/// alpha in (0,1), sigma >= sigma_minimum, kappa >= 1 and record the
/// scaling factor kappa where applicable (kappa = sigma/sigma_minimum).
struct RepresentationSpec {
  RepTag tag = RepTag::damped_scaled;
  RepFamily family = RepFamily::damped;
  double alpha = 0.5;
  double sigma = 1.0;
  double kappa = 1.0;

  static RepresentationSpec damped_generic(double alpha, double sigma);
  static RepresentationSpec damped_minimal(double alpha);
  static RepresentationSpec damped_scaled(double alpha, double kappa);
  static RepresentationSpec mirror_generic(double alpha, double sigma);
  static RepresentationSpec mirror_minimal(double alpha);
  static RepresentationSpec split_generic(double alpha, double sigma);
  static RepresentationSpec split_scaled(double alpha, double kappa);
};

/// (1-t)^e computed as exp(e*log1p(-t)) so that large exponents at
/// t near 1 underflow cleanly instead of losing accuracy in (1-t).
/// Conventions: e == 0 returns 1 for all t in [0,1]; t == 1 returns 0
/// for e > 0.
double pow1m(double t, double e);

/// Integrand of the damped-kernel representation at abscissa t for
/// argument x >= 1. Accepts any spec from the damped family.
double integrand_damped(double t, double x, const RepresentationSpec& rep);

/// Damped family at the minimal sigma (simplified closed form).
double integrand_damped_minimal(double t, double x, double alpha);

/// Integrand of the mirror representation. Accepts any mirror-family spec.
double integrand_mirror(double t, double x, const RepresentationSpec& rep);

/// Mirror family at the minimal sigma (simplified closed form).
double integrand_mirror_minimal(double t, double x, double alpha);

/// Integrand of the two-term split representation.
double integrand_split(double t, double x, const RepresentationSpec& rep);

/// Dispatch on rep.family / rep.tag.
double integrand(double t, double x, const RepresentationSpec& rep);

/// Quadrature applied to one representation.
struct QuadratureSpec {
  RepresentationSpec rep;
  Rule rule = Rule::midpoint;
  int M = 100;  ///< number of panels; Simpson requires M even
};

/// Throws ConfigError for M < 1, or odd M with the Simpson rule.
void validate(const QuadratureSpec& q);

/// Abscissae and weights of the composite rule on [0,1].
struct QuadratureNodes {
  std::vector<double> t;
  std::vector<double> w;
};

/// Midpoint: t_i = (i+1/2)/M, w_i = 1/M (i = 0..M-1).
/// Simpson: t_i = i/M (i = 0..M) with composite weights
/// (1,4,2,...,2,4,1)*dt/3, except that the trailing node t = 1 carries
/// the plain panel width dt. The first node t = 0 never contributes for
/// the representations above (the density vanishes there), while the
/// t = 1 convention is observable whenever the density is nonzero at 1
/// (kappa = 1) and is part of this library's fixed numerical contract.
QuadratureNodes quadrature_nodes(Rule rule, int M);

/// Composite-quadrature approximation of x^(-alpha) for x >= 1,
/// accumulated in ascending node order.
double approx_frac_power(double x, const QuadratureSpec& q);

/// Log-uniform sampling of an argument interval [x_min, x_max].
struct ScanSpec {
  double x_min = 1.0;
  double x_max = 1e20;
  int samples_per_decade = 100;
};

/// Sample points x_j = x_min * 10^(j/samples_per_decade); both endpoints
/// are always included (the final point is pinned to x_max exactly).
std::vector<double> scan_points(const ScanSpec& scan);

/// Pointwise absolute error |approx - x^(-alpha)| over a scan.
struct ErrorReport {
  double max_error = 0.0;
  double argmax_x = 0.0;
  std::vector<double> x;      ///< sample points
  std::vector<double> error;  ///< absolute error at each sample point
};

ErrorReport error_scan(const QuadratureSpec& q, const ScanSpec& scan);

}  // namespace fracpow
