#include "fracpow/scalar.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fracpow/errors.hpp"

namespace fracpow {

namespace {

constexpr double kPi = std::numbers::pi;

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("alpha must lie strictly inside (0,1), got " +
                      std::to_string(alpha));
  }
}

RepresentationSpec make_spec(RepTag tag, RepFamily family, double alpha,
                             double sigma) {
  check_alpha(alpha);
  const double smin = sigma_minimum(family, alpha);
  // Tolerate roundoff in caller-side computation of the threshold itself.
  if (!(sigma >= smin * (1.0 - 1e-12))) {
    throw DomainError("sigma = " + std::to_string(sigma) +
                      " is below the admissible minimum " +
                      std::to_string(smin) + " for this representation");
  }
  RepresentationSpec rep;
  rep.tag = tag;
  rep.family = family;
  rep.alpha = alpha;
  rep.sigma = sigma;
  rep.kappa = sigma / smin;
  return rep;
}

void check_family(const RepresentationSpec& rep, RepFamily family,
                  const char* fn) {
  if (rep.family != family) {
    throw ConfigError(std::string(fn) +
                      ": representation spec belongs to a different family");
  }
}

// t^e with the continuity convention t == 0, e == 0 -> 1 (the limit the
// split-family density attains when sigma sits exactly on its threshold).
double powt(double t, double e) {
  if (e == 0.0) return 1.0;
  return std::pow(t, e);
}

}  // namespace

double sigma_minimum(RepFamily family, double alpha) {
  check_alpha(alpha);
  switch (family) {
    case RepFamily::damped:
      return (1.0 - alpha) / alpha;
    case RepFamily::mirror:
      return alpha / (1.0 - alpha);
    case RepFamily::split:
      return std::max(1.0 / alpha, 1.0 / (1.0 - alpha));
  }
  throw ConfigError("unknown representation family");
}

RepresentationSpec RepresentationSpec::damped_generic(double alpha,
                                                      double sigma) {
  return make_spec(RepTag::damped_generic, RepFamily::damped, alpha, sigma);
}

RepresentationSpec RepresentationSpec::damped_minimal(double alpha) {
  check_alpha(alpha);
  return make_spec(RepTag::damped_minimal, RepFamily::damped, alpha,
                   sigma_minimum(RepFamily::damped, alpha));
}

RepresentationSpec RepresentationSpec::damped_scaled(double alpha,
                                                     double kappa) {
  check_alpha(alpha);
  if (!(kappa >= 1.0)) {
    throw DomainError("kappa must be >= 1, got " + std::to_string(kappa));
  }
  auto rep = make_spec(RepTag::damped_scaled, RepFamily::damped, alpha,
                       kappa * sigma_minimum(RepFamily::damped, alpha));
  rep.kappa = kappa;
  return rep;
}

RepresentationSpec RepresentationSpec::mirror_generic(double alpha,
                                                      double sigma) {
  return make_spec(RepTag::mirror_generic, RepFamily::mirror, alpha, sigma);
}

RepresentationSpec RepresentationSpec::mirror_minimal(double alpha) {
  check_alpha(alpha);
  return make_spec(RepTag::mirror_minimal, RepFamily::mirror, alpha,
                   sigma_minimum(RepFamily::mirror, alpha));
}

RepresentationSpec RepresentationSpec::split_generic(double alpha,
                                                     double sigma) {
  return make_spec(RepTag::split_generic, RepFamily::split, alpha, sigma);
}

RepresentationSpec RepresentationSpec::split_scaled(double alpha,
                                                    double kappa) {
  check_alpha(alpha);
  if (!(kappa >= 1.0)) {
    throw DomainError("kappa must be >= 1, got " + std::to_string(kappa));
  }
  auto rep = make_spec(RepTag::split_scaled, RepFamily::split, alpha,
                       kappa * sigma_minimum(RepFamily::split, alpha));
  rep.kappa = kappa;
  return rep;
}

double pow1m(double t, double e) {
  if (e == 0.0) return 1.0;
  if (t == 1.0) return std::pow(0.0, e);
  return std::exp(e * std::log1p(-t));
}

double integrand_damped(double t, double x, const RepresentationSpec& rep) {
  check_family(rep, RepFamily::damped, "integrand_damped");
  const double a = rep.alpha;
  const double s = rep.sigma;
  const double pref = std::sin(kPi * a) / ((1.0 - a) * kPi);
  const double num = pow1m(t, s * a / (1.0 - a) - 1.0) * (1.0 + (s - 1.0) * t);
  const double den = pow1m(t, s / (1.0 - a)) * x + std::pow(t, 1.0 / (1.0 - a));
  return pref * num / den;
}

double integrand_damped_minimal(double t, double x, double alpha) {
  check_alpha(alpha);
  const double a = alpha;
  const double pref = std::sin(kPi * a) / (a * (1.0 - a) * kPi);
  const double num = a + (1.0 - 2.0 * a) * t;
  const double den = pow1m(t, 1.0 / a) * x + std::pow(t, 1.0 / (1.0 - a));
  return pref * num / den;
}

double integrand_mirror(double t, double x, const RepresentationSpec& rep) {
  check_family(rep, RepFamily::mirror, "integrand_mirror");
  const double a = rep.alpha;
  const double s = rep.sigma;
  const double pref = std::sin(kPi * a) / (a * kPi);
  const double num = pow1m(t, s * (1.0 - a) / a - 1.0) * (1.0 + (s - 1.0) * t);
  const double den = pow1m(t, s / a) + std::pow(t, 1.0 / a) * x;
  return pref * num / den;
}

double integrand_mirror_minimal(double t, double x, double alpha) {
  check_alpha(alpha);
  const double a = alpha;
  const double pref = std::sin(kPi * a) / (a * (1.0 - a) * kPi);
  const double num = (1.0 - a) + (2.0 * a - 1.0) * t;
  const double den = pow1m(t, 1.0 / (1.0 - a)) + std::pow(t, 1.0 / a) * x;
  return pref * num / den;
}

double integrand_split(double t, double x, const RepresentationSpec& rep) {
  check_family(rep, RepFamily::split, "integrand_split");
  const double a = rep.alpha;
  const double s = rep.sigma;
  const double pref = s * std::sin(kPi * a) / kPi;
  const double head = powt(t, s * a - 1.0) / (1.0 + powt(t, s) * x);
  const double tail = powt(t, s * (1.0 - a) - 1.0) / (x + powt(t, s));
  return pref * (head + tail);
}

double integrand(double t, double x, const RepresentationSpec& rep) {
  switch (rep.family) {
    case RepFamily::damped:
      return integrand_damped(t, x, rep);
    case RepFamily::mirror:
      return integrand_mirror(t, x, rep);
    case RepFamily::split:
      return integrand_split(t, x, rep);
  }
  throw ConfigError("unknown representation family");
}

void validate(const QuadratureSpec& q) {
  if (q.M < 1) {
    throw ConfigError("quadrature needs at least one panel, got M = " +
                      std::to_string(q.M));
  }
  if (q.rule == Rule::simpson && (q.M % 2 != 0)) {
    throw ConfigError("Simpson's rule needs an even panel count, got M = " +
                      std::to_string(q.M));
  }
}

QuadratureNodes quadrature_nodes(Rule rule, int M) {
  QuadratureSpec probe;
  probe.rule = rule;
  probe.M = M;
  validate(probe);

  QuadratureNodes n;
  const double dt = 1.0 / M;
  if (rule == Rule::midpoint) {
    n.t.resize(M);
    n.w.resize(M);
    for (int i = 0; i < M; ++i) {
      n.t[i] = (i + 0.5) * dt;
      n.w[i] = dt;
    }
  } else {
    n.t.resize(M + 1);
    n.w.resize(M + 1);
    for (int i = 0; i <= M; ++i) {
      n.t[i] = i * dt;
      n.w[i] = (i == 0) ? dt / 3.0 : (i % 2 == 1 ? 4.0 : 2.0) * dt / 3.0;
    }
    // Fixed contract: the trailing node carries the plain panel width
    // rather than the textbook dt/3 (observable only when the density
    // is nonzero at t = 1, i.e. at the minimal sigma).
    n.w[M] = dt;
  }
  return n;
}

double approx_frac_power(double x, const QuadratureSpec& q) {
  validate(q);
  if (!(x >= 1.0)) {
    throw DomainError(
        "approx_frac_power expects x >= 1 (normalize the argument first), "
        "got x = " +
        std::to_string(x));
  }
  const QuadratureNodes n = quadrature_nodes(q.rule, q.M);
  double acc = 0.0;
  for (std::size_t i = 0; i < n.t.size(); ++i) {
    acc += n.w[i] * integrand(n.t[i], x, q.rep);
  }
  return acc;
}

std::vector<double> scan_points(const ScanSpec& scan) {
  if (!(scan.x_min > 0.0) || !(scan.x_max > scan.x_min)) {
    throw ConfigError("scan interval must satisfy 0 < x_min < x_max");
  }
  if (scan.samples_per_decade < 1) {
    throw ConfigError("samples_per_decade must be >= 1");
  }
  const double decades = std::log10(scan.x_max / scan.x_min);
  const int n = static_cast<int>(std::ceil(decades * scan.samples_per_decade -
                                           1e-9));
  std::vector<double> xs;
  xs.reserve(n + 1);
  const double e0 = std::log10(scan.x_min);
  for (int j = 0; j < n; ++j) {
    xs.push_back(std::pow(
        10.0, e0 + static_cast<double>(j) / scan.samples_per_decade));
  }
  xs.push_back(scan.x_max);
  return xs;
}

ErrorReport error_scan(const QuadratureSpec& q, const ScanSpec& scan) {
  validate(q);
  ErrorReport report;
  report.x = scan_points(scan);
  report.error.resize(report.x.size());
  const double alpha = q.rep.alpha;
  for (std::size_t j = 0; j < report.x.size(); ++j) {
    const double x = report.x[j];
    const double err = std::abs(approx_frac_power(x, q) - std::pow(x, -alpha));
    report.error[j] = err;
    if (err > report.max_error) {
      report.max_error = err;
      report.argmax_x = x;
    }
  }
  if (report.argmax_x == 0.0 && !report.x.empty()) {
    report.argmax_x = report.x.front();
  }
  return report;
}

}  // namespace fracpow
