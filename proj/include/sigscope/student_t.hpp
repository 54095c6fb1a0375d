#ifndef SIGSCOPE_STUDENT_T_HPP
#define SIGSCOPE_STUDENT_T_HPP

#include <cmath>
#include <limits>
#include <string>

#include "sigscope/errors.hpp"

namespace sigscope {

namespace detail {

inline double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Continued fraction for the incomplete beta function (modified Lentz).
inline double beta_cf(double a, double b, double x) {
  constexpr int max_iter = 300;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double fpmin = std::numeric_limits<double>::min() / eps;

  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < fpmin) d = fpmin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= max_iter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= eps) break;
  }
  return h;
}

} // namespace detail

/// Regularized incomplete beta function I_x(a, b).
inline double ibeta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_bt =
      a * std::log(x) + b * std::log1p(-x) - detail::log_beta(a, b);
  const double bt = std::exp(log_bt);
  if (x < (a + 1.0) / (a + b + 2.0)) return bt * detail::beta_cf(a, b, x) / a;
  return 1.0 - bt * detail::beta_cf(b, a, 1.0 - x) / b;
}

/// Inverse of I_x(a, b) in x: bracketed Newton with bisection fallback.
inline double ibeta_inv(double a, double b, double p) {
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  double lo = 0.0, hi = 1.0, x = 0.5;
  const double log_norm = -detail::log_beta(a, b);
  for (int it = 0; it < 200; ++it) {
    const double f = ibeta(a, b, x) - p;
    if (f > 0.0)
      hi = x;
    else
      lo = x;
    const double log_pdf =
        log_norm + (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x);
    double next = x - f / std::exp(log_pdf);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::fabs(next - x);
    x = next;
    if (step <= 4.0 * std::numeric_limits<double>::epsilon() * x) break;
  }
  return x;
}

/// Two-sided Student's t critical value: returns t with P(|T_df| <= t) = 1 - alpha.
inline double t_critical(double alpha, int df) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ConfigError("t_critical: alpha must lie in (0, 1), got " +
                      std::to_string(alpha));
  if (df < 1)
    throw ConfigError("t_critical: df must be >= 1, got " + std::to_string(df));
  // P(|T| > t) = I_x(df/2, 1/2) with x = df / (df + t^2).
  const double x = ibeta_inv(0.5 * df, 0.5, alpha);
  if (x <= 0.0) return std::numeric_limits<double>::infinity();
  return std::sqrt(df * (1.0 - x) / x);
}

} // namespace sigscope

#endif
