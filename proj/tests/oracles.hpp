#ifndef SIGSCOPE_TEST_ORACLES_HPP
#define SIGSCOPE_TEST_ORACLES_HPP

// Test-only reference implementations. Each oracle is written against the
// plain definition of the quantity it checks (direct summation, explicit
// elimination, quadrature, dense grid search) and shares no code with the
// library paths it verifies.

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace oracles {

// ---------------------------------------------------------------------------
// Brute-force DFT under the library's normalization:
//   offset = (1/m) sum x_t
//   a_k = (2/m) sum x_t cos(2 pi k t / m)
//   b_k = (2/m) sum x_t sin(2 pi k t / m)
//   A_k = sqrt(a_k^2 + b_k^2),  k = 1..m-1
// O(m^2) trigonometric summation, no FFT.
// ---------------------------------------------------------------------------

struct BruteSpectrum {
  double offset = 0.0;
  std::vector<double> a, b, power; // index 0 holds k = 1
};

inline BruteSpectrum brute_dft(const std::vector<double>& x) {
  const std::size_t m = x.size();
  BruteSpectrum s;
  double sum = 0.0;
  for (double v : x) sum += v;
  s.offset = sum / static_cast<double>(m);
  s.a.resize(m - 1);
  s.b.resize(m - 1);
  s.power.resize(m - 1);
  const double twopi = 2.0 * M_PI;
  for (std::size_t k = 1; k < m; ++k) {
    double ca = 0.0, cb = 0.0;
    for (std::size_t t = 0; t < m; ++t) {
      const double ang = twopi * static_cast<double>(k) * static_cast<double>(t) /
                         static_cast<double>(m);
      ca += x[t] * std::cos(ang);
      cb += x[t] * std::sin(ang);
    }
    s.a[k - 1] = 2.0 * ca / static_cast<double>(m);
    s.b[k - 1] = 2.0 * cb / static_cast<double>(m);
    s.power[k - 1] = std::sqrt(s.a[k - 1] * s.a[k - 1] + s.b[k - 1] * s.b[k - 1]);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Pairwise squared Euclidean distances by explicit component loop.
// ---------------------------------------------------------------------------

inline std::vector<std::vector<double>>
naive_squared_distances(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t c = 0; c < rows[i].size(); ++c) {
        const double diff = rows[i][c] - rows[j][c];
        acc += diff * diff;
      }
      d[i][j] = acc;
    }
  return d;
}

// ---------------------------------------------------------------------------
// Dense linear solve by Gaussian elimination with partial pivoting.
// Used to solve raw normal equations independently of Eigen.
// ---------------------------------------------------------------------------

inline std::vector<double> solve_dense(std::vector<std::vector<double>> m,
                                       std::vector<double> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
    if (m[piv][col] == 0.0) throw std::runtime_error("oracle: singular system");
    std::swap(m[col], m[piv]);
    std::swap(rhs[col], rhs[piv]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double acc = rhs[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= m[i][c] * x[c];
    x[i] = acc / m[i][i];
  }
  return x;
}

// Polynomial least squares via explicit normal equations on the raw
// (unscaled) Vandermonde matrix.
inline std::vector<double> normal_equations_polyfit(const std::vector<double>& x,
                                                    const std::vector<double>& y,
                                                    int degree) {
  const std::size_t n = x.size();
  const std::size_t p = static_cast<std::size_t>(degree) + 1;
  std::vector<std::vector<double>> ata(p, std::vector<double>(p, 0.0));
  std::vector<double> aty(p, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> pw(p, 1.0);
    for (std::size_t j = 1; j < p; ++j) pw[j] = pw[j - 1] * x[i];
    for (std::size_t r = 0; r < p; ++r) {
      aty[r] += pw[r] * y[i];
      for (std::size_t c = 0; c < p; ++c) ata[r][c] += pw[r] * pw[c];
    }
  }
  return solve_dense(std::move(ata), std::move(aty));
}

// ---------------------------------------------------------------------------
// Closed-form simple linear regression and its textbook pointwise
// confidence-interval half-width  t * s * sqrt(1/n + (x - xbar)^2 / Sxx).
// ---------------------------------------------------------------------------

struct SimpleLinearFit {
  double intercept = 0.0, slope = 0.0;
  double xbar = 0.0, sxx = 0.0;
  double s2 = 0.0; // SS / (n - 2)
  std::size_t n = 0;
};

inline SimpleLinearFit simple_linear_fit(const std::vector<double>& x,
                                         const std::vector<double>& y) {
  SimpleLinearFit f;
  f.n = x.size();
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < f.n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  f.xbar = sx / static_cast<double>(f.n);
  const double ybar = sy / static_cast<double>(f.n);
  double sxy = 0.0;
  for (std::size_t i = 0; i < f.n; ++i) {
    f.sxx += (x[i] - f.xbar) * (x[i] - f.xbar);
    sxy += (x[i] - f.xbar) * (y[i] - ybar);
  }
  f.slope = sxy / f.sxx;
  f.intercept = ybar - f.slope * f.xbar;
  double ss = 0.0;
  for (std::size_t i = 0; i < f.n; ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    ss += r * r;
  }
  f.s2 = ss / static_cast<double>(f.n - 2);
  return f;
}

inline double slr_band_half_width(const SimpleLinearFit& f, double t_crit, double x) {
  return t_crit * std::sqrt(f.s2) *
         std::sqrt(1.0 / static_cast<double>(f.n) + (x - f.xbar) * (x - f.xbar) / f.sxx);
}

// ---------------------------------------------------------------------------
// Student's t distribution by direct quadrature of the density, and the
// two-sided critical value by bisection on the integrated CDF.
// ---------------------------------------------------------------------------

inline double t_density(double u, double df) {
  const double logc = std::lgamma((df + 1.0) / 2.0) - std::lgamma(df / 2.0) -
                      0.5 * std::log(df * M_PI);
  return std::exp(logc - (df + 1.0) / 2.0 * std::log1p(u * u / df));
}

// Adaptive Simpson on [a, b].
inline double simpson_rec(double (*f)(double, double), double df, double a, double b,
                          double fa, double fm, double fb, double whole, double eps,
                          int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm, df), frm = f(rm, df);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * eps)
    return left + right + (left + right - whole) / 15.0;
  return simpson_rec(f, df, a, m, fa, flm, fm, left, eps / 2.0, depth - 1) +
         simpson_rec(f, df, m, b, fm, frm, fb, right, eps / 2.0, depth - 1);
}

inline double t_cdf_numeric(double t, double df) {
  if (t == 0.0) return 0.5;
  const double a = 0.0, b = std::fabs(t);
  const double fa = t_density(a, df), fb = t_density(b, df);
  const double fm = t_density(0.5 * (a + b), df);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double integral =
      simpson_rec(&t_density, df, a, b, fa, fm, fb, whole, 1e-12, 40);
  return t > 0.0 ? 0.5 + integral : 0.5 - integral;
}

// Two-sided critical value: P(|T| <= t) = 1 - alpha.
inline double t_critical_numeric(double alpha, int df) {
  const double target = 1.0 - alpha / 2.0;
  double lo = 0.0, hi = 1.0;
  while (t_cdf_numeric(hi, df) < target) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (t_cdf_numeric(mid, df) < target)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-10 * (1.0 + hi)) break;
  }
  return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Minimum distance from a point to a polynomial graph by dense grid search
// over [lo, hi] (inclusive endpoints).
// ---------------------------------------------------------------------------

inline double polyval(const std::vector<double>& coeffs, double x) {
  double v = 0.0;
  for (std::size_t j = coeffs.size(); j-- > 0;) v = v * x + coeffs[j];
  return v;
}

struct GridMin {
  double distance = 0.0;
  double foot_x = 0.0, foot_y = 0.0;
};

inline GridMin grid_min_distance(double px, double py, const std::vector<double>& coeffs,
                                 double lo, double hi, std::size_t samples) {
  GridMin best;
  double best_d2 = std::numeric_limits<double>::infinity();
  const double step = (hi - lo) / static_cast<double>(samples - 1);
  for (std::size_t i = 0; i < samples; ++i) {
    const double x = (i + 1 == samples) ? hi : lo + step * static_cast<double>(i);
    const double y = polyval(coeffs, x);
    const double d2 = (x - px) * (x - px) + (y - py) * (y - py);
    if (d2 < best_d2) {
      best_d2 = d2;
      best.foot_x = x;
      best.foot_y = y;
    }
  }
  best.distance = std::sqrt(best_d2);
  return best;
}

} // namespace oracles

#endif
