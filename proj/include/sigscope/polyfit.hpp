#ifndef SIGSCOPE_POLYFIT_HPP
#define SIGSCOPE_POLYFIT_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <string>
#include <vector>

#include "sigscope/errors.hpp"
#include "sigscope/fourier.hpp" // VectorX/MatrixX aliases
#include "sigscope/student_t.hpp"

namespace sigscope {

/// Horner evaluation of c0 + c1 x + ... + cd x^d.
template <typename Derived>
typename Derived::Scalar polyval(const Eigen::MatrixBase<Derived>& coeffs,
                                 typename Derived::Scalar x) {
  using Scalar = typename Derived::Scalar;
  Scalar v = Scalar(0);
  for (Eigen::Index j = coeffs.size(); j-- > 0;) v = v * x + coeffs(j);
  return v;
}

template <typename Scalar>
struct FittedCurve {
  int cluster_id = -1;
  int degree = 0;
  VectorX<Scalar> coeffs;      // c0..cd in the data frame
  Scalar ss = Scalar(0);       // residual sum of squares
  int df = 0;                  // n - (degree + 1)
  MatrixX<Scalar> covariance;  // (SS/DF) * (V^T V)^{-1}, data frame
  Scalar r_squared = Scalar(1);
  Scalar x_min = Scalar(0), x_max = Scalar(0); // fit domain

  Scalar operator()(Scalar x) const { return polyval(coeffs, x); }
};

namespace detail {

// Change of basis for u = ax + b: column j of T holds the x-frame
// coefficients of u^j, so c_x = T c_u and Sigma_x = T Sigma_u T^T.
template <typename Scalar>
MatrixX<Scalar> power_basis_map(int degree, Scalar a, Scalar b) {
  MatrixX<Scalar> t = MatrixX<Scalar>::Zero(degree + 1, degree + 1);
  t(0, 0) = Scalar(1);
  for (int j = 1; j <= degree; ++j) {
    // (ax + b)^j = (ax + b)^{j-1} * (ax + b)
    for (int i = 0; i < j; ++i) {
      t(i + 1, j) += a * t(i, j - 1);
      t(i, j) += b * t(i, j - 1);
    }
  }
  return t;
}

} // namespace detail

/// Least-squares polynomial fit of the given degree.
///
/// x is affinely rescaled to [-1, 1] before solving; coefficients and the
/// coefficient covariance are mapped back to the data frame, which is an
/// exact change of basis.
template <typename Scalar>
FittedCurve<Scalar> fit_polynomial(const VectorX<Scalar>& x, const VectorX<Scalar>& y,
                                   int degree, int cluster_id) {
  const Eigen::Index n = x.size();
  if (degree < 0)
    throw ConfigError("regression: polynomial degree must be >= 0");
  if (y.size() != n)
    throw DataError("regression: x/y size mismatch (cluster " +
                    std::to_string(cluster_id) + ")");
  if (n < degree + 2)
    throw DataError("regression: cluster " + std::to_string(cluster_id) + " has " +
                    std::to_string(n) + " points, degree " + std::to_string(degree) +
                    " needs at least " + std::to_string(degree + 2));
  if (!x.allFinite() || !y.allFinite())
    throw DataError("regression: non-finite coordinates (cluster " +
                    std::to_string(cluster_id) + ")");

  const Scalar x_min = x.minCoeff(), x_max = x.maxCoeff();
  if (degree >= 1 && x_min == x_max)
    throw NumericalError("regression: cluster " + std::to_string(cluster_id) +
                         " has identical x values; degree " + std::to_string(degree) +
                         " fit is degenerate");

  Scalar a = Scalar(1), b = Scalar(0);
  if (x_max > x_min) {
    a = Scalar(2) / (x_max - x_min);
    b = -(x_max + x_min) / (x_max - x_min);
  }

  MatrixX<Scalar> v(n, degree + 1);
  v.col(0).setOnes();
  if (degree >= 1) {
    const VectorX<Scalar> u = a * x.array() + b;
    for (int j = 1; j <= degree; ++j) v.col(j) = v.col(j - 1).cwiseProduct(u);
  }

  Eigen::ColPivHouseholderQR<MatrixX<Scalar>> qr(v);
  if (qr.rank() < degree + 1)
    throw NumericalError("regression: singular normal equations for cluster " +
                         std::to_string(cluster_id) + " at degree " +
                         std::to_string(degree));
  const VectorX<Scalar> coef_u = qr.solve(y);

  FittedCurve<Scalar> fit;
  fit.cluster_id = cluster_id;
  fit.degree = degree;
  fit.x_min = x_min;
  fit.x_max = x_max;
  fit.ss = (y - v * coef_u).squaredNorm();
  fit.df = static_cast<int>(n) - (degree + 1);

  const MatrixX<Scalar> normal = v.transpose() * v;
  const MatrixX<Scalar> normal_inv =
      normal.ldlt().solve(MatrixX<Scalar>::Identity(degree + 1, degree + 1));
  const MatrixX<Scalar> cov_u = (fit.ss / Scalar(fit.df)) * normal_inv;

  const MatrixX<Scalar> t = detail::power_basis_map<Scalar>(degree, a, b);
  fit.coeffs = t * coef_u;
  fit.covariance = t * cov_u * t.transpose();
  fit.covariance = ((fit.covariance + fit.covariance.transpose()) / Scalar(2)).eval();

  const Scalar ss_total = (y.array() - y.mean()).matrix().squaredNorm();
  fit.r_squared = ss_total > Scalar(0) ? Scalar(1) - fit.ss / ss_total : Scalar(1);
  return fit;
}

template <typename Scalar>
Scalar adjusted_r_squared(const FittedCurve<Scalar>& fit) {
  const int n = fit.df + fit.degree + 1;
  return Scalar(1) -
         (Scalar(1) - fit.r_squared) * Scalar(n - 1) / Scalar(n - fit.degree - 1);
}

/// Most parsimonious adequate fit: degrees are scanned upward from 0 and the
/// scan stops at the last degree whose adjusted-R^2 gain over the previous
/// one is at least eps_r2. The degree is capped so that DF >= 1 and the
/// design matrix has full rank (distinct x count).
template <typename Scalar>
FittedCurve<Scalar> select_degree(const VectorX<Scalar>& x, const VectorX<Scalar>& y,
                                  int max_degree, int cluster_id,
                                  Scalar eps_r2 = Scalar(0.01)) {
  const Eigen::Index n = x.size();
  if (max_degree < 1)
    throw ConfigError("regression: max_degree must be >= 1");
  if (n < 3)
    throw DataError("regression: cluster " + std::to_string(cluster_id) + " has " +
                    std::to_string(n) + " points; degree selection needs at least 3");

  std::vector<Scalar> sorted(x.data(), x.data() + n);
  std::sort(sorted.begin(), sorted.end());
  const int distinct =
      static_cast<int>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
  const int feasible =
      std::min({max_degree, static_cast<int>(n) - 2, distinct - 1});

  FittedCurve<Scalar> best = fit_polynomial(x, y, 0, cluster_id);
  for (int d = 1; d <= feasible; ++d) {
    FittedCurve<Scalar> next = fit_polynomial(x, y, d, cluster_id);
    if (adjusted_r_squared(next) - adjusted_r_squared(best) < eps_r2) break;
    best = std::move(next);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Confidence band around a fitted curve.
// ---------------------------------------------------------------------------

template <typename Scalar>
struct ConfidenceBand {
  FittedCurve<Scalar> curve;
  Scalar alpha = Scalar(0.05);
  Scalar t_crit = Scalar(0);
};

template <typename Scalar>
ConfidenceBand<Scalar> make_confidence_band(FittedCurve<Scalar> curve, Scalar alpha) {
  ConfidenceBand<Scalar> band;
  band.t_crit = static_cast<Scalar>(t_critical(static_cast<double>(alpha), curve.df));
  band.alpha = alpha;
  band.curve = std::move(curve);
  return band;
}

/// Half-width t * sqrt(g(x)^T Sigma g(x)) with g(x) = (1, x, ..., x^d).
/// The residual scale sqrt(SS/DF) is already folded into Sigma, so this
/// equals the product of the separate factors sqrt(g^T (V^T V)^{-1} g),
/// sqrt(SS/DF) and t exactly.
template <typename Scalar>
Scalar band_half_width(const ConfidenceBand<Scalar>& band, Scalar x) {
  const int p = band.curve.degree + 1;
  VectorX<Scalar> g(p);
  g(0) = Scalar(1);
  for (int j = 1; j < p; ++j) g(j) = g(j - 1) * x;
  const Scalar q = g.dot(band.curve.covariance * g);
  return band.t_crit * std::sqrt(std::max(q, Scalar(0)));
}

/// Band membership is vertical: y within [curve(x) - hw, curve(x) + hw],
/// boundaries inclusive, unbounded in x.
template <typename Scalar>
bool band_contains(const ConfidenceBand<Scalar>& band, Scalar x, Scalar y) {
  const Scalar hw = band_half_width(band, x);
  const Scalar center = band.curve(x);
  return y >= center - hw && y <= center + hw;
}

} // namespace sigscope

#endif
