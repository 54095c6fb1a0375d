#ifndef SIGSCOPE_CURVE_DISTANCE_HPP
#define SIGSCOPE_CURVE_DISTANCE_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "sigscope/errors.hpp"
#include "sigscope/polyfit.hpp"

namespace sigscope {

template <typename Scalar>
struct CurveDistance {
  Scalar distance = Scalar(0);
  Scalar foot_x = Scalar(0), foot_y = Scalar(0);
};

namespace detail {

// Real roots of a polynomial (coefficients low to high) via the companion
// matrix. Roots whose imaginary part exceeds 1e-9 * max(1, |root|) are
// discarded.
template <typename Scalar>
std::vector<Scalar> real_roots(VectorX<Scalar> coeffs) {
  Eigen::Index deg = coeffs.size() - 1;
  while (deg > 0 && coeffs(deg) == Scalar(0)) --deg;
  std::vector<Scalar> roots;
  if (deg == 0) return roots;
  if (deg == 1) {
    roots.push_back(-coeffs(0) / coeffs(1));
    return roots;
  }
  MatrixX<Scalar> companion = MatrixX<Scalar>::Zero(deg, deg);
  for (Eigen::Index i = 1; i < deg; ++i) companion(i, i - 1) = Scalar(1);
  for (Eigen::Index i = 0; i < deg; ++i) companion(i, deg - 1) = -coeffs(i) / coeffs(deg);
  Eigen::EigenSolver<MatrixX<Scalar>> solver(companion, /*computeEigenvectors=*/false);
  for (Eigen::Index i = 0; i < deg; ++i) {
    const auto ev = solver.eigenvalues()(i);
    const Scalar mag = std::abs(ev);
    if (std::abs(ev.imag()) <= Scalar(1e-9) * std::max(Scalar(1), mag))
      roots.push_back(ev.real());
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

} // namespace detail

/// Minimum distance from a point to the graph of a fitted polynomial.
///
/// Degree 1 uses the exact perpendicular distance to the line. Higher
/// degrees minimize D(x) = (x - px)^2 + (p(x) - py)^2 over the curve's
/// search interval [x_min - r, x_max + r] (r = fit-domain width): candidates
/// are the real roots of D'(x) inside the interval plus both endpoints.
template <typename Scalar>
CurveDistance<Scalar> point_to_curve_distance(Scalar px, Scalar py,
                                              const FittedCurve<Scalar>& curve) {
  CurveDistance<Scalar> result;
  if (curve.degree == 0) {
    result.foot_x = px;
    result.foot_y = curve.coeffs(0);
    result.distance = std::abs(py - curve.coeffs(0));
    return result;
  }
  if (curve.degree == 1) {
    const Scalar c0 = curve.coeffs(0), c1 = curve.coeffs(1);
    result.distance = std::abs(c1 * px - py + c0) / std::sqrt(c1 * c1 + Scalar(1));
    result.foot_x = (px + c1 * (py - c0)) / (Scalar(1) + c1 * c1);
    result.foot_y = c0 + c1 * result.foot_x;
    return result;
  }

  // h(x) = D'(x)/2 = (x - px) + p'(x) (p(x) - py), degree 2d-1.
  const int d = curve.degree;
  VectorX<Scalar> deriv(d);
  for (int j = 1; j <= d; ++j) deriv(j - 1) = Scalar(j) * curve.coeffs(j);
  VectorX<Scalar> h = VectorX<Scalar>::Zero(2 * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j <= d; ++j) h(i + j) += deriv(i) * curve.coeffs(j);
  for (int i = 0; i < d; ++i) h(i) -= py * deriv(i);
  h(0) -= px;
  h(1) += Scalar(1);

  const Scalar width =
      curve.x_max > curve.x_min ? curve.x_max - curve.x_min : Scalar(1);
  const Scalar lo = curve.x_min - width, hi = curve.x_max + width;

  std::vector<Scalar> candidates;
  for (Scalar root : detail::real_roots(h))
    if (root >= lo && root <= hi) candidates.push_back(root);
  candidates.push_back(lo);
  candidates.push_back(hi);
  std::sort(candidates.begin(), candidates.end());

  Scalar best_d2 = std::numeric_limits<Scalar>::infinity();
  for (Scalar x : candidates) {
    const Scalar y = curve(x);
    const Scalar d2 = (x - px) * (x - px) + (y - py) * (y - py);
    if (d2 < best_d2) {
      best_d2 = d2;
      result.foot_x = x;
      result.foot_y = y;
    }
  }
  result.distance = std::sqrt(best_d2);
  return result;
}

template <typename Scalar>
struct Resolution {
  int cluster_id = -1;
  Scalar distance = std::numeric_limits<Scalar>::infinity();
};

/// Nearest cluster by point-to-curve distance; ties go to the lowest
/// cluster id.
template <typename Scalar>
Resolution<Scalar> resolve_ambiguous(Scalar px, Scalar py,
                                     const std::map<int, FittedCurve<Scalar>>& curves) {
  if (curves.empty())
    throw DataError("classify: no fitted curves available to resolve membership");
  Resolution<Scalar> best;
  for (const auto& [id, curve] : curves) {
    const Scalar dist = point_to_curve_distance(px, py, curve).distance;
    if (dist < best.distance) {
      best.distance = dist;
      best.cluster_id = id;
    }
  }
  return best;
}

} // namespace sigscope

#endif
