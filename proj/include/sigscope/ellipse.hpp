#ifndef SIGSCOPE_ELLIPSE_HPP
#define SIGSCOPE_ELLIPSE_HPP

#include <Eigen/Dense>

#include <string>

#include "sigscope/errors.hpp"
#include "sigscope/fourier.hpp" // VectorX alias

namespace sigscope {

// Axis-aligned confidence ellipse: centered at the coordinate means, with
// semi-axes equal to the full coordinate range scaled by the confidence
// level (1 - alpha). This is a range-based construction, not a covariance
// ellipse.
template <typename Scalar>
struct ConfidenceEllipse {
  int cluster_id = -1;
  Scalar center_x = Scalar(0), center_y = Scalar(0);
  Scalar semi_axis_x = Scalar(0), semi_axis_y = Scalar(0);
  Scalar alpha = Scalar(0.05);
};

template <typename Scalar>
ConfidenceEllipse<Scalar> confidence_ellipse(const VectorX<Scalar>& x,
                                             const VectorX<Scalar>& y, Scalar alpha,
                                             int cluster_id) {
  if (!(alpha > Scalar(0) && alpha < Scalar(1)))
    throw ConfigError("regression: ellipse alpha must lie in (0, 1)");
  if (x.size() < 2 || y.size() != x.size())
    throw DataError("regression: cluster " + std::to_string(cluster_id) +
                    " needs at least 2 points for a confidence ellipse");
  ConfidenceEllipse<Scalar> e;
  e.cluster_id = cluster_id;
  e.alpha = alpha;
  e.center_x = x.mean();
  e.center_y = y.mean();
  e.semi_axis_x = (x.maxCoeff() - x.minCoeff()) * (Scalar(1) - alpha);
  e.semi_axis_y = (y.maxCoeff() - y.minCoeff()) * (Scalar(1) - alpha);
  return e;
}

/// Closed-region membership; a degenerate axis (semi-axis 0) requires exact
/// coordinate equality on that axis.
template <typename Scalar>
bool ellipse_contains(const ConfidenceEllipse<Scalar>& e, Scalar px, Scalar py) {
  Scalar q = Scalar(0);
  if (e.semi_axis_x == Scalar(0)) {
    if (px != e.center_x) return false;
  } else {
    const Scalar tx = (px - e.center_x) / e.semi_axis_x;
    q += tx * tx;
  }
  if (e.semi_axis_y == Scalar(0)) {
    if (py != e.center_y) return false;
  } else {
    const Scalar ty = (py - e.center_y) / e.semi_axis_y;
    q += ty * ty;
  }
  return q <= Scalar(1);
}

} // namespace sigscope

#endif
