#ifndef SIGSCOPE_MDS_HPP
#define SIGSCOPE_MDS_HPP

#include <Eigen/Dense>

#include <string>

#include "sigscope/errors.hpp"
#include "sigscope/fourier.hpp" // VectorX/MatrixX aliases

namespace sigscope {

/// Pairwise squared Euclidean distances between the rows of `points`.
template <typename Derived>
MatrixX<typename Derived::Scalar>
squared_distance_matrix(const Eigen::MatrixBase<Derived>& points) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = points.rows();
  MatrixX<Scalar> d = MatrixX<Scalar>::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const Scalar v = (points.row(i) - points.row(j)).squaredNorm();
      d(i, j) = v;
      d(j, i) = v;
    }
  return d;
}

/// Gram matrix B = -1/2 J D J with J = I - (1/n) 11^T.
template <typename Derived>
MatrixX<typename Derived::Scalar> double_center(const Eigen::MatrixBase<Derived>& d) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = d.rows();
  const VectorX<Scalar> row_mean = d.rowwise().mean();
  const Scalar grand_mean = row_mean.mean();
  MatrixX<Scalar> b(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      b(i, j) = Scalar(-0.5) * (d(i, j) - row_mean(i) - row_mean(j) + grand_mean);
  return b;
}

template <typename Scalar>
struct MdsSolution {
  MatrixX<Scalar> coords;      // n x p
  VectorX<Scalar> eigenvalues; // all n, non-increasing
  int clamped = 0;             // retained eigenvalues in [-tol, 0) set to 0
  int negative_beyond_tol = 0; // eigenvalues below -tol (not retained)
  Scalar negative_mass_ratio = Scalar(0); // sum of negative mass / total mass
};

/// Classical (Torgerson) multidimensional scaling of a squared-distance
/// matrix into p dimensions.
///
/// Spectral decomposition is of the double-centered Gram matrix; coordinates
/// are the top-p eigenvectors scaled by sqrt(eigenvalue). Eigenvalues in
/// [-tol, 0) with tol = 1e-8 * lambda_max are clamped to zero; deeper
/// negative mass is reported, and it is an error only when fewer than p
/// eigenvalues clear -tol (the input cannot be embedded at rank p).
///
/// Determinism: each eigenvector is oriented so its largest-magnitude entry
/// is positive (ties resolved to the lowest index), making repeat runs on
/// identical input bit-identical.
template <typename Derived>
MdsSolution<typename Derived::Scalar>
classical_mds(const Eigen::MatrixBase<Derived>& d, Eigen::Index p) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = d.rows();
  if (n < 2 || d.cols() != n)
    throw DataError("embedding: dissimilarity matrix must be square with n >= 2");
  if (p < 1 || p > n - 1)
    throw DataError("embedding: requested dimension p=" + std::to_string(p) +
                    " outside [1, n-1] for n=" + std::to_string(n));

  const MatrixX<Scalar> b = double_center(d);
  Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> solver(b);
  if (solver.info() != Eigen::Success)
    throw NumericalError("embedding: eigendecomposition failed to converge");

  MdsSolution<Scalar> out;
  out.eigenvalues = solver.eigenvalues().reverse();
  const Scalar lambda_max = out.eigenvalues(0);
  const Scalar tol = Scalar(1e-8) * std::max(lambda_max, Scalar(0)) +
                     Scalar(1e-12) * (Scalar(1) + b.cwiseAbs().maxCoeff());

  Scalar neg_mass = Scalar(0), total_mass = Scalar(0);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar ev = out.eigenvalues(i);
    total_mass += std::abs(ev);
    if (ev < Scalar(0)) neg_mass += -ev;
    if (ev < -tol) ++out.negative_beyond_tol;
  }
  if (total_mass > Scalar(0)) out.negative_mass_ratio = neg_mass / total_mass;
  if (n - out.negative_beyond_tol < p)
    throw NumericalError(
        "embedding: input is not embeddable at rank " + std::to_string(p) + " (" +
        std::to_string(out.negative_beyond_tol) +
        " eigenvalues are negative beyond tolerance)");

  out.coords.resize(n, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    VectorX<Scalar> v = solver.eigenvectors().col(n - 1 - j);
    // Sign convention: largest-magnitude entry positive, first such index wins.
    Eigen::Index arg = 0;
    for (Eigen::Index i = 1; i < n; ++i)
      if (std::abs(v(i)) > std::abs(v(arg))) arg = i;
    if (v(arg) < Scalar(0)) v = -v;

    Scalar ev = out.eigenvalues(j);
    if (ev < Scalar(0)) {
      ++out.clamped;
      ev = Scalar(0);
    }
    out.coords.col(j) = v * std::sqrt(ev);
  }
  return out;
}

} // namespace sigscope

#endif
