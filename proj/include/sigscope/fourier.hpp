#ifndef SIGSCOPE_FOURIER_HPP
#define SIGSCOPE_FOURIER_HPP

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include <complex>
#include <vector>

#include "sigscope/errors.hpp"

namespace sigscope {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Frequency-domain decomposition of a length-m real signal.
//
// Normalization convention (documented contract):
//   offset = (1/m) sum_t x_t                       (the signal mean)
//   a_k    = (2/m) sum_t x_t cos(2 pi k t / m)     k = 1..m-1
//   b_k    = (2/m) sum_t x_t sin(2 pi k t / m)
//   A_k    = sqrt(a_k^2 + b_k^2)
// so a unit cosine at harmonic k (0 < k < m/2) has A_k = 1, and the signal
// reconstructs as x_t = offset + (1/2) sum_k (a_k cos + b_k sin).
// Energy identity under this convention:
//   sum_t x_t^2 = m * offset^2 + (m/4) * sum_{k=1}^{m-1} A_k^2.
template <typename Scalar>
struct Spectrum {
  Scalar offset = Scalar(0);
  VectorX<Scalar> a; // cosine coefficients, entry k-1 holds harmonic k
  VectorX<Scalar> b; // sine coefficients
  VectorX<Scalar> power; // A_k

  Eigen::Index signal_length() const { return a.size() + 1; }
};

/// Power values A_k = sqrt(a_k^2 + b_k^2) from coefficient pairs.
template <typename DerivedA, typename DerivedB>
VectorX<typename DerivedA::Scalar> power_spectrum(const Eigen::MatrixBase<DerivedA>& a,
                                                  const Eigen::MatrixBase<DerivedB>& b) {
  return (a.array().square() + b.array().square()).sqrt().matrix();
}

template <typename Scalar>
VectorX<Scalar> power_spectrum(const Spectrum<Scalar>& s) {
  return power_spectrum(s.a, s.b);
}

/// DFT of a real signal with m >= 2 samples.
///
/// Harmonics are computed for k <= m/2 and mirrored (a_{m-k} = a_k,
/// b_{m-k} = -b_k), so the conjugate-symmetry invariant A_k = A_{m-k} holds
/// exactly and the Nyquist sine coefficient is exactly zero for even m.
template <typename Derived>
Spectrum<typename Derived::Scalar> dft(const Eigen::MatrixBase<Derived>& samples) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index m = samples.size();
  if (m < 2) throw DataError("signature: dft requires at least 2 samples");
  if (!samples.allFinite()) throw DataError("signature: dft input must be finite");

  std::vector<Scalar> time(static_cast<std::size_t>(m));
  for (Eigen::Index t = 0; t < m; ++t) time[static_cast<std::size_t>(t)] = samples(t);
  std::vector<std::complex<Scalar>> freq;
  Eigen::FFT<Scalar> fft;
  fft.fwd(freq, time);

  Spectrum<Scalar> s;
  s.offset = freq[0].real() / static_cast<Scalar>(m);
  s.a.setZero(m - 1);
  s.b.setZero(m - 1);
  const Scalar scale = Scalar(2) / static_cast<Scalar>(m);
  for (Eigen::Index k = 1; 2 * k <= m; ++k) {
    Scalar ak = scale * freq[static_cast<std::size_t>(k)].real();
    Scalar bk = -scale * freq[static_cast<std::size_t>(k)].imag();
    if (2 * k == m) bk = Scalar(0); // Nyquist component of a real signal
    s.a(k - 1) = ak;
    s.b(k - 1) = bk;
    if (k < m - k) {
      s.a(m - k - 1) = ak;
      s.b(m - k - 1) = -bk;
    }
  }
  s.power = power_spectrum(s.a, s.b);
  return s;
}

/// Inverse of the decomposition above; O(m^2), used for verification.
template <typename Scalar>
VectorX<Scalar> reconstruct(const Spectrum<Scalar>& s) {
  const Eigen::Index m = s.signal_length();
  VectorX<Scalar> x = VectorX<Scalar>::Constant(m, s.offset);
  const Scalar twopi = Scalar(2) * static_cast<Scalar>(M_PI);
  for (Eigen::Index t = 0; t < m; ++t) {
    Scalar acc = Scalar(0);
    for (Eigen::Index k = 1; k < m; ++k) {
      const Scalar ang = twopi * static_cast<Scalar>(k) * static_cast<Scalar>(t) /
                         static_cast<Scalar>(m);
      acc += s.a(k - 1) * std::cos(ang) + s.b(k - 1) * std::sin(ang);
    }
    x(t) += acc / Scalar(2);
  }
  return x;
}

/// Selected signature components: index 0 denotes the offset, index k > 0 the
/// power value A_k. Order follows `indices`.
template <typename Scalar>
VectorX<Scalar> signature_values(const Spectrum<Scalar>& s,
                                 const std::vector<int>& indices) {
  const Eigen::Index m = s.signal_length();
  VectorX<Scalar> out(static_cast<Eigen::Index>(indices.size()));
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const int k = indices[i];
    if (k < 0 || k >= m)
      throw DataError("signature: harmonic index " + std::to_string(k) +
                      " out of range for signal length " + std::to_string(m));
    out(static_cast<Eigen::Index>(i)) = (k == 0) ? s.offset : s.power(k - 1);
  }
  return out;
}

} // namespace sigscope

#endif
