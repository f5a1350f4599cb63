#ifndef REGRETLAB_RANDOM_HPP
#define REGRETLAB_RANDOM_HPP

// Random matrices for property checks.

#include "regretlab/linalg.hpp"

#include <cmath>
#include <random>

namespace regretlab::rnd {

template <typename Rng>
Matrix gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = n(rng);
  }
  return m;
}

template <typename Rng>
Vector gaussian_vector(Rng& rng, Eigen::Index n) {
  return gaussian(rng, n, 1).col(0);
}

template <typename Rng>
Matrix orthogonal(Rng& rng, Eigen::Index n) {
  Eigen::HouseholderQR<Matrix> qr(gaussian(rng, n, n));
  Matrix q = qr.householderQ();
  // Sign fix so the distribution is Haar.
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < n; ++k) {
    if (r(k, k) < 0.0) q.col(k) *= -1.0;
  }
  return q;
}

/// rows x cols matrix of exact rank `rank` with singular values drawn from
/// [lo, hi] and the whole matrix multiplied by `scale`.
template <typename Rng>
Matrix with_rank(Rng& rng, Eigen::Index rows, Eigen::Index cols,
                 Eigen::Index rank, double scale = 1.0, double lo = 0.5,
                 double hi = 3.0) {
  Matrix out = Matrix::Zero(rows, cols);
  if (rank == 0) return out;
  std::uniform_real_distribution<double> sv(lo, hi);
  const Matrix u = orthogonal(rng, rows).leftCols(rank);
  const Matrix v = orthogonal(rng, cols).leftCols(rank);
  Vector s(rank);
  for (Eigen::Index k = 0; k < rank; ++k) s(k) = sv(rng);
  return scale * u * s.asDiagonal() * v.transpose();
}

/// Invertible matrix with singular values in [lo, hi].
template <typename Rng>
Matrix invertible(Rng& rng, Eigen::Index n, double lo = 0.5, double hi = 2.0) {
  return with_rank(rng, n, n, n, 1.0, lo, hi);
}

/// Symmetric PSD matrix of the given rank, eigenvalues in [lo, hi].
template <typename Rng>
Matrix psd(Rng& rng, Eigen::Index n, Eigen::Index rank, double lo = 0.5,
           double hi = 3.0) {
  Matrix out = Matrix::Zero(n, n);
  if (rank == 0) return out;
  std::uniform_real_distribution<double> ev(lo, hi);
  const Matrix u = orthogonal(rng, n).leftCols(rank);
  Vector s(rank);
  for (Eigen::Index k = 0; k < rank; ++k) s(k) = ev(rng);
  out = u * s.asDiagonal() * u.transpose();
  return 0.5 * (out + out.transpose());
}

}  // namespace regretlab::rnd

#endif  // REGRETLAB_RANDOM_HPP
