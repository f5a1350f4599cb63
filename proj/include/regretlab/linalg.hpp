#ifndef REGRETLAB_LINALG_HPP
#define REGRETLAB_LINALG_HPP

// Dense symmetric linear algebra for streaming Gram matrices.
//
// Everything here is a pure function over Eigen values.  The reference path
// recomputes a full symmetric eigendecomposition on every Gram update; there
// is no incremental factorization behind any of these calls.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace regretlab {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NumericalError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Relative factor of the rank cutoff: a singular value (or PSD eigenvalue)
/// counts as positive iff it exceeds max(rows, cols) * largest * kRankEps.
inline constexpr double kRankEps = 1e-12;

/// Relative tolerance on ||G - G^T|| before a matrix is refused as asymmetric.
inline constexpr double kSymmetryEps = 1e-10;

/// Absolute threshold below which a value is "positive" given the largest one.
inline double rank_cutoff(double largest, std::size_t dim) {
  return static_cast<double>(dim) * largest * kRankEps;
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.allFinite();
}

namespace detail {

inline void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) {
    throw NumericalError(std::string(what) + ": non-finite entries");
  }
}

inline void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(what) + ": matrix must be square, got " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
}

inline void require_dim(Eigen::Index expected, Eigen::Index got,
                        const char* what) {
  if (expected != got) {
    throw DimensionError(std::string(what) + ": expected dimension " +
                         std::to_string(expected) + ", got " +
                         std::to_string(got));
  }
}

inline void require_symmetric(const Matrix& g, const char* what) {
  require_square(g, what);
  require_finite(g, what);
  const double scale = g.norm();
  if ((g - g.transpose()).norm() > kSymmetryEps * std::max(scale, 1e-300) &&
      scale > 0.0) {
    throw std::invalid_argument(std::string(what) + ": matrix is not symmetric");
  }
}

inline Matrix symmetrized(const Matrix& g) {
  return 0.5 * (g + g.transpose());
}

}  // namespace detail

/// Eigen-decomposition of a symmetric matrix with eigenvalues sorted in
/// non-increasing order; `vectors.col(k)` belongs to `values(k)`.
struct SymmetricEigen {
  Vector values;
  Matrix vectors;
  int rank = 0;  // eigenvalues above the rank cutoff

  /// Largest eigenvalue magnitude, 0 for an empty or zero matrix.
  double largest() const { return values.size() ? std::abs(values(0)) : 0.0; }
  double cutoff() const {
    return rank_cutoff(largest(), static_cast<std::size_t>(values.size()));
  }
};

inline SymmetricEigen symmetric_eigen(const Matrix& g) {
  detail::require_symmetric(g, "symmetric_eigen");
  const auto n = g.rows();
  SymmetricEigen out;
  if (n == 0) {
    out.values = Vector(0);
    out.vectors = Matrix(0, 0);
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(detail::symmetrized(g));
  if (solver.info() != Eigen::Success) {
    throw NumericalError("symmetric_eigen: decomposition failed");
  }
  // Eigen returns ascending order.
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  const double largest = std::max(std::abs(out.values(0)),
                                  std::abs(out.values(n - 1)));
  const double cut = rank_cutoff(largest, static_cast<std::size_t>(n));
  out.rank = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (out.values(k) > cut) ++out.rank;
  }
  return out;
}

/// Pseudoinverse of a symmetric PSD matrix given its eigendecomposition.
inline Matrix pinv_from_eigen(const SymmetricEigen& e) {
  const auto n = e.vectors.rows();
  Matrix out = Matrix::Zero(n, n);
  for (int k = 0; k < e.rank; ++k) {
    out.noalias() += (1.0 / e.values(k)) * e.vectors.col(k) *
                     e.vectors.col(k).transpose();
  }
  return out;
}

/// Pseudoinverse of a symmetric positive-semidefinite matrix.
inline Matrix symmetric_pinv(const Matrix& g) {
  return pinv_from_eigen(symmetric_eigen(g));
}

/// Moore-Penrose pseudoinverse of an arbitrary real matrix, via SVD with the
/// relative rank cutoff.  The zero matrix maps to the (transposed) zero matrix.
inline Matrix pseudoinverse(const Matrix& m) {
  detail::require_finite(m, "pseudoinverse");
  const auto rows = m.rows();
  const auto cols = m.cols();
  if (rows == 0 || cols == 0) return Matrix::Zero(cols, rows);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  const double cut = rank_cutoff(
      s(0), static_cast<std::size_t>(std::max(rows, cols)));
  Matrix out = Matrix::Zero(cols, rows);
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) > cut) {
      out.noalias() += (1.0 / s(k)) * svd.matrixV().col(k) *
                       svd.matrixU().col(k).transpose();
    }
  }
  return out;
}

/// Numerical rank of an arbitrary matrix under the relative cutoff.
inline int numerical_rank(const Matrix& m) {
  detail::require_finite(m, "numerical_rank");
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const Vector& s = svd.singularValues();
  const double cut = rank_cutoff(
      s(0), static_cast<std::size_t>(std::max(m.rows(), m.cols())));
  int r = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) > cut) ++r;
  }
  return r;
}

/// Smallest singular value, used as the invertibility test for square inputs.
inline bool is_invertible(const Matrix& m) {
  detail::require_square(m, "is_invertible");
  return m.rows() > 0 && numerical_rank(m) == m.rows();
}

/// The four Penrose conditions, each within tol * (1 + ||M|| ||P||)
/// (Frobenius norms).
inline bool penrose_check(const Matrix& m, const Matrix& p, double tol) {
  if (p.rows() != m.cols() || p.cols() != m.rows()) {
    throw DimensionError("penrose_check: P must be " +
                         std::to_string(m.cols()) + "x" +
                         std::to_string(m.rows()));
  }
  const double bound = tol * (1.0 + m.norm() * p.norm());
  const Matrix mp = m * p;
  const Matrix pm = p * m;
  return (mp * m - m).norm() <= bound && (pm * p - p).norm() <= bound &&
         (mp.transpose() - mp).norm() <= bound &&
         (pm.transpose() - pm).norm() <= bound;
}

/// Same eigenvectors as G, eigenvalues lambda^{-1/2} above the cutoff and 0
/// below.  Equals G^{-1/2} when G is full rank.
inline Matrix pinv_sqrt(const Matrix& g) {
  const SymmetricEigen e = symmetric_eigen(g);
  const auto n = g.rows();
  Matrix out = Matrix::Zero(n, n);
  for (int k = 0; k < e.rank; ++k) {
    out.noalias() += (1.0 / std::sqrt(e.values(k))) * e.vectors.col(k) *
                     e.vectors.col(k).transpose();
  }
  return out;
}

/// Orthonormal basis of the image of a PSD matrix with its positive spectrum:
/// G = U diag(sigma) U^T, U^T U = I_r.
struct ReducedBasis {
  Matrix U;
  Vector sigma;

  int rank() const { return static_cast<int>(sigma.size()); }
  Matrix Sigma() const { return sigma.asDiagonal(); }
  Matrix reconstruct() const { return U * sigma.asDiagonal() * U.transpose(); }
  Matrix projector() const { return U * U.transpose(); }
};

inline ReducedBasis reduced_basis(const Matrix& g) {
  const SymmetricEigen e = symmetric_eigen(g);
  if (e.rank == 0) {
    throw NumericalError("reduced_basis: matrix has rank 0");
  }
  return ReducedBasis{e.vectors.leftCols(e.rank), e.values.head(e.rank)};
}

/// x^T G^+ x for a symmetric PSD G.
inline double quad_form_pinv(const Matrix& g, const Vector& x) {
  detail::require_square(g, "quad_form_pinv");
  detail::require_dim(g.rows(), x.size(), "quad_form_pinv");
  const SymmetricEigen e = symmetric_eigen(g);
  double acc = 0.0;
  for (int k = 0; k < e.rank; ++k) {
    const double c = e.vectors.col(k).dot(x);
    acc += c * c / e.values(k);
  }
  return acc;
}

struct IdentitySides {
  double lhs = 0.0;
  double rhs = 0.0;

  double gap() const { return std::abs(lhs - rhs); }
};

/// v^T V^{-1} u  against  1 - det(V - u v^T) / det(V).
inline IdentitySides det_ratio_identity(const Matrix& v_mat, const Vector& u,
                                        const Vector& v) {
  detail::require_square(v_mat, "det_ratio_identity");
  detail::require_dim(v_mat.rows(), u.size(), "det_ratio_identity");
  detail::require_dim(v_mat.rows(), v.size(), "det_ratio_identity");
  detail::require_finite(v_mat, "det_ratio_identity");
  if (!is_invertible(v_mat)) {
    throw NumericalError("det_ratio_identity: V is singular");
  }
  const Eigen::PartialPivLU<Matrix> lu(v_mat);
  IdentitySides out;
  out.lhs = v.dot(lu.solve(u));
  const Matrix updated = v_mat - u * v.transpose();
  out.rhs = 1.0 - updated.determinant() / lu.determinant();
  return out;
}

/// x^T A^+ x  against  1 - prod_{k<=r} lambda_k(B) / lambda_k(A), A = B + x x^T,
/// r = rank(A).
inline IdentitySides eigen_product_identity(const Matrix& b, const Vector& x) {
  detail::require_square(b, "eigen_product_identity");
  detail::require_dim(b.rows(), x.size(), "eigen_product_identity");
  const Matrix a = b + x * x.transpose();
  const SymmetricEigen ea = symmetric_eigen(a);
  if (ea.rank == 0) {
    throw NumericalError("eigen_product_identity: B + x x^T has rank 0");
  }
  const SymmetricEigen eb = symmetric_eigen(b);
  IdentitySides out;
  for (int k = 0; k < ea.rank; ++k) {
    const double c = ea.vectors.col(k).dot(x);
    out.lhs += c * c / ea.values(k);
  }
  double prod = 1.0;
  for (int k = 0; k < ea.rank; ++k) prod *= eb.values(k) / ea.values(k);
  out.rhs = 1.0 - prod;
  return out;
}

/// Running Gram matrix G_t = sum x_s x_s^T with its spectrum and rank events.
///
/// `b` is carried here but advanced only by the forecaster's observe step,
/// since b_{t-1} lags x_t by one round.
struct GramState {
  Matrix G;
  Vector b;
  int t = 0;
  int rank = 0;
  Vector eigs;            // non-increasing
  Matrix eigvecs;         // column k pairs with eigs(k)
  std::vector<int> events;  // rounds at which the rank went up
  // Set when an eigenvalue lies within two decades of the rank cutoff, or a
  // rank change other than +0/+1 was seen.
  bool near_cutoff = false;

  static GramState empty(int d) {
    if (d < 1) throw DimensionError("GramState: dimension must be >= 1");
    GramState s;
    s.G = Matrix::Zero(d, d);
    s.b = Vector::Zero(d);
    s.eigs = Vector::Zero(d);
    s.eigvecs = Matrix::Identity(d, d);
    return s;
  }

  int dim() const { return static_cast<int>(G.rows()); }

  /// Smallest positive eigenvalue, 0 when the rank is 0.
  double smallest_positive() const { return rank ? eigs(rank - 1) : 0.0; }

  Matrix pinv() const {
    SymmetricEigen e{eigs, eigvecs, rank};
    return pinv_from_eigen(e);
  }
};

namespace detail {

inline bool hovers_near_cutoff(const SymmetricEigen& e) {
  const double cut = e.cutoff();
  if (cut <= 0.0) return false;
  for (Eigen::Index k = 0; k < e.values.size(); ++k) {
    const double v = e.values(k);
    if (v > cut / 100.0 && v < cut * 100.0) return true;
  }
  return false;
}

}  // namespace detail

/// Absorbs x into the Gram matrix and refreshes spectrum, rank and events.
inline GramState gram_update(const GramState& state, const Vector& x) {
  detail::require_dim(state.dim(), x.size(), "gram_update");
  if (!x.allFinite()) throw NumericalError("gram_update: non-finite feature");
  GramState next = state;
  next.G.noalias() += x * x.transpose();
  next.t = state.t + 1;
  const SymmetricEigen e = symmetric_eigen(next.G);
  next.eigs = e.values;
  next.eigvecs = e.vectors;
  next.rank = e.rank;
  if (detail::hovers_near_cutoff(e)) next.near_cutoff = true;
  const int delta = next.rank - state.rank;
  if (delta != 0 && delta != 1) next.near_cutoff = true;
  // Keep |events| == rank even if the cutoff makes the rank jump or dip.
  for (int k = 0; k < delta; ++k) next.events.push_back(next.t);
  for (int k = 0; k < -delta; ++k) next.events.pop_back();
  return next;
}

}  // namespace regretlab

#endif  // REGRETLAB_LINALG_HPP
