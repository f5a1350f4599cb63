#ifndef REGRETLAB_VERIFY_HPP
#define REGRETLAB_VERIFY_HPP

// Built-in invariant suite run by `regretlab verify`.  Every check draws its
// own random instances from (seed, check-specific stream) and reports the
// worst error it saw.

#include "regretlab/forecasters.hpp"
#include "regretlab/linalg.hpp"
#include "regretlab/oracle.hpp"
#include "regretlab/parallel.hpp"
#include "regretlab/random.hpp"
#include "regretlab/regret.hpp"
#include "regretlab/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

namespace regretlab {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

namespace verify_detail {

inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

inline CheckResult result(std::string name, bool ok, double worst, int count,
                          const std::string& what = "max error") {
  return CheckResult{std::move(name), ok,
                     what + " " + sci(worst) + " over " +
                         std::to_string(count) + " instances"};
}

template <typename Rng>
int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

template <typename Rng>
double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

template <typename Rng>
std::vector<Vector> gaussian_features(Rng& rng, int d, int T) {
  std::vector<Vector> xs;
  xs.reserve(T);
  for (int t = 0; t < T; ++t) xs.push_back(rnd::gaussian_vector(rng, d));
  return xs;
}

template <typename Rng>
std::vector<double> uniform_obs(Rng& rng, int T) {
  std::vector<double> ys(T);
  for (double& y : ys) y = uniform(rng, -1.0, 1.0);
  return ys;
}

/// Features living in a subspace whose dimension grows over time, with some
/// null rounds mixed in.
template <typename Rng>
std::vector<Vector> staircase_features(Rng& rng, int d, int T) {
  const Matrix basis = rnd::orthogonal(rng, d);
  std::vector<Vector> xs;
  int k = uniform_int(rng, 0, d);
  for (int t = 0; t < T; ++t) {
    if (k < d && uniform(rng, 0.0, 1.0) < 0.15) ++k;
    if (k == 0 || uniform(rng, 0.0, 1.0) < 0.1) {
      xs.push_back(Vector::Zero(d));
      continue;
    }
    xs.push_back(basis.leftCols(k) * rnd::gaussian_vector(rng, k));
  }
  return xs;
}

inline std::vector<double> run_predictions(const ForecasterSpec& spec, int d,
                                           std::span<const Vector> xs,
                                           std::span<const double> ys) {
  Forecaster f(spec, d);
  return predictions(run_protocol(f, xs, ys));
}

inline double max_abs_diff(const std::vector<double>& a,
                           const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

}  // namespace verify_detail

/// Four Penrose properties for random matrices of mixed shape, rank and scale.
inline CheckResult check_penrose(std::uint64_t seed, int count = 1000,
                                 double tol = 1e-8) {
  namespace vd = verify_detail;
  auto rng = stream_rng(seed, 101);
  bool ok = true;
  int rank_deficient = 0;
  int non_square = 0;
  for (int i = 0; i < count; ++i) {
    const int m = vd::uniform_int(rng, 1, 6);
    const int n = vd::uniform_int(rng, 1, 6);
    const int r = vd::uniform_int(rng, 0, std::min(m, n));
    const double scale = std::pow(10.0, vd::uniform(rng, -3.0, 3.0));
    const Matrix a = rnd::with_rank(rng, m, n, r, scale);
    if (r < std::min(m, n)) ++rank_deficient;
    if (m != n) ++non_square;
    if (!penrose_check(a, pseudoinverse(a), tol)) ok = false;
  }
  return CheckResult{"penrose_properties", ok,
                     std::to_string(count) + " matrices (" +
                         std::to_string(rank_deficient) + " rank-deficient, " +
                         std::to_string(non_square) + " non-square)"};
}

/// || M^T (lambda I + M M^T)^{-1} - M^+ || shrinks as lambda -> 0 and is below
/// 1e-4 ||M^+|| at lambda = 1e-6.
inline CheckResult check_pinv_limit(std::uint64_t seed, int count = 50) {
  namespace vd = verify_detail;
  auto rng = stream_rng(seed, 102);
  bool ok = true;
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const int m = vd::uniform_int(rng, 1, 6);
    const int n = vd::uniform_int(rng, 1, 6);
    const int r = vd::uniform_int(rng, 1, std::min(m, n));
    const Matrix a = rnd::with_rank(rng, m, n, r);
    const Matrix p = pseudoinverse(a);
    double prev = INFINITY;
    for (double lambda : {1e-2, 1e-4, 1e-6}) {
      Matrix reg = a * a.transpose();
      reg.diagonal().array() += lambda;
      const Matrix approx = reg.ldlt().solve(a).transpose();
      const double err = (approx - p).norm();
      if (err > prev * (1.0 + 1e-9)) ok = false;
      prev = err;
    }
    const double rel = prev / p.norm();
    worst = std::max(worst, rel);
    if (!(rel < 1e-4)) ok = false;
  }
  return vd::result("pinv_limit", ok, worst, count,
                    "max relative error at 1e-6");
}

/// M^+ = M^T (M M^T)^+.
inline CheckResult check_pinv_product_form(std::uint64_t seed, int count = 200) {
  namespace vd = verify_detail;
  auto rng = stream_rng(seed, 103);
  bool ok = true;
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const int m = vd::uniform_int(rng, 1, 6);
    const int n = vd::uniform_int(rng, 1, 6);
    const int r = vd::uniform_int(rng, 0, std::min(m, n));
    const double scale = std::pow(10.0, vd::uniform(rng, -2.0, 2.0));
    const Matrix a = rnd::with_rank(rng, m, n, r, scale);
    const Matrix p = pseudoinverse(a);
    const double err =
        (p - a.transpose() * symmetric_pinv(a * a.transpose())).norm();
    const double rel = p.norm() > 0.0 ? err / p.norm() : err;
    worst = std::max(worst, rel);
    if (!(err <= 1e-8 * p.norm())) ok = false;
  }
  return vd::result("pinv_product_form", ok, worst, count,
                    "max relative error");
}

/// For consistent M x = z, M^+ z solves the system with the smallest norm.
inline CheckResult check_min_norm_solution(std::uint64_t seed,
                                           int count = 200) {
  namespace vd = verify_detail;
  auto rng = stream_rng(seed, 104);
  bool ok = true;
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const int m = vd::uniform_int(rng, 1, 6);
    const int n = vd::uniform_int(rng, 1, 6);
    const int r = vd::uniform_int(rng, 0, std::min(m, n));
    const Matrix a = rnd::with_rank(rng, m, n, r);
    const Vector x0 = rnd::gaussian_vector(rng, n);
    const Vector z = a * x0;
    const Vector xs = pseudoinverse(a) * z;
    const double resid = (a * xs - z).norm();
    const double scale = 1.0 + a.norm() * x0.norm();
    worst = std::max(worst, resid / scale);
    if (resid > 1e-10 * scale) ok = false;
    if (xs.norm() > x0.norm() * (1.0 + 1e-12) + 1e-14) ok = false;
  }
  return vd::result("min_norm_solution", ok, worst, count,
                    "max relative residual");
}

/// Eigenvalues of G_t never decrease, the rank grows by at most one per
/// round, |events| equals the rank, and every absorbed feature lies in the
/// image of G_t.
inline std::vector<CheckResult> check_gram_invariants(std::uint64_t seed,
                                                      int count = 100) {
  namespace vd = verify_detail;
  auto rng = stream_rng(seed, 105);
  bool mono = true, events = true, image = true;
  double worst_mono = 0.0, worst_image = 0.0;
  for (int i = 0; i < count; ++i) {
    const int d = vd::uniform_int(rng, 1, 5);
    const int T = vd::uniform_int(rng, 1, 40);
    const std::vector<Vector> xs = vd::staircase_features(rng, d, T);
    GramState g = GramState::empty(d);
    for (int t = 0; t < T; ++t) {
      const GramState next = gram_update(g, xs[t]);
      const double tol = 1e-10 * (1.0 + next.eigs(0));
      for (int k = 0; k < d; ++k) {
        const double drop = g.eigs(k) - next.eigs(k);
        worst_mono = std::max(worst_mono, drop);
        if (drop > tol) mono = false;
      }
      const int delta = next.rank - g.rank;
      if (delta < 0 || delta > 1) events = false;
      if (static_cast<int>(next.events.size()) != next.rank) events = false;
      if (next.rank > 0) {
        const Matrix proj = reduced_basis(next.G).projector();
        for (int s = 0; s <= t; ++s) {
          const double err = (proj * xs[s] - xs[s]).norm();
          worst_image = std::max(worst_image, err / (1.0 + xs[s].norm()));
          if (err > 1e-8 * (1.0 + xs[s].norm())) image = false;
        }
      }
      g = next;
    }
  }
  return {vd::result("eigenvalue_monotonicity", mono, worst_mono, count,
                     "max eigenvalue drop"),
          CheckResult{"rank_events", events,
                      "rank steps in {0,1} and |events| = rank over " +
                          std::to_string(count) + " sequences"},
          vd::result("image_growth", image, worst_image, count,
                     "max projection residual")};
}

/// v^T V^{-1} u = 1 - det(V - u v^T) / det(V).
inline CheckResult check_det_ratio_identity(std::uint64_t seed,
                                            int count = 1000,
                                            double tol = 1e-8) {
  namespace vd = verify_detail;
  auto rng = stream_rng(seed, 106);
  bool ok = true;
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const int d = vd::uniform_int(rng, 1, 6);
    const Matrix v = rnd::invertible(rng, d);
    const Vector a = rnd::gaussian_vector(rng, d);
    const Vector b = rnd::gaussian_vector(rng, d);
    const IdentitySides s = det_ratio_identity(v, a, b);
    const double rel =
        s.gap() / std::max({1.0, std::abs(s.lhs), std::abs(s.rhs)});
    worst = std::max(worst, rel);
    if (!(rel <= tol)) ok = false;
  }
  return vd::result("det_ratio_identity", ok, worst, count,
                    "max relative gap");
}

/// x^T A^+ x = 1 - prod lambda_k(B) / lambda_k(A) with A = B + x x^T.
inline CheckResult check_eigen_product_identity(std::uint64_t seed,
                                                int count = 1000,
                                                double tol = 1e-8) {
  namespace vd = verify_detail;
  auto rng = stream_rng(seed, 107);
  bool ok = true;
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const int d = vd::uniform_int(rng, 1, 6);
    const int r = vd::uniform_int(rng, 0, d);
    const Matrix b = rnd::psd(rng, d, r);
    Vector x = rnd::gaussian_vector(rng, d);
    if (r > 0 && vd::uniform(rng, 0.0, 1.0) < 0.3) {
      // x inside the image of B: the rank does not grow.
      x = b * x;
    }
    const IdentitySides s = eigen_product_identity(b, x);
    const double rel =
        s.gap() / std::max({1.0, std::abs(s.lhs), std::abs(s.rhs)});
    worst = std::max(worst, rel);
    if (!(rel <= tol)) ok = false;
  }
  return vd::result("eigen_product_identity", ok, worst, count,
                    "max relative gap");
}

/// AdaptedRidge on x_t against VAW on G_T^{-1/2} x_t, full-rank G_T.
inline CheckResult check_whitening_full(std::uint64_t seed, int count = 100,
                                        double tol = 1e-8) {
  namespace vd = verify_detail;
  auto rng = stream_rng(seed, 108);
  bool ok = true;
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const int d = vd::uniform_int(rng, 1, 5);
    const int T = vd::uniform_int(rng, d + 1, 50);
    const double lambda = std::pow(10.0, vd::uniform(rng, -2.0, 1.0));
    const std::vector<Vector> xs = vd::gaussian_features(rng, d, T);
    const std::vector<double> ys = vd::uniform_obs(rng, T);
    const Matrix gram_T = gram_of(xs);
    const Matrix w = pinv_sqrt(gram_T);
    std::vector<Vector> white;
    for (const Vector& x : xs) white.push_back(w * x);
    const auto a = vd::run_predictions(
        ForecasterSpec::adapted_ridge(lambda, gram_T), d, xs, ys);
    const auto v =
        vd::run_predictions(ForecasterSpec::vaw(lambda), d, white, ys);
    const double err = vd::max_abs_diff(a, v);
    worst = std::max(worst, err);
    if (!(err < tol)) ok = false;
  }
  return vd::result("whitening_full_rank", ok, worst, count);
}

/// Rank-deficient G_T = U S U^T: AdaptedRidge on x_t against VAW on
/// S^{-1/2} U^T x_t in r dimensions.
inline CheckResult check_whitening_reduced(std::uint64_t seed, int count = 100,
                                           double tol = 1e-8) {
  namespace vd = verify_detail;
  auto rng = stream_rng(seed, 109);
  bool ok = true;
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const int d = vd::uniform_int(rng, 2, 5);
    const int r = vd::uniform_int(rng, 1, d - 1);
    const int T = vd::uniform_int(rng, r + 1, 50);
    const double lambda = std::pow(10.0, vd::uniform(rng, -2.0, 1.0));
    const Matrix basis = rnd::gaussian(rng, d, r);
    std::vector<Vector> xs;
    for (int t = 0; t < T; ++t) {
      xs.push_back(basis * rnd::gaussian_vector(rng, r));
    }
    const std::vector<double> ys = vd::uniform_obs(rng, T);
    const Matrix gram_T = gram_of(xs);
    const ReducedBasis rb = reduced_basis(gram_T);
    if (rb.rank() != r) {
      ok = false;
      continue;
    }
    const Matrix w = rb.sigma.cwiseSqrt().cwiseInverse().asDiagonal() *
                     rb.U.transpose();
    std::vector<Vector> reduced;
    for (const Vector& x : xs) reduced.push_back(w * x);
    const auto a = vd::run_predictions(
        ForecasterSpec::adapted_ridge(lambda, gram_T), d, xs, ys);
    const auto v =
        vd::run_predictions(ForecasterSpec::vaw(lambda), r, reduced, ys);
    const double err = vd::max_abs_diff(a, v);
    worst = std::max(worst, err);
    if (!(err < tol)) ok = false;
  }
  return vd::result("whitening_rank_deficient", ok, worst, count);
}

/// AdaptedRidge predictions on (Gamma x_t) with prior Gamma G_T Gamma^T equal
/// those on (x_t) with prior G_T.
inline CheckResult check_scale_invariance_adapted(std::uint64_t seed,
                                                  int count = 100,
                                                  double tol = 1e-8) {
  namespace vd = verify_detail;
  auto rng = stream_rng(seed, 110);
  bool ok = true;
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const int d = vd::uniform_int(rng, 1, 5);
    const int T = vd::uniform_int(rng, d + 1, 50);
    const double lambda = std::pow(10.0, vd::uniform(rng, -2.0, 1.0));
    FeatureSequence seq;
    seq.d = d;
    seq.xs = vd::gaussian_features(rng, d, T);
    seq.ys = vd::uniform_obs(rng, T);
    const Matrix gamma = rnd::invertible(rng, d);
    const FeatureSequence mapped = apply_linear_map(seq, gamma);
    const Matrix gram_T = gram_of(seq.xs);
    const auto a = vd::run_predictions(
        ForecasterSpec::adapted_ridge(lambda, gram_T), d, seq.xs, seq.ys);
    const auto b = vd::run_predictions(
        ForecasterSpec::adapted_ridge(lambda,
                                      Matrix(gamma * gram_T * gamma.transpose())),
        d, mapped.xs, mapped.ys);
    const double err = vd::max_abs_diff(a, b);
    worst = std::max(worst, err);
    if (!(err < tol)) ok = false;
  }
  return vd::result("scale_invariance_adapted", ok, worst, count);
}

/// ZeroReg predictions unchanged when every feature is scaled by gamma > 0.
inline CheckResult check_scale_invariance_zeroreg(std::uint64_t seed,
                                                  int count = 100,
                                                  double tol = 1e-8) {
  namespace vd = verify_detail;
  auto rng = stream_rng(seed, 111);
  bool ok = true;
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const int d = vd::uniform_int(rng, 1, 5);
    const int T = vd::uniform_int(rng, 1, 50);
    FeatureSequence seq;
    seq.d = d;
    seq.xs = vd::gaussian_features(rng, d, T);
    seq.ys = vd::uniform_obs(rng, T);
    const auto base = vd::run_predictions(ForecasterSpec::zero_reg(), d,
                                          seq.xs, seq.ys);
    for (double gamma : {0.01, 1.0, 100.0}) {
      const FeatureSequence mapped =
          apply_linear_map(seq, gamma * Matrix::Identity(d, d));
      const auto p = vd::run_predictions(ForecasterSpec::zero_reg(), d,
                                         mapped.xs, mapped.ys);
      const double err = vd::max_abs_diff(base, p);
      worst = std::max(worst, err);
      if (!(err < tol)) ok = false;
    }
  }
  return vd::result("scale_invariance_zeroreg", ok, worst, count);
}

/// ZeroReg after the warm-up prefix reproduces VAW(lambda).
inline CheckResult check_warmup(std::uint64_t seed, int count = 50,
                                double tol = 1e-8) {
  namespace vd = verify_detail;
  auto rng = stream_rng(seed, 112);
  bool ok = true;
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const int d = vd::uniform_int(rng, 1, 5);
    const int T = vd::uniform_int(rng, 1, 100);
    const double lambda = std::pow(10.0, vd::uniform(rng, -2.0, 1.0));
    FeatureSequence seq;
    seq.d = d;
    seq.xs = vd::gaussian_features(rng, d, T);
    seq.ys = vd::uniform_obs(rng, T);
    const FeatureSequence warm = warmup_prefix(d, lambda).then(seq);
    auto z = vd::run_predictions(ForecasterSpec::zero_reg(), d, warm.xs,
                                 warm.ys);
    z.erase(z.begin(), z.begin() + d);
    const auto v =
        vd::run_predictions(ForecasterSpec::vaw(lambda), d, seq.xs, seq.ys);
    const double err = vd::max_abs_diff(z, v);
    worst = std::max(worst, err);
    if (!(err < tol)) ok = false;
  }
  return vd::result("warmup_reduction", ok, worst, count);
}

/// Every forecaster predicts exactly 0 on a null feature.
inline CheckResult check_null_feature(std::uint64_t seed, int count = 50) {
  namespace vd = verify_detail;
  auto rng = stream_rng(seed, 113);
  bool ok = true;
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const int d = vd::uniform_int(rng, 1, 4);
    const int T = vd::uniform_int(rng, 2, 20);
    std::vector<Vector> xs = vd::gaussian_features(rng, d, T);
    const std::vector<double> ys = vd::uniform_obs(rng, T);
    const int zero_at = vd::uniform_int(rng, 0, T - 1);
    xs[zero_at].setZero();
    const std::vector<ForecasterSpec> specs = {
        ForecasterSpec::vaw(1.0), ForecasterSpec::vaw(0.5, true),
        ForecasterSpec::adapted_ridge(0.1, xs), ForecasterSpec::zero_reg(),
        ForecasterSpec::zero_reg_estimated_gram(0.5), ForecasterSpec::mm(xs)};
    for (const ForecasterSpec& spec : specs) {
      const auto p = vd::run_predictions(spec, d, xs, ys);
      worst = std::max(worst, std::abs(p[zero_at]));
      if (p[zero_at] != 0.0) ok = false;
    }
  }
  return vd::result("null_feature", ok, worst, count,
                    "max |prediction| on x = 0");
}

/// VAW rank-one fast path against the reference re-solve.
inline CheckResult check_sherman_morrison(std::uint64_t seed, int count = 50,
                                          double tol = 1e-10) {
  namespace vd = verify_detail;
  auto rng = stream_rng(seed, 114);
  bool ok = true;
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const int d = vd::uniform_int(rng, 1, 5);
    const int T = vd::uniform_int(rng, 1, 200);
    const double lambda = std::pow(10.0, vd::uniform(rng, -1.0, 1.0));
    const std::vector<Vector> xs = vd::gaussian_features(rng, d, T);
    const std::vector<double> ys = vd::uniform_obs(rng, T);
    const auto ref =
        vd::run_predictions(ForecasterSpec::vaw(lambda), d, xs, ys);
    const auto fast =
        vd::run_predictions(ForecasterSpec::vaw(lambda, true), d, xs, ys);
    const double err = vd::max_abs_diff(ref, fast);
    worst = std::max(worst, err);
    if (!(err < tol)) ok = false;
  }
  return vd::result("sherman_morrison_fast_path", ok, worst, count);
}

/// ||G_T^{-1/2} b_T||^2 <= T B^2 for full-rank G_T.
inline CheckResult check_orthogonal_projection(std::uint64_t seed,
                                               int count = 100) {
  namespace vd = verify_detail;
  auto rng = stream_rng(seed, 115);
  bool ok = true;
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const int d = vd::uniform_int(rng, 1, 5);
    const int T = vd::uniform_int(rng, d, 100);
    const std::vector<Vector> xs = vd::gaussian_features(rng, d, T);
    const std::vector<double> ys = vd::uniform_obs(rng, T);
    Vector b = Vector::Zero(d);
    for (int t = 0; t < T; ++t) b += ys[t] * xs[t];
    const double B = max_abs(ys);
    const double lhs = (pinv_sqrt(gram_of(xs)) * b).squaredNorm();
    const double ratio = lhs / (T * B * B);
    worst = std::max(worst, ratio);
    if (!within_bound(lhs, T * B * B)) ok = false;
  }
  return vd::result("orthogonal_projection_bound", ok, worst, count,
                    "max ||G^-1/2 b||^2 / (T B^2)");
}

/// Closed-form weights against conjugate-gradient minimization of each
/// objective, d <= 3, T <= 10.  Agreement is measured relative to
/// 1 + ||u||.
inline CheckResult check_closed_form_oracle(std::uint64_t seed,
                                            int count = 200,
                                            double tol = 1e-6) {
  namespace vd = verify_detail;
  auto rng = stream_rng(seed, 116);
  bool ok = true;
  double worst = 0.0;
  int compared = 0;
  for (int i = 0; i < count; ++i) {
    const int d = vd::uniform_int(rng, 1, 3);
    const int T = vd::uniform_int(rng, 1, 10);
    const std::vector<Vector> xs = vd::uniform(rng, 0.0, 1.0) < 0.5
                                       ? vd::gaussian_features(rng, d, T)
                                       : vd::staircase_features(rng, d, T);
    const std::vector<double> ys = vd::uniform_obs(rng, T);
    const double lambda = std::pow(10.0, vd::uniform(rng, -2.0, 1.0));
    const std::vector<ForecasterSpec> specs = {
        ForecasterSpec::vaw(lambda),
        ForecasterSpec::adapted_ridge(lambda, xs), ForecasterSpec::zero_reg()};
    for (const ForecasterSpec& spec : specs) {
      Forecaster f(spec, d);
      for (int t = 1; t <= T; ++t) {
        f.predict(xs[t - 1]);
        const Vector closed = f.weights();
        f.observe(ys[t - 1]);
        const Vector num =
            oracle::minimize(oracle::objective_at(spec, xs, ys, t));
        const double err = (closed - num).norm() / (1.0 + closed.norm());
        worst = std::max(worst, err);
        ++compared;
        if (!(err < tol)) ok = false;
      }
    }
  }
  return CheckResult{"closed_form_vs_oracle", ok,
                     "max relative weight error " + verify_detail::sci(worst) +
                         " over " + std::to_string(compared) +
                         " rounds in " + std::to_string(count) + " instances"};
}

/// The full suite, in a fixed order.
inline std::vector<CheckResult> run_verify(std::uint64_t seed) {
  std::vector<CheckResult> out;
  out.push_back(check_penrose(seed));
  out.push_back(check_pinv_limit(seed));
  out.push_back(check_pinv_product_form(seed));
  out.push_back(check_min_norm_solution(seed));
  for (CheckResult& r : check_gram_invariants(seed)) out.push_back(std::move(r));
  out.push_back(check_det_ratio_identity(seed));
  out.push_back(check_eigen_product_identity(seed));
  out.push_back(check_whitening_full(seed));
  out.push_back(check_whitening_reduced(seed));
  out.push_back(check_scale_invariance_adapted(seed));
  out.push_back(check_scale_invariance_zeroreg(seed));
  out.push_back(check_warmup(seed));
  out.push_back(check_null_feature(seed));
  out.push_back(check_sherman_morrison(seed));
  out.push_back(check_orthogonal_projection(seed));
  out.push_back(check_closed_form_oracle(seed));
  return out;
}

}  // namespace regretlab

#endif  // REGRETLAB_VERIFY_HPP
