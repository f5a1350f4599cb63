#ifndef REGRETLAB_ORACLE_HPP
#define REGRETLAB_ORACLE_HPP

// Numerical minimization of the forecasters' defining objectives, written
// against the raw transcript so it shares no code path with the closed forms.
//
// Each objective is a convex quadratic  Q(u) = u^T H u - 2 b^T u + const with
//   VAW:          H = lambda I     + sum_{s<=t} x_s x_s^T
//   AdaptedRidge: H = lambda G_T   + sum_{s<=t} x_s x_s^T
//   ZeroReg:      H =                sum_{s<=t} x_s x_s^T
// and b = sum_{s<t} y_s x_s.  Conjugate gradient started at 0 stays in the
// range of H, so on a singular but consistent system it lands on the
// minimal-norm minimizer.

#include "regretlab/forecasters.hpp"
#include "regretlab/linalg.hpp"

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace regretlab::oracle {

struct Objective {
  ForecasterKind kind = ForecasterKind::ZeroReg;
  double lambda = 0.0;
  std::vector<Vector> schedule;  // AdaptedRidge regularizer features
  std::vector<Vector> xs;        // x_1..x_t (current feature last)
  std::vector<double> ys;        // y_1..y_{t-1}

  Vector hessian_times(const Vector& v) const {
    Vector out = Vector::Zero(v.size());
    if (kind == ForecasterKind::VAW) out += lambda * v;
    if (kind == ForecasterKind::AdaptedRidge) {
      for (const Vector& x : schedule) out += lambda * x.dot(v) * x;
    }
    for (const Vector& x : xs) out += x.dot(v) * x;
    return out;
  }

  Vector linear_term() const {
    Vector b = Vector::Zero(xs.front().size());
    for (std::size_t s = 0; s < ys.size(); ++s) b += ys[s] * xs[s];
    return b;
  }

  double value(const Vector& u) const {
    double acc = 0.0;
    if (kind == ForecasterKind::VAW) acc += lambda * u.squaredNorm();
    if (kind == ForecasterKind::AdaptedRidge) {
      for (const Vector& x : schedule) acc += lambda * x.dot(u) * x.dot(u);
    }
    for (std::size_t s = 0; s < ys.size(); ++s) {
      const double r = ys[s] - u.dot(xs[s]);
      acc += r * r;
    }
    const double c = u.dot(xs.back());
    return acc + c * c;
  }
};

/// Conjugate gradient on H u = b from u = 0, restarted every d steps.
inline Vector minimize(const Objective& obj, int max_restarts = 200,
                       double rel_tol = 1e-15) {
  if (obj.xs.empty() || obj.ys.size() + 1 != obj.xs.size()) {
    throw std::invalid_argument("oracle: need t features and t-1 observations");
  }
  const Vector b = obj.linear_term();
  const auto d = b.size();
  Vector u = Vector::Zero(d);
  const double stop = rel_tol * (1.0 + b.norm());
  for (int restart = 0; restart < max_restarts; ++restart) {
    Vector r = b - obj.hessian_times(u);
    if (r.norm() <= stop) break;
    Vector p = r;
    double rr = r.squaredNorm();
    for (Eigen::Index k = 0; k < d; ++k) {
      const Vector hp = obj.hessian_times(p);
      const double curv = p.dot(hp);
      if (!(curv > 0.0)) break;
      const double step = rr / curv;
      u += step * p;
      r -= step * hp;
      const double rr_next = r.squaredNorm();
      if (std::sqrt(rr_next) <= stop) break;
      p = r + (rr_next / rr) * p;
      rr = rr_next;
    }
  }
  return u;
}

/// Objective for round t (1-based) of a transcript.
inline Objective objective_at(const ForecasterSpec& spec,
                              std::span<const Vector> xs,
                              std::span<const double> ys, int t) {
  if (spec.kind == ForecasterKind::MM) {
    throw std::invalid_argument("oracle: MM has no argmin objective");
  }
  Objective obj;
  obj.kind = spec.kind;
  obj.lambda = spec.lambda;
  if (spec.kind == ForecasterKind::AdaptedRidge) {
    if (!spec.feature_schedule) {
      throw std::invalid_argument("oracle: adapted needs the feature schedule");
    }
    obj.schedule = *spec.feature_schedule;
  }
  obj.xs.assign(xs.begin(), xs.begin() + t);
  obj.ys.assign(ys.begin(), ys.begin() + (t - 1));
  return obj;
}

}  // namespace regretlab::oracle

#endif  // REGRETLAB_ORACLE_HPP
