#ifndef REGRETLAB_FORECASTERS_HPP
#define REGRETLAB_FORECASTERS_HPP

#include "regretlab/linalg.hpp"

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace regretlab {

enum class ForecasterKind { VAW, AdaptedRidge, ZeroReg, MM };

inline std::string to_string(ForecasterKind k) {
  switch (k) {
    case ForecasterKind::VAW: return "vaw";
    case ForecasterKind::AdaptedRidge: return "adapted";
    case ForecasterKind::ZeroReg: return "zeroreg";
    case ForecasterKind::MM: return "mm";
  }
  return "unknown";
}

inline ForecasterKind parse_forecaster_kind(const std::string& s) {
  if (s == "vaw") return ForecasterKind::VAW;
  if (s == "adapted" || s == "adaptedridge") return ForecasterKind::AdaptedRidge;
  if (s == "zeroreg") return ForecasterKind::ZeroReg;
  if (s == "mm") return ForecasterKind::MM;
  throw std::invalid_argument("unknown forecaster kind '" + s + "'");
}

/// Configuration of one forecaster.
///
///  - VAW:          u_t = (lambda I + G_t)^{-1} b_{t-1}, needs lambda > 0.
///  - AdaptedRidge: u_t = (lambda G_T + G_t)^+ b_{t-1}, needs G_T, either as
///                  `gram_prior` or summed from `feature_schedule`.
///  - ZeroReg:      u_t = G_t^+ b_{t-1} / (1 + gram_estimate_bias).
///  - MM:           u_t = P_t b_{t-1}, P_t from the backward recursion over
///                  `feature_schedule`.
///
/// `gram_estimate_bias > 0` is the variant that regularizes with the running
/// Gram matrix G_t instead of G_T; its only effect is the 1/(1 + lambda)
/// shrinkage, so it is kept as a ZeroReg option rather than a fifth kind.
struct ForecasterSpec {
  ForecasterKind kind = ForecasterKind::ZeroReg;
  double lambda = 0.0;
  std::optional<Matrix> gram_prior;
  std::optional<std::vector<Vector>> feature_schedule;
  double gram_estimate_bias = 0.0;
  bool sherman_morrison = false;  // VAW only

  static ForecasterSpec vaw(double lambda, bool fast_path = false) {
    ForecasterSpec s;
    s.kind = ForecasterKind::VAW;
    s.lambda = lambda;
    s.sherman_morrison = fast_path;
    return s;
  }
  static ForecasterSpec adapted_ridge(double lambda, Matrix gram_T) {
    ForecasterSpec s;
    s.kind = ForecasterKind::AdaptedRidge;
    s.lambda = lambda;
    s.gram_prior = std::move(gram_T);
    return s;
  }
  static ForecasterSpec adapted_ridge(double lambda,
                                      std::vector<Vector> schedule) {
    ForecasterSpec s;
    s.kind = ForecasterKind::AdaptedRidge;
    s.lambda = lambda;
    s.feature_schedule = std::move(schedule);
    return s;
  }
  static ForecasterSpec zero_reg() { return ForecasterSpec{}; }
  static ForecasterSpec zero_reg_estimated_gram(double lambda) {
    ForecasterSpec s;
    s.gram_estimate_bias = lambda;
    return s;
  }
  static ForecasterSpec mm(std::vector<Vector> schedule) {
    ForecasterSpec s;
    s.kind = ForecasterKind::MM;
    s.feature_schedule = std::move(schedule);
    return s;
  }

  std::string name() const { return to_string(kind); }

  /// With `schedule_from_transcript`, AdaptedRidge and MM may omit their
  /// schedule because evaluate() supplies the transcript's features.
  void validate(bool schedule_from_transcript = false) const {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
      throw std::invalid_argument("forecaster: lambda must be finite and >= 0");
    }
    switch (kind) {
      case ForecasterKind::VAW:
        if (!(lambda > 0.0)) {
          throw std::invalid_argument("vaw: lambda must be > 0");
        }
        break;
      case ForecasterKind::AdaptedRidge:
        if (!gram_prior && !feature_schedule && !schedule_from_transcript) {
          throw std::invalid_argument(
              "adapted: needs a Gram prior or a feature schedule");
        }
        break;
      case ForecasterKind::MM:
        if (schedule_from_transcript && !feature_schedule) break;
        if (!feature_schedule || feature_schedule->empty()) {
          throw std::invalid_argument("mm: needs a non-empty feature schedule");
        }
        break;
      case ForecasterKind::ZeroReg:
        break;
    }
    if (gram_estimate_bias < 0.0) {
      throw std::invalid_argument("zeroreg: gram_estimate_bias must be >= 0");
    }
    if (sherman_morrison && kind != ForecasterKind::VAW) {
      throw std::invalid_argument(
          "sherman_morrison fast path only applies to vaw");
    }
  }
};

struct RoundRecord {
  int t = 0;
  Vector x;
  double yhat = 0.0;
  double y = 0.0;
  double loss = 0.0;
};

inline Matrix gram_of(std::span<const Vector> features) {
  if (features.empty()) throw std::invalid_argument("gram_of: no features");
  const auto d = features.front().size();
  Matrix g = Matrix::Zero(d, d);
  for (const Vector& x : features) {
    detail::require_dim(d, x.size(), "gram_of");
    g.noalias() += x * x.transpose();
  }
  return g;
}

/// P_1..P_T of the backward recursion P_T = G_T^+,
/// P_{t-1} = P_t + P_t x_t x_t^T P_t.  Element t-1 holds P_t.
inline std::vector<Matrix> mm_precompute(std::span<const Vector> features) {
  if (features.empty()) {
    throw std::invalid_argument("mm_precompute: empty feature sequence");
  }
  const auto n = features.size();
  std::vector<Matrix> p(n);
  p[n - 1] = symmetric_pinv(gram_of(features));
  for (std::size_t t = n - 1; t >= 1; --t) {
    const Vector px = p[t] * features[t];
    p[t - 1] = p[t] + px * px.transpose();
  }
  return p;
}

struct MMCondition {
  bool ok = true;
  std::vector<double> margins;  // margins[t-1] = sum_{s<t} |x_s^T P_t^+ x_t|
};

inline MMCondition mm_condition_check(std::span<const Vector> features,
                                      std::span<const Matrix> p) {
  if (p.size() != features.size()) {
    throw DimensionError("mm_condition_check: P count != feature count");
  }
  MMCondition out;
  out.margins.resize(features.size(), 0.0);
  for (std::size_t t = 0; t < features.size(); ++t) {
    const Vector w = symmetric_pinv(p[t]) * features[t];
    double acc = 0.0;
    for (std::size_t s = 0; s < t; ++s) acc += std::abs(features[s].dot(w));
    out.margins[t] = acc;
    if (acc > 1.0) out.ok = false;
  }
  return out;
}

inline MMCondition mm_condition_check(std::span<const Vector> features) {
  const std::vector<Matrix> p = mm_precompute(features);
  return mm_condition_check(features, p);
}

/// Online forecaster running the predict/observe protocol.
///
/// predict(x) absorbs x into the Gram matrix before forming u_t, and must be
/// followed by exactly one observe(y).  Predictions are never clipped.
class Forecaster {
 public:
  Forecaster(ForecasterSpec spec, int d)
      : spec_(std::move(spec)), gram_(GramState::empty(d)) {
    spec_.validate();
    weights_ = Vector::Zero(d);
    if (spec_.feature_schedule) {
      for (const Vector& x : *spec_.feature_schedule) {
        detail::require_dim(d, x.size(), "forecaster schedule");
      }
    }
    if (spec_.kind == ForecasterKind::AdaptedRidge) {
      gram_T_ = spec_.gram_prior ? *spec_.gram_prior
                                 : gram_of(*spec_.feature_schedule);
      detail::require_square(gram_T_, "adapted gram prior");
      detail::require_dim(d, gram_T_.rows(), "adapted gram prior");
      detail::require_symmetric(gram_T_, "adapted gram prior");
    }
    if (spec_.kind == ForecasterKind::MM) {
      mm_p_ = mm_precompute(*spec_.feature_schedule);
    }
    if (spec_.sherman_morrison) {
      a_inv_ = Matrix::Identity(d, d) / spec_.lambda;
    }
  }

  int dim() const { return gram_.dim(); }
  /// Completed rounds (pairs absorbed by observe).
  int round() const { return completed_; }
  const ForecasterSpec& spec() const { return spec_; }
  const GramState& gram() const { return gram_; }
  /// u_t from the latest predict (zero before the first one).
  const Vector& weights() const { return weights_; }
  const std::vector<Matrix>& mm_matrices() const { return mm_p_; }

  double predict(const Vector& x) {
    if (pending_) {
      throw std::logic_error("predict called twice without observe");
    }
    detail::require_dim(dim(), x.size(), "predict");
    GramState next = gram_update(gram_, x);
    Matrix next_inv;
    weights_ = solve(next, x, spec_.sherman_morrison ? &next_inv : nullptr);
    gram_ = std::move(next);
    if (spec_.sherman_morrison) a_inv_ = std::move(next_inv);
    pending_x_ = x;
    pending_ = true;
    return weights_.dot(x);
  }

  void observe(double y) {
    if (!pending_) throw std::logic_error("observe without matching predict");
    if (!std::isfinite(y)) throw NumericalError("observe: non-finite y");
    gram_.b.noalias() += y * pending_x_;
    pending_ = false;
    ++completed_;
  }

  /// u_t that predict(x) would use, without changing state.
  Vector weights_for(const Vector& x) const {
    if (pending_) {
      throw std::logic_error("weights_for called between predict and observe");
    }
    detail::require_dim(dim(), x.size(), "weights_for");
    return solve(gram_update(gram_, x), x, nullptr);
  }

  /// Prediction that predict(x) would return, without changing state.
  double peek(const Vector& x) const { return weights_for(x).dot(x); }

 private:
  Vector solve(const GramState& g, const Vector& x, Matrix* next_inv) const {
    const int d = dim();
    const Vector& b = g.b;  // still b_{t-1}
    switch (spec_.kind) {
      case ForecasterKind::VAW: {
        if (spec_.sherman_morrison) {
          const Vector ax = a_inv_ * x;
          Matrix inv = a_inv_ - (ax * ax.transpose()) / (1.0 + x.dot(ax));
          Vector u = inv * b;
          if (next_inv) *next_inv = std::move(inv);
          return u;
        }
        Matrix a = g.G;
        a.diagonal().array() += spec_.lambda;
        return a.ldlt().solve(b);
      }
      case ForecasterKind::AdaptedRidge:
        return symmetric_pinv(spec_.lambda * gram_T_ + g.G) * b;
      case ForecasterKind::ZeroReg:
        return g.pinv() * b / (1.0 + spec_.gram_estimate_bias);
      case ForecasterKind::MM: {
        const auto t = static_cast<std::size_t>(g.t);
        if (t > mm_p_.size()) {
          throw std::out_of_range("mm: feature schedule exhausted at round " +
                                  std::to_string(t));
        }
        return mm_p_[t - 1] * b;
      }
    }
    return Vector::Zero(d);
  }

  ForecasterSpec spec_;
  GramState gram_;
  Vector weights_;
  Matrix gram_T_;
  std::vector<Matrix> mm_p_;
  Matrix a_inv_;
  Vector pending_x_;
  bool pending_ = false;
  int completed_ = 0;
};

/// Runs the protocol over a full transcript and returns per-round records.
inline std::vector<RoundRecord> run_protocol(Forecaster& f,
                                             std::span<const Vector> xs,
                                             std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw DimensionError("run_protocol: feature/observation length mismatch");
  }
  std::vector<RoundRecord> out;
  out.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    RoundRecord r;
    r.t = static_cast<int>(i) + 1;
    r.x = xs[i];
    r.yhat = f.predict(xs[i]);
    r.y = ys[i];
    r.loss = (r.y - r.yhat) * (r.y - r.yhat);
    f.observe(ys[i]);
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<double> predictions(std::span<const RoundRecord> records) {
  std::vector<double> out;
  out.reserve(records.size());
  for (const RoundRecord& r : records) out.push_back(r.yhat);
  return out;
}

}  // namespace regretlab

#endif  // REGRETLAB_FORECASTERS_HPP
