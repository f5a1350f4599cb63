#ifndef REGRETLAB_REGRET_HPP
#define REGRETLAB_REGRET_HPP

#include "regretlab/forecasters.hpp"
#include "regretlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace regretlab {

/// Relative slack granted to every regret <= bound verdict.
inline constexpr double kVerdictSlack = 1e-9;

inline bool within_bound(double regret, double bound) {
  return regret <= bound + kVerdictSlack * std::abs(bound);
}

struct OfflineOptimum {
  Vector u_star;  // minimal-norm minimizer G_T^+ b_T
  double loss = 0.0;
};

inline OfflineOptimum offline_optimum(std::span<const Vector> xs,
                                      std::span<const double> ys) {
  if (xs.empty()) throw std::invalid_argument("offline_optimum: T must be >= 1");
  if (xs.size() != ys.size()) {
    throw DimensionError("offline_optimum: length mismatch");
  }
  const auto d = xs.front().size();
  Matrix g = Matrix::Zero(d, d);
  Vector b = Vector::Zero(d);
  for (std::size_t t = 0; t < xs.size(); ++t) {
    detail::require_dim(d, xs[t].size(), "offline_optimum");
    g.noalias() += xs[t] * xs[t].transpose();
    b += ys[t] * xs[t];
  }
  OfflineOptimum out;
  out.u_star = symmetric_pinv(g) * b;
  for (std::size_t t = 0; t < xs.size(); ++t) {
    const double r = ys[t] - out.u_star.dot(xs[t]);
    out.loss += r * r;
  }
  return out;
}

/// Cumulative loss minus the offline optimum; negative values are kept.
inline double uniform_regret(double cum_loss, double offline_loss) {
  return cum_loss - offline_loss;
}

/// lambda ||u||^2 + B^2 sum_k log(1 + lambda_k(G_T) / lambda).
inline double bound_vaw(double lambda, std::span<const double> eigs, double B,
                        double u_norm) {
  if (!(lambda > 0.0)) throw std::invalid_argument("bound_vaw: lambda <= 0");
  if (B < 0.0) throw std::invalid_argument("bound_vaw: B < 0");
  double acc = 0.0;
  for (double e : eigs) acc += std::log1p(std::max(e, 0.0) / lambda);
  return lambda * u_norm * u_norm + B * B * acc;
}

inline double bound_vaw(double lambda, const Vector& eigs, double B,
                        double u_norm) {
  return bound_vaw(lambda,
                   std::span<const double>(eigs.data(),
                                           static_cast<std::size_t>(eigs.size())),
                   B, u_norm);
}

/// r B^2 log(1 + T X^2 / (r lambda)) + (lambda / lambda_min+) T B^2.
inline double bound_vaw_uniform(double lambda, int rank_T,
                                double lambda_min_pos, int T, double X,
                                double B) {
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("bound_vaw_uniform: lambda <= 0");
  }
  if (!(lambda_min_pos > 0.0)) {
    throw std::invalid_argument(
        "bound_vaw_uniform: smallest positive eigenvalue must be > 0");
  }
  if (rank_T < 1) throw std::invalid_argument("bound_vaw_uniform: rank < 1");
  const double r = rank_T;
  const double b2 = B * B;
  return r * b2 * std::log1p(T * X * X / (r * lambda)) +
         lambda / lambda_min_pos * T * b2;
}

/// lambda T B^2 + r B^2 log(1 + 1/lambda).
inline double bound_adapted(double lambda, int rank_T, int T, double B) {
  if (!(lambda > 0.0)) throw std::invalid_argument("bound_adapted: lambda <= 0");
  const double b2 = B * B;
  return lambda * T * b2 + rank_T * b2 * std::log1p(1.0 / lambda);
}

/// bound_adapted at lambda = r/T:  r B^2 (1 + log(1 + T/r)).
inline double bound_adapted_optimized(int rank_T, int T, double B) {
  if (rank_T < 1) return 0.0;
  const double r = rank_T;
  return r * B * B * (1.0 + std::log1p(T / r));
}

struct ZeroRegBound {
  double exact = 0.0;       // B^2 sum_t x_t^T G_t^+ x_t
  double eigen_form = 0.0;  // eigenvalue upper bound on `exact`
};

inline ZeroRegBound bound_zeroreg(std::span<const Vector> xs, double B) {
  if (xs.empty()) throw std::invalid_argument("bound_zeroreg: no features");
  GramState g = GramState::empty(static_cast<int>(xs.front().size()));
  double quad_sum = 0.0;
  double event_terms = 0.0;
  for (const Vector& x : xs) {
    const int prev_rank = g.rank;
    g = gram_update(g, x);
    for (int k = 0; k < g.rank; ++k) {
      const double c = g.eigvecs.col(k).dot(x);
      quad_sum += c * c / g.eigs(k);
    }
    if (g.rank > prev_rank) event_terms += std::log(1.0 / g.eigs(g.rank - 1));
  }
  if (g.rank == 0) {
    throw std::invalid_argument("bound_zeroreg: all features are null");
  }
  double final_terms = 0.0;
  for (int k = 0; k < g.rank; ++k) final_terms += std::log(g.eigs(k));
  const double b2 = B * B;
  return ZeroRegBound{b2 * quad_sum,
                      b2 * (final_terms + event_terms + g.rank)};
}

/// d B^2 (ln T - (3 + ln d) - ln ln T); may be negative for small T.
inline double lower_bound_value(int d, int T, double B) {
  if (T < 8) throw std::invalid_argument("lower_bound_value: T must be >= 8");
  if (!(B > 0.0)) throw std::invalid_argument("lower_bound_value: B must be > 0");
  if (d < 1) throw std::invalid_argument("lower_bound_value: d must be >= 1");
  const double lt = std::log(static_cast<double>(T));
  return d * B * B * (lt - (3.0 + std::log(static_cast<double>(d))) -
                      std::log(lt));
}

struct EvaluateOptions {
  std::optional<double> B;  // defaults to max |y_t|
  std::optional<double> X;  // feature-norm bound for the uniform VAW bound
  bool empirical_X = false;  // use max ||x_t|| when X is not given
};

struct RegretReport {
  std::string forecaster;
  double lambda = 0.0;
  std::vector<RoundRecord> records;
  double cum_loss = 0.0;
  double offline_loss = 0.0;
  double uniform_regret = 0.0;
  Vector u_star;
  double B = 0.0;
  std::optional<double> X;
  int d = 0;
  int T = 0;
  int rank_T = 0;
  bool near_cutoff = false;
  std::map<std::string, double> bounds;
  std::map<std::string, bool> verdicts;
  std::map<std::string, std::string> notes;
  std::optional<MMCondition> mm_condition;

  bool all_pass() const {
    return std::all_of(verdicts.begin(), verdicts.end(),
                       [](const auto& kv) { return kv.second; });
  }
};

inline double max_abs(std::span<const double> ys) {
  double m = 0.0;
  for (double y : ys) m = std::max(m, std::abs(y));
  return m;
}

inline double max_norm(std::span<const Vector> xs) {
  double m = 0.0;
  for (const Vector& x : xs) m = std::max(m, x.norm());
  return m;
}

/// Runs the online protocol and fills every bound that applies to the
/// forecaster.  AdaptedRidge and MM without a schedule or prior get the
/// transcript's own features as their beforehand-known schedule.
inline RegretReport evaluate(ForecasterSpec spec, std::span<const Vector> xs,
                             std::span<const double> ys,
                             const EvaluateOptions& opts = {}) {
  if (xs.empty()) throw std::invalid_argument("evaluate: T must be >= 1");
  if (xs.size() != ys.size()) {
    throw DimensionError("evaluate: " + std::to_string(xs.size()) +
                         " features but " + std::to_string(ys.size()) +
                         " observations");
  }
  const double observed_B = max_abs(ys);
  if (opts.B && observed_B > *opts.B) {
    throw std::invalid_argument("evaluate: observation magnitude " +
                                std::to_string(observed_B) +
                                " exceeds B = " + std::to_string(*opts.B));
  }
  const bool needs_schedule = spec.kind == ForecasterKind::MM ||
                              (spec.kind == ForecasterKind::AdaptedRidge &&
                               !spec.gram_prior);
  if (needs_schedule && !spec.feature_schedule) {
    spec.feature_schedule = std::vector<Vector>(xs.begin(), xs.end());
  }

  const int d = static_cast<int>(xs.front().size());
  RegretReport rep;
  rep.forecaster = spec.name();
  rep.lambda = spec.kind == ForecasterKind::ZeroReg ? spec.gram_estimate_bias
                                                    : spec.lambda;
  rep.d = d;
  rep.T = static_cast<int>(xs.size());
  rep.B = opts.B ? *opts.B : observed_B;
  if (opts.X) {
    rep.X = *opts.X;
  } else if (opts.empirical_X) {
    rep.X = max_norm(xs);
  }

  Forecaster f(spec, d);
  rep.records = run_protocol(f, xs, ys);
  for (const RoundRecord& r : rep.records) rep.cum_loss += r.loss;
  const OfflineOptimum opt = offline_optimum(xs, ys);
  rep.offline_loss = opt.loss;
  rep.u_star = opt.u_star;
  rep.uniform_regret = uniform_regret(rep.cum_loss, rep.offline_loss);

  const GramState& g = f.gram();
  rep.rank_T = g.rank;
  rep.near_cutoff = g.near_cutoff;
  const double B = rep.B;
  const int T = rep.T;

  auto add = [&](const std::string& name, double value, bool check) {
    rep.bounds[name] = value;
    if (check) rep.verdicts[name] = within_bound(rep.uniform_regret, value);
  };

  switch (spec.kind) {
    case ForecasterKind::VAW: {
      add("vaw_at_ustar", bound_vaw(spec.lambda, g.eigs, B, opt.u_star.norm()),
          true);
      if (!rep.X) {
        rep.notes["vaw_uniform"] = "inapplicable: no feature-norm bound X";
      } else if (g.rank < 1) {
        rep.notes["vaw_uniform"] = "inapplicable: G_T has rank 0";
      } else {
        if (max_norm(xs) > *rep.X * (1.0 + 1e-12)) {
          throw std::invalid_argument("evaluate: a feature norm exceeds X");
        }
        add("vaw_uniform",
            bound_vaw_uniform(spec.lambda, g.rank, g.smallest_positive(), T,
                              *rep.X, B),
            true);
      }
      break;
    }
    case ForecasterKind::AdaptedRidge: {
      const Matrix gram_T = spec.gram_prior ? *spec.gram_prior
                                            : gram_of(*spec.feature_schedule);
      const int r = symmetric_eigen(gram_T).rank;
      add("adapted", bound_adapted(spec.lambda, r, T, B), true);
      add("adapted_optimized", bound_adapted_optimized(r, T, B), false);
      break;
    }
    case ForecasterKind::ZeroReg: {
      if (spec.gram_estimate_bias > 0.0) {
        rep.notes["zeroreg_exact"] =
            "inapplicable: shrunk variant (gram_estimate_bias > 0)";
        break;
      }
      if (g.rank == 0) {
        rep.notes["zeroreg_exact"] = "inapplicable: all features are null";
        break;
      }
      const ZeroRegBound zb = bound_zeroreg(xs, B);
      add("zeroreg_exact", zb.exact, true);
      add("zeroreg_eigen", zb.eigen_form, true);
      rep.verdicts["zeroreg_exact_le_eigen"] =
          zb.exact <= zb.eigen_form + kVerdictSlack * std::abs(zb.eigen_form);
      break;
    }
    case ForecasterKind::MM: {
      MMCondition cond = mm_condition_check(*spec.feature_schedule,
                                            f.mm_matrices());
      const double value = bound_adapted_optimized(g.rank, T, B);
      if (cond.ok) {
        add("mm_adapted_optimized", value, true);
      } else {
        add("mm_adapted_optimized", value, false);
        const double worst =
            *std::max_element(cond.margins.begin(), cond.margins.end());
        rep.notes["mm_adapted_optimized"] =
            "not asserted: feasibility condition violated (max margin " +
            std::to_string(worst) + ")";
      }
      rep.mm_condition = std::move(cond);
      break;
    }
  }
  if (T >= 8 && B > 0.0) {
    add("minimax_lower", lower_bound_value(d, T, B), false);
  }
  if (rep.near_cutoff) {
    rep.notes["rank_cutoff"] =
        "an eigenvalue of some G_t lay within two decades of the rank cutoff";
  }
  return rep;
}

}  // namespace regretlab

#endif  // REGRETLAB_REGRET_HPP
