#ifndef REGRETLAB_LOWERBOUND_HPP
#define REGRETLAB_LOWERBOUND_HPP

// Monte-Carlo version of the Beta-Bernoulli lower-bound construction.
//
// Features are unit vectors e_{J_t} with J_t uniform on {1..d}, observations
// Y_t ~ Bernoulli(theta*_{J_t}) with theta* ~ Beta(alpha, alpha)^d, and the
// [-B, B] game uses Z_t = 2B (Y_t - 1/2).  The whole feature sequence is known
// to the forecaster before the first round.

#include "regretlab/forecasters.hpp"
#include "regretlab/linalg.hpp"
#include "regretlab/parallel.hpp"
#include "regretlab/regret.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace regretlab {

inline constexpr int kMinTrials = 30;

struct BayesEnvironment {
  int d = 1;
  int T = 1;
  double alpha = 3.0;
  double B = 1.0;
  std::uint64_t seed = 0;
  // Test hook: bypass the prior and play this theta* in every trial.
  std::optional<Vector> forced_theta;

  static double default_alpha(int T) {
    return 1.0 + std::log(static_cast<double>(T));
  }

  void validate() const {
    if (d < 1) throw std::invalid_argument("environment: d must be >= 1");
    if (T < 1) throw std::invalid_argument("environment: T must be >= 1");
    if (B < 0.0) throw std::invalid_argument("environment: B must be >= 0");
    if (forced_theta) {
      detail::require_dim(d, forced_theta->size(), "environment theta");
      for (double v : *forced_theta) {
        if (v < 0.0 || v > 1.0) {
          throw std::invalid_argument("environment: theta must lie in [0,1]");
        }
      }
    } else if (!(alpha >= 3.0)) {
      throw std::invalid_argument("environment: alpha must be >= 3, got " +
                                  std::to_string(alpha));
    }
  }
};

struct EnvironmentSample {
  Vector theta;
  std::vector<int> J;  // 0-based coordinates
  std::vector<int> Y;  // bits
  std::vector<double> Z;

  std::vector<Vector> features(int d) const {
    std::vector<Vector> xs;
    xs.reserve(J.size());
    for (int j : J) xs.push_back(Vector::Unit(d, j));
    return xs;
  }
  std::vector<double> y_values() const {
    return std::vector<double>(Y.begin(), Y.end());
  }
};

template <typename Rng>
double sample_beta(Rng& rng, double a, double b) {
  std::gamma_distribution<double> ga(a, 1.0);
  std::gamma_distribution<double> gb(b, 1.0);
  const double x = ga(rng);
  const double y = gb(rng);
  return x / (x + y);
}

template <typename Rng>
EnvironmentSample sample_environment(const BayesEnvironment& env, Rng& rng) {
  env.validate();
  EnvironmentSample s;
  if (env.forced_theta) {
    s.theta = *env.forced_theta;
  } else {
    s.theta.resize(env.d);
    for (int i = 0; i < env.d; ++i) {
      s.theta(i) = sample_beta(rng, env.alpha, env.alpha);
    }
  }
  std::uniform_int_distribution<int> coord(0, env.d - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  s.J.resize(env.T);
  s.Y.resize(env.T);
  s.Z.resize(env.T);
  for (int t = 0; t < env.T; ++t) s.J[t] = coord(rng);
  for (int t = 0; t < env.T; ++t) {
    s.Y[t] = unit(rng) < s.theta(s.J[t]) ? 1 : 0;
    s.Z[t] = 2.0 * env.B * (s.Y[t] - 0.5);
  }
  return s;
}

/// d^2 / (16 d alpha + 4(t-1) + 2(t-1)/(alpha-1)): lower bound on the
/// prior-averaged squared error of any estimator of theta* built from t-1
/// observations.
inline double van_trees_rhs(int d, int t, double alpha) {
  if (!(alpha >= 3.0)) throw std::invalid_argument("van_trees_rhs: alpha < 3");
  if (t < 1) throw std::invalid_argument("van_trees_rhs: t must be >= 1");
  const double dd = d;
  const double n = t - 1;
  return dd * dd / (16.0 * dd * alpha + 4.0 * n + 2.0 * n / (alpha - 1.0));
}

/// Trace of the Fisher information of the Beta(alpha, alpha)^d prior.
inline double prior_fisher_trace(int d, double alpha) {
  if (!(alpha > 2.0)) {
    throw std::invalid_argument("prior_fisher_trace: alpha must be > 2");
  }
  return 4.0 * d * (2.0 * alpha - 1.0) * (alpha - 1.0) / (alpha - 2.0);
}

/// Trace of the Fisher information of t-1 rounds at theta.
inline double model_fisher_trace(int d, int t, const Vector& theta) {
  detail::require_dim(d, theta.size(), "model_fisher_trace");
  if (t < 1) throw std::invalid_argument("model_fisher_trace: t must be >= 1");
  double acc = 0.0;
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    const double th = theta(i);
    if (!(th > 0.0 && th < 1.0)) {
      throw std::invalid_argument(
          "model_fisher_trace: theta must lie in (0,1)");
    }
    acc += (t - 1) / (d * th * (1.0 - th));
  }
  return acc;
}

struct LowerBoundRun {
  std::vector<double> per_round_risk;  // estimates of E ||u_t - theta*||^2
  std::vector<double> per_round_se;
  std::vector<double> van_trees;
  int trials = 0;

  /// First round (1-based) with risk < van_trees - k SE, or 0 if none.
  int first_violation(double k = 3.0) const {
    for (std::size_t t = 0; t < per_round_risk.size(); ++t) {
      if (per_round_risk[t] < van_trees[t] - k * per_round_se[t]) {
        return static_cast<int>(t) + 1;
      }
    }
    return 0;
  }
  bool holds(double k = 3.0) const { return first_violation(k) == 0; }
};

namespace detail {

inline void require_trials(int trials) {
  if (trials < kMinTrials) {
    throw std::invalid_argument("trials must be >= " +
                                std::to_string(kMinTrials) + ", got " +
                                std::to_string(trials));
  }
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

inline MeanSe mean_se(const std::vector<double>& v) {
  MeanSe out;
  const double n = static_cast<double>(v.size());
  if (v.empty()) return out;
  for (double x : v) out.mean += x;
  out.mean /= n;
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - out.mean) * (x - out.mean);
    out.se = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  return out;
}

}  // namespace detail

/// Builds a Forecaster for one trial; AdaptedRidge and MM receive the trial's
/// feature sequence as their beforehand-known schedule.
struct SpecFactory {
  ForecasterSpec spec;

  Forecaster operator()(const EnvironmentSample& s, int d) const {
    ForecasterSpec copy = spec;
    const bool wants_schedule =
        copy.kind == ForecasterKind::MM ||
        (copy.kind == ForecasterKind::AdaptedRidge && !copy.gram_prior);
    if (wants_schedule && !copy.feature_schedule) {
      copy.feature_schedule = s.features(d);
    }
    return Forecaster(std::move(copy), d);
  }
};

/// Prior-averaged per-round estimation risk of a forecaster on the [0,1]
/// game.  `make(sample, d)` returns an object with predict / observe / peek;
/// u_t(j) is the prediction it would make if J_t were j.
template <typename Factory>
LowerBoundRun bayes_risk_estimate(const Factory& make,
                                  const BayesEnvironment& env, int trials) {
  env.validate();
  detail::require_trials(trials);
  const int d = env.d;
  const int T = env.T;
  std::vector<std::vector<double>> risk(static_cast<std::size_t>(trials));
  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t trial) {
    auto rng = stream_rng(env.seed, trial);
    const EnvironmentSample s = sample_environment(env, rng);
    auto f = make(s, d);
    std::vector<double>& r = risk[trial];
    r.resize(static_cast<std::size_t>(T));
    for (int t = 0; t < T; ++t) {
      double err = 0.0;
      for (int j = 0; j < d; ++j) {
        const double diff = f.peek(Vector::Unit(d, j)) - s.theta(j);
        err += diff * diff;
      }
      r[static_cast<std::size_t>(t)] = err;
      f.predict(Vector::Unit(d, s.J[static_cast<std::size_t>(t)]));
      f.observe(static_cast<double>(s.Y[static_cast<std::size_t>(t)]));
    }
  });
  LowerBoundRun out;
  out.trials = trials;
  out.per_round_risk.resize(static_cast<std::size_t>(T));
  out.per_round_se.resize(static_cast<std::size_t>(T));
  out.van_trees.resize(static_cast<std::size_t>(T));
  std::vector<double> column(static_cast<std::size_t>(trials));
  for (int t = 0; t < T; ++t) {
    for (int k = 0; k < trials; ++k) {
      column[static_cast<std::size_t>(k)] =
          risk[static_cast<std::size_t>(k)][static_cast<std::size_t>(t)];
    }
    const detail::MeanSe m = detail::mean_se(column);
    out.per_round_risk[static_cast<std::size_t>(t)] = m.mean;
    out.per_round_se[static_cast<std::size_t>(t)] = m.se;
    out.van_trees[static_cast<std::size_t>(t)] =
        env.forced_theta ? 0.0 : van_trees_rhs(d, t + 1, env.alpha);
  }
  return out;
}

inline LowerBoundRun bayes_risk_estimate(const ForecasterSpec& spec,
                                         const BayesEnvironment& env,
                                         int trials) {
  return bayes_risk_estimate(SpecFactory{spec}, env, trials);
}

struct RegretLowerRun {
  double estimate = 0.0;   // mean uniform regret on the Z game
  double se = 0.0;
  double reference = 0.0;  // 4 B^2 sum_t van_trees_rhs(d, t, alpha) / d
  std::vector<double> per_trial;
  int trials = 0;

  bool holds(double k = 3.0) const { return estimate >= reference - k * se; }
};

/// Uniform regret of one forecaster on a fixed transcript.
template <typename F>
double transcript_regret(F& f, std::span<const Vector> xs,
                         std::span<const double> ys) {
  double cum = 0.0;
  for (std::size_t t = 0; t < xs.size(); ++t) {
    const double e = ys[t] - f.predict(xs[t]);
    cum += e * e;
    f.observe(ys[t]);
  }
  return uniform_regret(cum, offline_optimum(xs, ys).loss);
}

/// Expected uniform regret on the [-B, B] game, with the van Trees reference
/// value it must exceed.
template <typename Factory>
RegretLowerRun regret_lower_experiment(const BayesEnvironment& env,
                                       const Factory& make, int trials) {
  env.validate();
  detail::require_trials(trials);
  const int d = env.d;
  RegretLowerRun out;
  out.trials = trials;
  out.per_trial.resize(static_cast<std::size_t>(trials));
  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t trial) {
    auto rng = stream_rng(env.seed, trial);
    const EnvironmentSample s = sample_environment(env, rng);
    const std::vector<Vector> xs = s.features(d);
    auto f = make(s, d);
    out.per_trial[trial] = transcript_regret(f, xs, s.Z);
  });
  const detail::MeanSe m = detail::mean_se(out.per_trial);
  out.estimate = m.mean;
  out.se = m.se;
  if (!env.forced_theta) {
    double acc = 0.0;
    for (int t = 1; t <= env.T; ++t) acc += van_trees_rhs(d, t, env.alpha);
    out.reference = 4.0 * env.B * env.B * acc / d;
  }
  return out;
}

inline RegretLowerRun regret_lower_experiment(const BayesEnvironment& env,
                                              const ForecasterSpec& spec,
                                              int trials) {
  return regret_lower_experiment(env, SpecFactory{spec}, trials);
}

struct ScaleIdentity {
  double z_regret = 0.0;  // forecaster on (e_J, Z)
  double y_regret = 0.0;  // mapped predictions z/(2B) + 1/2 on (e_J, Y)
};

/// Plays one sample on the Z scale and scores the mapped forecaster on the Y
/// scale; z_regret == 4 B^2 y_regret up to rounding.
inline ScaleIdentity scale_identity(const ForecasterSpec& spec,
                                    const EnvironmentSample& s, int d,
                                    double B) {
  if (!(B > 0.0)) throw std::invalid_argument("scale_identity: B must be > 0");
  const std::vector<Vector> xs = s.features(d);
  const std::vector<double> ys = s.y_values();
  Forecaster f = SpecFactory{spec}(s, d);
  double cum_z = 0.0;
  double cum_y = 0.0;
  for (std::size_t t = 0; t < xs.size(); ++t) {
    const double zhat = f.predict(xs[t]);
    const double yhat = zhat / (2.0 * B) + 0.5;
    cum_z += (s.Z[t] - zhat) * (s.Z[t] - zhat);
    cum_y += (ys[t] - yhat) * (ys[t] - yhat);
    f.observe(s.Z[t]);
  }
  ScaleIdentity out;
  out.z_regret = uniform_regret(cum_z, offline_optimum(xs, s.Z).loss);
  out.y_regret = uniform_regret(cum_y, offline_optimum(xs, ys).loss);
  return out;
}

}  // namespace regretlab

#endif  // REGRETLAB_LOWERBOUND_HPP
