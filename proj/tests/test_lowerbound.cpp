#include "oracles.hpp"

#include "regretlab/lowerbound.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace regretlab;

namespace {

/// Always predicts 0; stands in for a forecaster in bayes_risk_estimate.
struct ZeroPredictor {
  double predict(const Vector&) { return 0.0; }
  void observe(double) {}
  double peek(const Vector&) const { return 0.0; }
};

struct ZeroFactory {
  ZeroPredictor operator()(const EnvironmentSample&, int) const { return {}; }
};

BayesEnvironment env(int d, int T, double alpha, double B, std::uint64_t seed) {
  BayesEnvironment e;
  e.d = d;
  e.T = T;
  e.alpha = alpha;
  e.B = B;
  e.seed = seed;
  return e;
}

}  // namespace

TEST(SampleEnvironment, ForcedThetaOnes) {
  BayesEnvironment e = env(3, 20, 3.0, 2.0, 1);
  e.forced_theta = Vector::Ones(3);
  auto rng = stream_rng(1, 0);
  const EnvironmentSample s = sample_environment(e, rng);
  for (int t = 0; t < 20; ++t) {
    EXPECT_EQ(s.Y[t], 1);
    EXPECT_EQ(s.Z[t], 2.0);
  }
}

TEST(SampleEnvironment, ForcedThetaZeros) {
  BayesEnvironment e = env(2, 20, 3.0, 1.5, 1);
  e.forced_theta = Vector::Zero(2);
  auto rng = stream_rng(1, 0);
  const EnvironmentSample s = sample_environment(e, rng);
  for (double z : s.Z) EXPECT_EQ(z, -1.5);
}

TEST(SampleEnvironment, Deterministic) {
  const BayesEnvironment e = env(2, 4, 3.0, 1.0, 42);
  auto r1 = stream_rng(42, 7);
  auto r2 = stream_rng(42, 7);
  const EnvironmentSample a = sample_environment(e, r1);
  const EnvironmentSample b = sample_environment(e, r2);
  EXPECT_EQ(a.theta, b.theta);
  EXPECT_EQ(a.J, b.J);
  EXPECT_EQ(a.Y, b.Y);
  EXPECT_EQ(a.Z, b.Z);
  for (int j : a.J) {
    EXPECT_GE(j, 0);
    EXPECT_LT(j, 2);
  }
}

TEST(SampleEnvironment, RejectsSmallAlpha) {
  auto rng = stream_rng(0, 0);
  EXPECT_THROW(sample_environment(env(2, 4, 2.5, 1.0, 0), rng),
               std::invalid_argument);
}

TEST(SampleBeta, MomentsMatch) {
  auto rng = stream_rng(9, 0);
  const double a = 4.0;
  double m = 0.0, m2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = sample_beta(rng, a, a);
    m += x;
    m2 += x * x;
  }
  m /= n;
  m2 /= n;
  const double var = m2 - m * m;
  EXPECT_NEAR(m, 0.5, 0.003);
  EXPECT_NEAR(var, 1.0 / (4.0 * (2.0 * a + 1.0)), 0.001);
}

TEST(VanTreesRhs, Examples) {
  EXPECT_NEAR(van_trees_rhs(1, 1, 3.0), 1.0 / 48.0, 1e-15);
  EXPECT_NEAR(van_trees_rhs(2, 1, 3.0), 4.0 / 96.0, 1e-15);
  EXPECT_NEAR(van_trees_rhs(1, 2, 3.0), 1.0 / 53.0, 1e-15);
  EXPECT_THROW(van_trees_rhs(1, 1, 2.9), std::invalid_argument);
}

TEST(VanTreesRhs, ShapeInT) {
  for (int d : {1, 2, 5}) {
    double prev = INFINITY, prev_scaled = 0.0;
    for (int t = 1; t <= 500; ++t) {
      const double v = van_trees_rhs(d, t, 4.0);
      EXPECT_GT(v, 0.0);
      EXPECT_LT(v, prev);
      EXPECT_GT(t * v, prev_scaled);
      prev = v;
      prev_scaled = t * v;
    }
  }
}

TEST(PriorFisherTrace, Examples) {
  EXPECT_NEAR(prior_fisher_trace(1, 3.0), 40.0, 1e-12);
  EXPECT_NEAR(prior_fisher_trace(1, 4.0), 42.0, 1e-12);
  for (int d = 1; d <= 5; ++d) {
    EXPECT_NEAR(prior_fisher_trace(d, 3.0), 40.0 * d, 1e-12);
    EXPECT_LE(prior_fisher_trace(d, 3.0), 48.0 * d);
  }
  EXPECT_THROW(prior_fisher_trace(1, 2.0), std::invalid_argument);
}

TEST(PriorFisherTrace, MatchesQuadrature) {
  for (double a : {3.0, 4.0, 6.0}) {
    for (int d : {1, 3}) {
      const double q = oracles::prior_fisher_quadrature(d, a);
      EXPECT_NEAR(prior_fisher_trace(d, a) / q, 1.0, 1e-6) << a;
    }
  }
}

TEST(PriorFisherTrace, BoundedBy16dAlpha) {
  for (double a = 3.0; a < 50.0; a += 0.5) {
    EXPECT_LE(prior_fisher_trace(2, a), 16.0 * 2 * a);
  }
}

TEST(ModelFisherTrace, Examples) {
  EXPECT_EQ(model_fisher_trace(2, 1, Vector::Constant(2, 0.3)), 0.0);
  EXPECT_NEAR(model_fisher_trace(1, 2, Vector::Constant(1, 0.5)), 4.0, 1e-15);
  EXPECT_NEAR(model_fisher_trace(2, 3, Vector::Constant(2, 0.5)), 8.0, 1e-15);
  EXPECT_THROW(model_fisher_trace(1, 2, Vector::Constant(1, 0.0)),
               std::invalid_argument);
  EXPECT_THROW(model_fisher_trace(1, 2, Vector::Constant(1, 1.0)),
               std::invalid_argument);
}

TEST(BayesRisk, ZeroPredictorAtHalf) {
  BayesEnvironment e = env(3, 10, 3.0, 1.0, 5);
  e.forced_theta = Vector::Constant(3, 0.5);
  const LowerBoundRun run = bayes_risk_estimate(ZeroFactory{}, e, 30);
  for (int t = 0; t < 10; ++t) {
    EXPECT_DOUBLE_EQ(run.per_round_risk[t], 0.75);
    EXPECT_DOUBLE_EQ(run.per_round_se[t], 0.0);
  }
}

TEST(BayesRisk, RejectsFewTrials) {
  EXPECT_THROW(bayes_risk_estimate(ForecasterSpec::vaw(1.0), env(1, 5, 3.0, 1.0, 0), 29),
               std::invalid_argument);
  EXPECT_THROW(regret_lower_experiment(env(1, 5, 3.0, 1.0, 0), ForecasterSpec::vaw(1.0), 10),
               std::invalid_argument);
}

TEST(BayesRisk, Reproducible) {
  const BayesEnvironment e = env(2, 30, 4.0, 1.0, 11);
  const LowerBoundRun a = bayes_risk_estimate(ForecasterSpec::vaw(1.0), e, 40);
  const LowerBoundRun b = bayes_risk_estimate(ForecasterSpec::vaw(1.0), e, 40);
  EXPECT_EQ(a.per_round_risk, b.per_round_risk);
  EXPECT_EQ(a.per_round_se, b.per_round_se);
}

TEST(BayesRisk, VawD1AboveVanTrees) {
  const BayesEnvironment e = env(1, 50, 3.0, 1.0, 2024);
  const LowerBoundRun run = bayes_risk_estimate(ForecasterSpec::vaw(1.0), e, 2000);
  EXPECT_TRUE(run.holds()) << "first violation at t=" << run.first_violation();
  for (int t = 0; t < 50; ++t) {
    EXPECT_DOUBLE_EQ(run.van_trees[t], van_trees_rhs(1, t + 1, 3.0));
    EXPECT_GE(run.per_round_risk[t], 0.0);
  }
}

TEST(BayesRisk, AllForecastersAboveVanTrees) {
  const BayesEnvironment e = env(2, 40, BayesEnvironment::default_alpha(40), 1.0, 8);
  ForecasterSpec adapted;
  adapted.kind = ForecasterKind::AdaptedRidge;
  adapted.lambda = 0.05;
  ForecasterSpec mm;
  mm.kind = ForecasterKind::MM;
  for (const ForecasterSpec& spec :
       {ForecasterSpec::vaw(1.0), ForecasterSpec::zero_reg(), adapted, mm}) {
    const LowerBoundRun run = bayes_risk_estimate(spec, e, 300);
    EXPECT_TRUE(run.holds()) << spec.name() << " t=" << run.first_violation();
  }
}

TEST(RegretLower, ZeroScale) {
  const RegretLowerRun run =
      regret_lower_experiment(env(2, 20, 3.0, 0.0, 3), ForecasterSpec::vaw(1.0), 30);
  EXPECT_EQ(run.estimate, 0.0);
  EXPECT_EQ(run.reference, 0.0);
}

TEST(RegretLower, VawD1AboveReference) {
  const int T = 100;
  const BayesEnvironment e = env(1, T, BayesEnvironment::default_alpha(T), 1.0, 77);
  const RegretLowerRun run = regret_lower_experiment(e, ForecasterSpec::vaw(1.0), 1000);
  double ref = 0.0;
  for (int t = 1; t <= T; ++t) ref += 4.0 * van_trees_rhs(1, t, e.alpha);
  EXPECT_NEAR(run.reference, ref, 1e-12);
  EXPECT_TRUE(run.holds()) << run.estimate << " +- " << run.se << " vs " << ref;
}

TEST(RegretLower, DoublingBQuadruples) {
  // Same seeds: J and Y are shared, Z doubles, so regret scales by exactly 4.
  const RegretLowerRun a =
      regret_lower_experiment(env(2, 30, 3.0, 1.0, 5), ForecasterSpec::vaw(1.0), 50);
  const RegretLowerRun b =
      regret_lower_experiment(env(2, 30, 3.0, 2.0, 5), ForecasterSpec::vaw(1.0), 50);
  EXPECT_NEAR(b.estimate, 4.0 * a.estimate,
              3.0 * std::hypot(b.se, 4.0 * a.se) + 1e-9);
  EXPECT_NEAR(b.reference, 4.0 * a.reference, 1e-12);
}

TEST(ScaleIdentity, ZEqualsFourBSquaredY) {
  for (double B : {0.5, 1.0, 3.0}) {
    const BayesEnvironment e = env(3, 60, 3.0, B, 13);
    auto rng = stream_rng(13, 0);
    const EnvironmentSample s = sample_environment(e, rng);
    for (const ForecasterSpec& spec :
         {ForecasterSpec::vaw(1.0), ForecasterSpec::zero_reg()}) {
      const ScaleIdentity id = scale_identity(spec, s, 3, B);
      EXPECT_NEAR(id.z_regret, 4.0 * B * B * id.y_regret,
                  1e-9 * (1.0 + std::abs(id.z_regret)));
    }
  }
}
