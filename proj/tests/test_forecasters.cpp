#include "oracles.hpp"

#include "regretlab/forecasters.hpp"
#include "regretlab/oracle.hpp"
#include "regretlab/regret.hpp"
#include "regretlab/sequence.hpp"
#include "regretlab/verify.hpp"

#include <gtest/gtest.h>

using namespace regretlab;

namespace {

Vector v1(double x) { return Vector::Constant(1, x); }

std::vector<Vector> scalars(std::initializer_list<double> xs) {
  std::vector<Vector> out;
  for (double x : xs) out.push_back(v1(x));
  return out;
}

std::vector<ForecasterSpec> all_kinds(const std::vector<Vector>& schedule) {
  return {ForecasterSpec::vaw(1.0), ForecasterSpec::vaw(1.0, true),
          ForecasterSpec::adapted_ridge(1.0, schedule),
          ForecasterSpec::zero_reg(), ForecasterSpec::mm(schedule)};
}

}  // namespace

TEST(Predict, FirstRoundIsZero) {
  const auto sched = scalars({3.0, 1.0});
  for (const auto& spec : all_kinds(sched)) {
    Forecaster f(spec, 1);
    EXPECT_EQ(f.predict(v1(3.0)), 0.0) << spec.name();
    EXPECT_EQ(f.weights(), Vector::Zero(1));
  }
}

TEST(Predict, VawOneThird) {
  Forecaster f(ForecasterSpec::vaw(1.0), 1);
  f.predict(v1(1.0));
  f.observe(1.0);
  EXPECT_NEAR(f.predict(v1(1.0)), 1.0 / 3.0, 1e-15);
  // numeric cross-check: (1-u)^2 + u^2 + u^2
  oracle::Objective obj{ForecasterKind::VAW, 1.0, {}, scalars({1, 1}), {1.0}};
  EXPECT_NEAR(oracle::minimize(obj)(0), 1.0 / 3.0, 1e-12);
}

TEST(Predict, ZeroRegHalf) {
  Forecaster f(ForecasterSpec::zero_reg(), 1);
  f.predict(v1(1.0));
  f.observe(1.0);
  EXPECT_NEAR(f.predict(v1(1.0)), 0.5, 1e-15);
}

TEST(Predict, AdaptedQuarter) {
  Forecaster f(ForecasterSpec::adapted_ridge(1.0, scalars({1, 1})), 1);
  f.predict(v1(1.0));
  f.observe(1.0);
  EXPECT_NEAR(f.predict(v1(1.0)), 0.25, 1e-15);
}

TEST(Predict, AdaptedFromGramPriorMatchesSchedule) {
  const auto sched = scalars({1, 2, -1});
  const std::vector<double> ys = {0.5, -1, 1};
  Forecaster a(ForecasterSpec::adapted_ridge(0.3, sched), 1);
  Forecaster b(ForecasterSpec::adapted_ridge(0.3, gram_of(sched)), 1);
  const auto pa = predictions(run_protocol(a, sched, ys));
  const auto pb = predictions(run_protocol(b, sched, ys));
  for (std::size_t i = 0; i < pa.size(); ++i) EXPECT_DOUBLE_EQ(pa[i], pb[i]);
}

TEST(Predict, IsWeightsDotFeature) {
  Forecaster f(ForecasterSpec::zero_reg(), 1);
  f.predict(v1(1.0));
  f.observe(1.0);
  const double yhat = f.predict(v1(100.0));
  EXPECT_NEAR(yhat, 100.0 / 10001.0, 1e-15);
  EXPECT_DOUBLE_EQ(yhat, f.weights().dot(v1(100.0)));
}

TEST(Observe, Accumulates) {
  Forecaster f(ForecasterSpec::zero_reg(), 2);
  f.predict(Vector::Unit(2, 0));
  f.observe(1.0);
  EXPECT_EQ(f.gram().b, Vector::Unit(2, 0));

  Forecaster g(ForecasterSpec::zero_reg(), 1);
  g.predict(v1(1));
  g.observe(1);
  g.predict(v1(1));
  g.observe(0);
  EXPECT_DOUBLE_EQ(g.gram().b(0), 1.0);
  EXPECT_DOUBLE_EQ(g.gram().G(0, 0), 2.0);
  EXPECT_EQ(g.round(), 2);
}

TEST(Observe, ZeroLeavesBUnchanged) {
  Forecaster f(ForecasterSpec::vaw(1.0), 2);
  f.predict(Vector::Ones(2));
  f.observe(0.0);
  EXPECT_EQ(f.gram().b, Vector::Zero(2));
}

TEST(Protocol, Errors) {
  Forecaster f(ForecasterSpec::zero_reg(), 2);
  EXPECT_THROW(f.observe(1.0), std::logic_error);
  EXPECT_THROW(f.predict(Vector::Ones(3)), DimensionError);
  f.predict(Vector::Ones(2));
  EXPECT_THROW(f.predict(Vector::Ones(2)), std::logic_error);
  EXPECT_THROW(f.observe(NAN), NumericalError);

  Forecaster m(ForecasterSpec::mm(scalars({1})), 1);
  m.predict(v1(1));
  m.observe(1);
  EXPECT_THROW(m.predict(v1(1)), std::out_of_range);
}

TEST(Spec, Validation) {
  EXPECT_THROW(Forecaster(ForecasterSpec::vaw(0.0), 1), std::invalid_argument);
  ForecasterSpec a;
  a.kind = ForecasterKind::AdaptedRidge;
  a.lambda = 1.0;
  EXPECT_THROW(Forecaster(a, 1), std::invalid_argument);
  EXPECT_NO_THROW(a.validate(true));
  ForecasterSpec m;
  m.kind = ForecasterKind::MM;
  EXPECT_THROW(Forecaster(m, 1), std::invalid_argument);
  ForecasterSpec z = ForecasterSpec::zero_reg();
  z.sherman_morrison = true;
  EXPECT_THROW(z.validate(), std::invalid_argument);
  EXPECT_THROW(Forecaster(ForecasterSpec::adapted_ridge(1.0, Matrix::Identity(2, 2)), 3),
               DimensionError);
  EXPECT_THROW(parse_forecaster_kind("ridge"), std::invalid_argument);
  EXPECT_EQ(parse_forecaster_kind("adapted"), ForecasterKind::AdaptedRidge);
}

TEST(Peek, DoesNotChangeState) {
  Forecaster f(ForecasterSpec::vaw(1.0), 2);
  f.predict(Vector::Unit(2, 0));
  f.observe(1.0);
  const double a = f.peek(Vector::Unit(2, 0));
  const double b = f.peek(Vector::Unit(2, 1));
  EXPECT_EQ(f.round(), 1);
  EXPECT_EQ(f.gram().t, 1);
  EXPECT_DOUBLE_EQ(f.predict(Vector::Unit(2, 0)), a);
  EXPECT_DOUBLE_EQ(b, 0.0);
}

TEST(MMPrecompute, Examples) {
  auto p = mm_precompute(scalars({1}));
  ASSERT_EQ(p.size(), 1u);
  EXPECT_DOUBLE_EQ(p[0](0, 0), 1.0);
  p = mm_precompute(scalars({1, 1}));
  EXPECT_DOUBLE_EQ(p[1](0, 0), 0.5);
  EXPECT_DOUBLE_EQ(p[0](0, 0), 0.75);
  p = mm_precompute(scalars({1, 0}));
  EXPECT_DOUBLE_EQ(p[1](0, 0), 1.0);
  EXPECT_DOUBLE_EQ(p[0](0, 0), 1.0);
  EXPECT_THROW(mm_precompute(std::vector<Vector>{}), std::invalid_argument);
}

TEST(MMCondition, Examples) {
  MMCondition c = mm_condition_check(scalars({1}));
  EXPECT_TRUE(c.ok);
  EXPECT_EQ(c.margins[0], 0.0);
  c = mm_condition_check(scalars({1, 1}));
  EXPECT_FALSE(c.ok);
  EXPECT_NEAR(c.margins[1], 2.0, 1e-14);
  c = mm_condition_check(scalars({1, 0.5}));
  EXPECT_TRUE(c.ok);
  EXPECT_NEAR(c.margins[1], 0.625, 1e-14);
}

TEST(MM, MatchesIndependentRecursion) {
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 1 + trial % 3;
    const FeatureSequence s = gen_decaying(d, 6 + trial % 10, 0.7, 100 + trial);
    Forecaster f(ForecasterSpec::mm(s.xs), d);
    const auto got = predictions(run_protocol(f, s.xs, s.ys));
    const auto want = oracles::mm_predictions(s.xs, s.ys);
    for (std::size_t t = 0; t < got.size(); ++t) {
      EXPECT_NEAR(got[t], want[t], 1e-9 * (1.0 + std::abs(want[t])))
          << "trial " << trial << " t " << t + 1;
    }
  }
}

TEST(ClosedForm, MatchesOracleMinimizer) {
  const CheckResult r = check_closed_form_oracle(21, 60);
  EXPECT_TRUE(r.passed) << r.detail;
}

TEST(ClosedForm, MinNormOnRankDeficientHistory) {
  // d=2, features along e1 only: the e2 weight must stay exactly 0.
  const std::vector<Vector> xs = {Vector::Unit(2, 0), 2 * Vector::Unit(2, 0),
                                  Vector::Unit(2, 0)};
  const std::vector<double> ys = {1.0, 0.5, -1.0};
  for (const ForecasterSpec& spec :
       {ForecasterSpec::zero_reg(), ForecasterSpec::adapted_ridge(0.5, xs)}) {
    Forecaster f(spec, 2);
    for (std::size_t t = 0; t < xs.size(); ++t) {
      f.predict(xs[t]);
      EXPECT_NEAR(f.weights()(1), 0.0, 1e-15) << spec.name();
      f.observe(ys[t]);
    }
  }
}

TEST(ShermanMorrison, MatchesReference) {
  const CheckResult r = check_sherman_morrison(22, 30);
  EXPECT_TRUE(r.passed) << r.detail;
}

TEST(ForecasterProperties, VerifyChecksPass) {
  for (const CheckResult& r :
       {check_whitening_full(23, 40), check_whitening_reduced(23, 40),
        check_scale_invariance_adapted(23, 40),
        check_scale_invariance_zeroreg(23, 40), check_warmup(23, 30),
        check_null_feature(23, 30)}) {
    EXPECT_TRUE(r.passed) << r.name << ": " << r.detail;
  }
}

TEST(EstimatedGram, ShrinksZeroRegAndDegradesRegret) {
  const FeatureSequence s = gen_gaussian(2, 400, 1.0, 9);
  Forecaster z(ForecasterSpec::zero_reg(), 2);
  Forecaster e(ForecasterSpec::zero_reg_estimated_gram(1.0), 2);
  const auto rz = run_protocol(z, s.xs, s.ys);
  const auto re = run_protocol(e, s.xs, s.ys);
  double lz = 0.0, le = 0.0;
  for (std::size_t t = 0; t < rz.size(); ++t) {
    EXPECT_NEAR(re[t].yhat, rz[t].yhat / 2.0, 1e-12);
    lz += rz[t].loss;
    le += re[t].loss;
  }
  EXPECT_GT(le, lz);
}
