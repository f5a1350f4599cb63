// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.
//
//   acceptance [--artifacts DIR]
//
// MM counterexamples (if any) are written to DIR as JSON.

#include "oracles.hpp"

#include "regretlab/regretlab.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

using namespace regretlab;

namespace {

constexpr std::uint64_t kSeed = 20240531;

struct Outcome {
  bool passed = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(const std::string& name, const std::function<Outcome()>& body,
            double budget_s) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  bool ok = o.passed;
  char timing[96];
  std::snprintf(timing, sizeof timing, "%.2fs of %.0fs", secs, budget_s);
  if (secs > budget_s) {
    ok = false;
    o.detail += " (over time budget)";
  }
  std::printf("%s  %-26s %s [%s]\n", ok ? "PASS" : "FAIL", name.c_str(),
              o.detail.c_str(), timing);
  std::fflush(stdout);
  if (!ok) ++failures;
}

Outcome from_checks(const std::vector<CheckResult>& checks) {
  Outcome o;
  for (const CheckResult& c : checks) {
    if (!c.passed) o.passed = false;
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += c.name + ": " + c.detail;
  }
  return o;
}

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

Outcome zeroreg_bound() {
  const FeatureSequence s = gen_gaussian(3, 10000, 1.0, kSeed);
  const RegretReport r = evaluate(ForecasterSpec::zero_reg(), s.xs, s.ys);
  const bool ok = r.verdicts.at("zeroreg_exact") &&
                  r.verdicts.at("zeroreg_exact_le_eigen");
  char buf[200];
  std::snprintf(buf, sizeof buf, "regret %.4f <= exact %.4f <= eigen %.4f",
                r.uniform_regret, r.bounds.at("zeroreg_exact"),
                r.bounds.at("zeroreg_eigen"));
  return {ok, buf};
}

Outcome adapted_bound() {
  const int T = 1000;
  Outcome o;
  double worst_ratio = 0.0;
  int n = 0;
  for (int i = 0; i < 50; ++i) {
    const int d = 1 + i % 4;
    const std::uint64_t seed = kSeed + 1000 + i;
    FeatureSequence s;
    switch (i % 3) {
      case 0: s = gen_gaussian(d, T, 1.0, seed); break;
      case 1: s = gen_gaussian(d, T, 0.01 + 5.0 * (i % 7), seed); break;
      default: s = gen_lowrank(d, std::max(1, d - 1), T, seed); break;
    }
    const int r = symmetric_eigen(gram_of(s.xs)).rank;
    ForecasterSpec spec;
    spec.kind = ForecasterKind::AdaptedRidge;
    spec.lambda = static_cast<double>(r) / T;
    EvaluateOptions opts;
    opts.B = 1.0;
    const RegretReport rep = evaluate(spec, s.xs, s.ys, opts);
    const double ceiling = d * std::log1p(static_cast<double>(T) / d) + d;
    ++n;
    worst_ratio = std::max(worst_ratio, rep.uniform_regret / ceiling);
    if (!within_bound(rep.uniform_regret, ceiling) || !rep.verdicts.at("adapted")) {
      o.passed = false;
      o.detail += fmt("seq %g regret %.4f over bound; ", i, rep.uniform_regret);
    }
  }
  o.detail += fmt("%g sequences, max regret/bound %.3f", n, worst_ratio);
  return o;
}

Outcome van_trees() {
  const int T = 200;
  BayesEnvironment env;
  env.d = 2;
  env.T = T;
  env.alpha = BayesEnvironment::default_alpha(T);
  env.B = 1.0;
  env.seed = kSeed;
  const LowerBoundRun run = bayes_risk_estimate(ForecasterSpec::vaw(1.0), env, 2000);
  Outcome o;
  o.passed = run.holds();
  double min_gap = INFINITY;
  for (int t = 0; t < T; ++t) {
    min_gap = std::min(min_gap, (run.per_round_risk[t] - run.van_trees[t]) /
                                    std::max(run.per_round_se[t], 1e-300));
  }
  o.detail = fmt("min (risk - rhs)/SE = %.2f", min_gap);
  if (!o.passed) o.detail += fmt(", violation at t=%g", run.first_violation());

  double worst = 0.0;
  for (double a : {env.alpha, 3.0, 5.0}) {
    const double q = oracles::prior_fisher_quadrature(env.d, a);
    worst = std::max(worst, std::abs(prior_fisher_trace(env.d, a) / q - 1.0));
  }
  if (worst > 1e-6) o.passed = false;
  o.detail += fmt("; prior Fisher vs quadrature rel err %.1e", worst);
  return o;
}

Outcome mm_conditional(const std::filesystem::path& artifacts) {
  Outcome o;
  int found = 0, tried = 0, bad = 0;
  double worst_ratio = -INFINITY;
  for (std::uint64_t seed = kSeed + 5000; found < 20 && tried < 20000;
       ++seed, ++tried) {
    const int d = 1 + static_cast<int>(seed % 3);
    const int T = 5 + static_cast<int>(seed % 40);
    const double rate = 0.3 + 0.05 * static_cast<double>(seed % 8);
    const FeatureSequence s = gen_decaying(d, T, rate, seed);
    if (!mm_condition_check(s.xs).ok) continue;
    ++found;
    ForecasterSpec spec;
    spec.kind = ForecasterKind::MM;
    const RegretReport rep = evaluate(spec, s.xs, s.ys);
    const double bound = rep.bounds.at("mm_adapted_optimized");
    if (bound > 0.0) worst_ratio = std::max(worst_ratio, rep.uniform_regret / bound);
    if (!rep.verdicts.at("mm_adapted_optimized")) {
      ++bad;
      o.passed = false;
      std::filesystem::create_directories(artifacts);
      const auto path = artifacts / ("mm_counterexample_seed" +
                                     std::to_string(seed) + ".json");
      nlohmann::json doc;
      doc["kind"] = "mm_counterexample";
      doc["seed"] = seed;
      doc["rate"] = rate;
      doc["xs"] = nlohmann::json::array();
      for (const Vector& x : s.xs) doc["xs"].push_back(to_json(x));
      doc["ys"] = s.ys;
      doc["report"] = to_json(rep);
      std::ofstream(path) << doc.dump(2) << "\n";
      o.detail += "counterexample " + path.string() + "; ";
    }
  }
  if (found < 20) {
    o.passed = false;
    o.detail += fmt("only %g feasible sequences in %g draws; ", found, tried);
  }
  o.detail += fmt("%g feasible sequences, %g over bound", found, bad);
  o.detail += fmt(", max regret/bound %.3f", worst_ratio);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::filesystem::path artifacts = "acceptance_artifacts";
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--artifacts" && i + 1 < argc) {
      artifacts = argv[++i];
    } else {
      std::fprintf(stderr, "usage: acceptance [--artifacts DIR]\n");
      return 2;
    }
  }

  report("zeroreg_bound", zeroreg_bound, 30);
  report("adapted_ridge_bound", adapted_bound, 20);
  report("whitening", [] {
    return from_checks({check_whitening_full(kSeed, 100, 1e-8),
                        check_whitening_reduced(kSeed, 100, 1e-8)});
  }, 60);
  report("scale_invariance", [] {
    return from_checks({check_scale_invariance_adapted(kSeed, 100, 1e-8),
                        check_scale_invariance_zeroreg(kSeed, 100, 1e-8)});
  }, 60);
  report("warmup_equivalence",
         [] { return from_checks({check_warmup(kSeed, 50, 1e-8)}); }, 60);
  report("penrose_and_limit", [] {
    return from_checks({check_penrose(kSeed, 1000), check_pinv_limit(kSeed, 50)});
  }, 60);
  report("identities", [] {
    return from_checks({check_det_ratio_identity(kSeed, 1000, 1e-8),
                        check_eigen_product_identity(kSeed, 1000, 1e-8)});
  }, 60);
  report("van_trees_lower_bound", van_trees, 300);
  report("mm_conditional_bound", [&] { return mm_conditional(artifacts); }, 60);
  report("closed_form_vs_oracle", [] {
    return from_checks({check_closed_form_oracle(kSeed, 200, 1e-6)});
  }, 60);

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
