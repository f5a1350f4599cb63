// Runs every forecaster on one rank-deficient sequence and prints regret
// against the bounds that apply to it.

#include "regretlab/regretlab.hpp"

#include <cstdio>

using namespace regretlab;

int main() {
  const FeatureSequence s = gen_lowrank(4, 2, 2000, 7);

  std::vector<ForecasterSpec> specs = {
      ForecasterSpec::vaw(1.0), ForecasterSpec::zero_reg(),
      ForecasterSpec::zero_reg_estimated_gram(1.0)};
  ForecasterSpec adapted;
  adapted.kind = ForecasterKind::AdaptedRidge;
  adapted.lambda = 2.0 / s.T();  // r_T / T
  specs.push_back(adapted);

  EvaluateOptions opts;
  opts.B = 1.0;
  opts.empirical_X = true;
  for (const ForecasterSpec& spec : specs) {
    const RegretReport r = evaluate(spec, s.xs, s.ys, opts);
    std::printf("%-14s regret %9.4f  rank_T %d\n", r.forecaster.c_str(),
                r.uniform_regret, r.rank_T);
    for (const auto& [name, value] : r.bounds) {
      const auto v = r.verdicts.find(name);
      std::printf("    %-22s %10.4f  %s\n", name.c_str(), value,
                  v == r.verdicts.end() ? "(info)" : v->second ? "ok" : "VIOLATED");
    }
    for (const auto& [name, note] : r.notes) {
      std::printf("    %-22s %s\n", name.c_str(), note.c_str());
    }
  }

  // Bounds that depend only on (d, T, B).
  std::printf("\nminimax lower bound, d=4 T=2000: %.4f\n",
              lower_bound_value(4, 2000, 1.0));
  std::printf("optimized adapted bound, r=2:     %.4f\n",
              bound_adapted_optimized(2, 2000, 1.0));
  return 0;
}
