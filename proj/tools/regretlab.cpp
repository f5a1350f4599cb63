// regretlab command-line entry point.
//
// Exit codes: 0 ok, 1 a verdict failed, 2 usage or configuration error,
// 3 runtime failure (I/O, numerics).

#include "regretlab/regretlab.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using namespace regretlab;

constexpr int kExitVerdict = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// "kind" or "kind:lambda".  Extra kinds: vaw_sm (Sherman-Morrison VAW) and
/// zeroreg_est (shrunk ZeroReg, lambda is the shrinkage).
struct ForecasterArg {
  std::string kind;
  std::optional<double> lambda;
};

ForecasterArg parse_forecaster_arg(const std::string& s) {
  ForecasterArg out;
  const auto colon = s.find(':');
  out.kind = s.substr(0, colon);
  if (colon != std::string::npos) {
    const std::string num = s.substr(colon + 1);
    try {
      std::size_t used = 0;
      out.lambda = std::stod(num, &used);
      if (used != num.size()) throw std::invalid_argument(num);
    } catch (const std::exception&) {
      throw UsageError("bad lambda in --forecaster '" + s + "'");
    }
  }
  return out;
}

/// AdaptedRidge defaults to lambda = r_T / T, the optimized choice.
ForecasterSpec make_spec(const ForecasterArg& a, const FeatureSequence* seq) {
  const auto lam = [&](double fallback) { return a.lambda.value_or(fallback); };
  if (a.kind == "vaw") return ForecasterSpec::vaw(lam(1.0));
  if (a.kind == "vaw_sm") return ForecasterSpec::vaw(lam(1.0), true);
  if (a.kind == "zeroreg") {
    if (a.lambda && *a.lambda != 0.0) {
      throw UsageError("zeroreg takes no lambda; use zeroreg_est:lambda");
    }
    return ForecasterSpec::zero_reg();
  }
  if (a.kind == "zeroreg_est") {
    return ForecasterSpec::zero_reg_estimated_gram(lam(1.0));
  }
  if (a.kind == "adapted" || a.kind == "mm") {
    ForecasterSpec s;
    s.kind = parse_forecaster_kind(a.kind);
    if (s.kind == ForecasterKind::AdaptedRidge) {
      double fallback = 1.0;
      if (seq && seq->T() > 0) {
        fallback = static_cast<double>(std::max(
                       1, symmetric_eigen(gram_of(seq->xs)).rank)) /
                   seq->T();
      }
      s.lambda = lam(fallback);
    }
    return s;  // schedule filled from the transcript at evaluation time
  }
  throw UsageError("unknown forecaster '" + a.kind + "'");
}

void print_json(const nlohmann::json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// ---------------------------------------------------------------- run

struct RunArgs {
  std::string csv;
  std::string gen = "gaussian";
  int d = 2;
  int T = 1000;
  double scale = 1.0;
  int rank = 1;
  double rate = 0.8;
  std::uint64_t seed = 0;
  std::vector<std::string> forecasters;
  std::optional<double> B;
  std::optional<double> X;
  bool empirical_X = false;
  std::string out;
  std::string format = "json";
  std::string save_sequence;
};

int do_run(const RunArgs& a) {
  ExperimentConfig cfg;
  cfg.source.csv_path = a.csv;
  cfg.source.generator = a.gen;
  cfg.source.d = a.d;
  cfg.source.T = a.T;
  cfg.source.scale = a.scale;
  cfg.source.rank = a.rank;
  cfg.source.rate = a.rate;
  cfg.seed = a.seed;
  cfg.B = a.B;
  cfg.X = a.X;
  cfg.empirical_X = a.empirical_X;
  cfg.output = a.out;
  try {
    cfg.format = parse_report_format(a.format);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::vector<ForecasterArg> fargs;
  for (const auto& f : a.forecasters) fargs.push_back(parse_forecaster_arg(f));
  if (fargs.empty()) fargs.push_back({"zeroreg", std::nullopt});

  // Validate the generator parameters before generating anything.
  cfg.forecasters.push_back(ForecasterSpec::zero_reg());
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (!a.csv.empty() && !std::ifstream(a.csv)) {
    throw UsageError("cannot read --csv file '" + a.csv + "'");
  }
  const FeatureSequence seq = load_sequence(cfg);
  cfg.forecasters.clear();
  for (const auto& f : fargs) cfg.forecasters.push_back(make_spec(f, &seq));
  if (!a.save_sequence.empty()) save_csv(seq, a.save_sequence);

  const std::vector<RegretReport> reports = run_experiment(cfg, seq);
  if (cfg.output.empty() || cfg.output == "-") {
    if (cfg.format == ReportFormat::Json) {
      std::cout << report_document(cfg, reports).dump(2) << '\n';
    } else {
      write_report_csv(std::cout, reports);
    }
  } else {
    save_report(cfg, reports, cfg.output, cfg.format);
  }
  bool pass = true;
  for (const auto& r : reports) {
    std::cerr << r.forecaster << ": regret " << fmt(r.uniform_regret);
    for (const auto& [name, ok] : r.verdicts) {
      std::cerr << "  " << name << (ok ? " pass" : " FAIL");
    }
    std::cerr << '\n';
    pass = pass && r.all_pass();
  }
  return pass ? 0 : kExitVerdict;
}

// ---------------------------------------------------------------- bounds

struct BoundsArgs {
  int d = 1;
  int T = 1;
  double B = 1.0;
  std::optional<double> lambda;
  std::optional<int> rank;
  std::optional<double> X;
  std::optional<double> lambda_min_pos;
  bool optimized = false;
};

int do_bounds(const BoundsArgs& a) {
  if (a.d < 1 || a.T < 1) throw UsageError("bounds: need d >= 1 and T >= 1");
  if (!(a.B >= 0.0)) throw UsageError("bounds: B must be >= 0");
  const int r = a.rank.value_or(a.d);
  if (r < 1 || r > a.d) throw UsageError("bounds: need 1 <= rank <= d");
  if (a.optimized) {
    std::cout << fmt(bound_adapted_optimized(r, a.T, a.B)) << '\n';
    return 0;
  }
  const double lambda = a.lambda.value_or(static_cast<double>(r) / a.T);
  if (!(lambda > 0.0)) throw UsageError("bounds: lambda must be > 0");
  std::cout << "adapted " << fmt(bound_adapted(lambda, r, a.T, a.B)) << '\n';
  std::cout << "adapted_optimized " << fmt(bound_adapted_optimized(r, a.T, a.B))
            << '\n';
  if (a.X && a.lambda_min_pos) {
    std::cout << "vaw_uniform "
              << fmt(bound_vaw_uniform(lambda, r, *a.lambda_min_pos, a.T, *a.X,
                                       a.B))
              << '\n';
  }
  if (a.T >= 8 && a.B > 0.0) {
    std::cout << "minimax_lower " << fmt(lower_bound_value(a.d, a.T, a.B))
              << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------- lowerbound

struct LowerArgs {
  int d = 2;
  int T = 200;
  std::optional<double> alpha;
  double B = 1.0;
  int trials = 2000;
  std::uint64_t seed = 0;
  std::string forecaster = "vaw:1";
  std::string mode = "both";
  std::string out;
};

int do_lowerbound(const LowerArgs& a) {
  BayesEnvironment env;
  env.d = a.d;
  env.T = a.T;
  env.alpha = a.alpha.value_or(BayesEnvironment::default_alpha(std::max(a.T, 1)));
  env.B = a.B;
  env.seed = a.seed;
  if (a.mode != "risk" && a.mode != "regret" && a.mode != "both") {
    throw UsageError("lowerbound: --mode must be risk, regret or both");
  }
  try {
    env.validate();
    detail::require_trials(a.trials);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const ForecasterSpec spec =
      make_spec(parse_forecaster_arg(a.forecaster), nullptr);
  nlohmann::json doc;
  doc["schema"] = kLowerBoundSchema;
  doc["config"] = {{"d", env.d},         {"T", env.T},
                   {"alpha", env.alpha}, {"B", env.B},
                   {"seed", env.seed},   {"trials", a.trials},
                   {"forecaster", to_json(spec)}};
  bool pass = true;
  if (a.mode != "regret") {
    const LowerBoundRun run = bayes_risk_estimate(spec, env, a.trials);
    doc["risk"] = to_json(run);
    std::cerr << "risk >= van Trees - 3 SE: "
              << (run.holds() ? "holds" : "VIOLATED at t = " +
                                              std::to_string(run.first_violation()))
              << '\n';
    pass = pass && run.holds();
  }
  if (a.mode != "risk") {
    const RegretLowerRun run = regret_lower_experiment(env, spec, a.trials);
    doc["regret"] = to_json(run);
    std::cerr << "regret " << fmt(run.estimate) << " +- " << fmt(run.se)
              << " vs reference " << fmt(run.reference) << ": "
              << (run.holds() ? "holds" : "VIOLATED") << '\n';
    pass = pass && run.holds();
  }
  doc["pass"] = pass;
  print_json(doc, a.out);
  return pass ? 0 : kExitVerdict;
}

// ---------------------------------------------------------------- verify

int do_verify(std::uint64_t seed) {
  bool pass = true;
  for (const CheckResult& r : run_verify(seed)) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail
              << '\n';
    pass = pass && r.passed;
  }
  return pass ? 0 : kExitVerdict;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online linear regression: forecasters, regret and bounds"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Evaluate forecasters on a sequence");
  run_cmd->add_option("--csv", run.csv, "Input CSV with header x1..xd,y");
  run_cmd->add_option("--gen", run.gen, "Generator: gaussian, lowrank, decaying");
  run_cmd->add_option("--d", run.d, "Feature dimension");
  run_cmd->add_option("--T", run.T, "Rounds");
  run_cmd->add_option("--scale", run.scale, "gaussian: feature scale");
  run_cmd->add_option("--rank", run.rank, "lowrank: subspace dimension");
  run_cmd->add_option("--rate", run.rate, "decaying: per-round decay");
  run_cmd->add_option("--seed", run.seed, "RNG seed");
  run_cmd->add_option("--forecaster", run.forecasters,
                      "kind[:lambda], repeatable; kinds vaw, vaw_sm, adapted, "
                      "zeroreg, zeroreg_est, mm");
  run_cmd->add_option("--B", run.B, "Observation bound (default max|y|)");
  run_cmd->add_option("--X", run.X, "Feature-norm bound for the uniform VAW bound");
  run_cmd->add_flag("--empirical-X", run.empirical_X,
                    "Use max ||x_t|| when --X is absent");
  run_cmd->add_option("--out", run.out, "Report path (default stdout)");
  run_cmd->add_option("--format", run.format, "json or csv");
  run_cmd->add_option("--save-sequence", run.save_sequence,
                      "Also write the transcript as CSV");

  BoundsArgs bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "Print closed-form bound values");
  bounds_cmd->add_option("--d", bounds.d, "Feature dimension")->required();
  bounds_cmd->add_option("--T", bounds.T, "Rounds")->required();
  bounds_cmd->add_option("--B", bounds.B, "Observation bound");
  bounds_cmd->add_option("--lambda", bounds.lambda, "Regularization (default r/T)");
  bounds_cmd->add_option("--rank", bounds.rank, "Rank of G_T (default d)");
  bounds_cmd->add_option("--X", bounds.X, "Feature-norm bound");
  bounds_cmd->add_option("--lambda-min-pos", bounds.lambda_min_pos,
                         "Smallest positive eigenvalue of G_T");
  bounds_cmd->add_flag("--optimized", bounds.optimized,
                       "Print only the optimized adapted-ridge bound");

  LowerArgs lower;
  auto* lower_cmd =
      app.add_subcommand("lowerbound", "Monte-Carlo lower-bound experiment");
  lower_cmd->add_option("--d", lower.d, "Feature dimension");
  lower_cmd->add_option("--T", lower.T, "Rounds");
  lower_cmd->add_option("--alpha", lower.alpha, "Beta prior parameter (default 1 + ln T)");
  lower_cmd->add_option("--B", lower.B, "Scale of the [-B, B] game");
  lower_cmd->add_option("--trials", lower.trials, "Monte-Carlo trials (>= 30)");
  lower_cmd->add_option("--seed", lower.seed, "RNG seed");
  lower_cmd->add_option("--forecaster", lower.forecaster, "kind[:lambda]");
  lower_cmd->add_option("--mode", lower.mode, "risk, regret or both");
  lower_cmd->add_option("--out", lower.out, "JSON output path (default stdout)");

  std::uint64_t verify_seed = 20240531;
  auto* verify_cmd = app.add_subcommand("verify", "Run the invariant suite");
  verify_cmd->add_option("--seed", verify_seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*run_cmd) return do_run(run);
    if (*bounds_cmd) return do_bounds(bounds);
    if (*lower_cmd) return do_lowerbound(lower);
    if (*verify_cmd) return do_verify(verify_seed);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CsvError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
