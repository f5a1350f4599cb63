#ifndef REGRETLAB_REPORT_IO_HPP
#define REGRETLAB_REPORT_IO_HPP

// Experiment configuration and report serialization (JSON / CSV).

#include "regretlab/forecasters.hpp"
#include "regretlab/lowerbound.hpp"
#include "regretlab/regret.hpp"
#include "regretlab/sequence.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace regretlab {

inline constexpr const char* kReportSchema = "regretlab.report/1";
inline constexpr const char* kLowerBoundSchema = "regretlab.lowerbound/1";

enum class ReportFormat { Json, Csv };

inline ReportFormat parse_report_format(const std::string& s) {
  if (s == "json") return ReportFormat::Json;
  if (s == "csv") return ReportFormat::Csv;
  throw std::invalid_argument("unknown report format '" + s + "'");
}

/// Where the transcript comes from: a CSV file or a named generator.
struct SequenceSource {
  std::string csv_path;  // non-empty selects CSV input
  std::string generator = "gaussian";
  int d = 2;
  int T = 1000;
  double scale = 1.0;  // gaussian
  int rank = 1;        // lowrank
  double rate = 0.8;   // decaying
};

struct ExperimentConfig {
  std::vector<ForecasterSpec> forecasters;
  SequenceSource source;
  std::optional<double> B;
  std::optional<double> X;
  bool empirical_X = false;
  std::uint64_t seed = 0;
  std::string output;  // empty: stdout
  ReportFormat format = ReportFormat::Json;

  void validate() const {
    if (forecasters.empty()) {
      throw std::invalid_argument("config: at least one forecaster is required");
    }
    for (const auto& f : forecasters) f.validate(true);
    if (source.csv_path.empty()) {
      if (source.d < 1 || source.T < 1) {
        throw std::invalid_argument("config: generator needs d >= 1, T >= 1");
      }
      if (source.generator == "lowrank" &&
          (source.rank < 0 || source.rank > source.d)) {
        throw std::invalid_argument("config: lowrank needs 0 <= rank <= d");
      }
      if (source.generator == "decaying" && !(source.rate > 0.0)) {
        throw std::invalid_argument("config: decaying needs rate > 0");
      }
      if (source.generator != "gaussian" && source.generator != "lowrank" &&
          source.generator != "decaying") {
        throw std::invalid_argument("config: unknown generator '" +
                                    source.generator + "'");
      }
    }
    if (B && !(*B >= 0.0)) throw std::invalid_argument("config: B must be >= 0");
    if (X && !(*X >= 0.0)) throw std::invalid_argument("config: X must be >= 0");
  }
};

inline FeatureSequence load_sequence(const ExperimentConfig& cfg) {
  const SequenceSource& s = cfg.source;
  FeatureSequence seq;
  if (!s.csv_path.empty()) {
    seq = load_csv(s.csv_path);
  } else if (s.generator == "gaussian") {
    seq = gen_gaussian(s.d, s.T, s.scale, cfg.seed);
  } else if (s.generator == "lowrank") {
    seq = gen_lowrank(s.d, s.rank, s.T, cfg.seed);
  } else if (s.generator == "decaying") {
    seq = gen_decaying(s.d, s.T, s.rate, cfg.seed);
  } else {
    throw std::invalid_argument("unknown generator '" + s.generator + "'");
  }
  seq.validate();
  if (seq.T() < 1) throw std::invalid_argument("sequence has no rounds");
  return seq;
}

/// One report per configured forecaster, on the same transcript.
inline std::vector<RegretReport> run_experiment(const ExperimentConfig& cfg,
                                                const FeatureSequence& seq) {
  cfg.validate();
  EvaluateOptions opts;
  opts.B = cfg.B;
  opts.X = cfg.X;
  opts.empirical_X = cfg.empirical_X;
  std::vector<RegretReport> out(cfg.forecasters.size());
  parallel_for(cfg.forecasters.size(), [&](std::size_t i) {
    out[i] = evaluate(cfg.forecasters[i], seq.xs, seq.ys, opts);
  });
  return out;
}

inline nlohmann::json to_json(const Vector& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

inline nlohmann::json to_json(const ForecasterSpec& f) {
  nlohmann::json j;
  j["kind"] = f.name();
  j["lambda"] = f.lambda;
  if (f.gram_estimate_bias > 0.0) j["gram_estimate_bias"] = f.gram_estimate_bias;
  if (f.sherman_morrison) j["sherman_morrison"] = true;
  if (f.gram_prior) j["gram_prior"] = "supplied";
  if (f.feature_schedule) j["schedule"] = "beforehand";
  return j;
}

inline nlohmann::json to_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["seed"] = cfg.seed;
  nlohmann::json fs = nlohmann::json::array();
  for (const auto& f : cfg.forecasters) fs.push_back(to_json(f));
  j["forecasters"] = fs;
  nlohmann::json src;
  if (!cfg.source.csv_path.empty()) {
    src["csv"] = cfg.source.csv_path;
  } else {
    src["generator"] = cfg.source.generator;
    src["d"] = cfg.source.d;
    src["T"] = cfg.source.T;
    if (cfg.source.generator == "gaussian") src["scale"] = cfg.source.scale;
    if (cfg.source.generator == "lowrank") src["rank"] = cfg.source.rank;
    if (cfg.source.generator == "decaying") src["rate"] = cfg.source.rate;
  }
  j["source"] = src;
  j["B"] = cfg.B ? nlohmann::json(*cfg.B) : nlohmann::json(nullptr);
  j["X"] = cfg.X ? nlohmann::json(*cfg.X) : nlohmann::json(nullptr);
  j["empirical_X"] = cfg.empirical_X;
  return j;
}

inline nlohmann::json to_json(const RegretReport& r) {
  nlohmann::json j;
  j["forecaster"] = r.forecaster;
  j["lambda"] = r.lambda;
  j["d"] = r.d;
  j["T"] = r.T;
  j["B"] = r.B;
  j["X"] = r.X ? nlohmann::json(*r.X) : nlohmann::json(nullptr);
  j["rank_T"] = r.rank_T;
  j["cum_loss"] = r.cum_loss;
  j["offline_loss"] = r.offline_loss;
  j["uniform_regret"] = r.uniform_regret;
  j["u_star"] = to_json(r.u_star);
  j["bounds"] = r.bounds;
  j["verdicts"] = r.verdicts;
  j["notes"] = r.notes;
  j["pass"] = r.all_pass();
  if (r.mm_condition) {
    j["mm_condition"] = {{"ok", r.mm_condition->ok},
                         {"margins", r.mm_condition->margins}};
  }
  std::vector<int> t;
  std::vector<double> yhat, y, loss, cum;
  double acc = 0.0;
  for (const RoundRecord& rec : r.records) {
    t.push_back(rec.t);
    yhat.push_back(rec.yhat);
    y.push_back(rec.y);
    loss.push_back(rec.loss);
    acc += rec.loss;
    cum.push_back(acc);
  }
  j["records"] = {{"t", t}, {"yhat", yhat}, {"y", y}, {"loss", loss},
                  {"cum_loss", cum}};
  return j;
}

inline nlohmann::json report_document(const ExperimentConfig& cfg,
                                      const std::vector<RegretReport>& reports) {
  nlohmann::json doc;
  doc["schema"] = kReportSchema;
  doc["config"] = to_json(cfg);
  nlohmann::json rs = nlohmann::json::array();
  for (const auto& r : reports) rs.push_back(to_json(r));
  doc["reports"] = rs;
  return doc;
}

/// Summary lines prefixed with '#', then one row per forecaster and round.
inline void write_report_csv(std::ostream& out,
                             const std::vector<RegretReport>& reports) {
  out << "# schema," << kReportSchema << '\n';
  for (const auto& r : reports) {
    out << "# forecaster," << r.forecaster << ",uniform_regret,"
        << detail::format_double(r.uniform_regret) << ",cum_loss,"
        << detail::format_double(r.cum_loss) << ",offline_loss,"
        << detail::format_double(r.offline_loss) << ",B,"
        << detail::format_double(r.B) << '\n';
    for (const auto& [name, value] : r.bounds) {
      out << "# bound," << r.forecaster << ',' << name << ','
          << detail::format_double(value);
      const auto v = r.verdicts.find(name);
      if (v != r.verdicts.end()) out << ',' << (v->second ? "pass" : "fail");
      out << '\n';
    }
  }
  out << "forecaster,t,yhat,y,loss\n";
  for (const auto& r : reports) {
    for (const RoundRecord& rec : r.records) {
      out << r.forecaster << ',' << rec.t << ','
          << detail::format_double(rec.yhat) << ','
          << detail::format_double(rec.y) << ','
          << detail::format_double(rec.loss) << '\n';
    }
  }
}

inline void save_report(const ExperimentConfig& cfg,
                        const std::vector<RegretReport>& reports,
                        const std::string& path, ReportFormat format) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  if (format == ReportFormat::Json) {
    out << report_document(cfg, reports).dump(2) << '\n';
  } else {
    write_report_csv(out, reports);
  }
}

inline nlohmann::json to_json(const LowerBoundRun& run) {
  return {{"trials", run.trials},
          {"per_round_risk", run.per_round_risk},
          {"per_round_se", run.per_round_se},
          {"van_trees_rhs", run.van_trees},
          {"first_violation", run.first_violation()},
          {"holds", run.holds()}};
}

inline nlohmann::json to_json(const RegretLowerRun& run) {
  return {{"trials", run.trials},
          {"estimate", run.estimate},
          {"se", run.se},
          {"reference", run.reference},
          {"holds", run.holds()}};
}

}  // namespace regretlab

#endif  // REGRETLAB_REPORT_IO_HPP
