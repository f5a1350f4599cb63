#ifndef REGRETLAB_SEQUENCE_HPP
#define REGRETLAB_SEQUENCE_HPP

// Feature/observation transcripts: generators, transforms and CSV I/O.
//
// CSV layout: a header row "x1,...,xd,y" followed by one row per round.
// Numbers are written with 17 significant digits so a save/load cycle
// reproduces every double exactly.

#include "regretlab/linalg.hpp"
#include "regretlab/parallel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace regretlab {

struct FeatureSequence {
  int d = 0;
  std::vector<Vector> xs;
  std::vector<double> ys;

  int T() const { return static_cast<int>(xs.size()); }

  void validate() const {
    if (d < 1) throw DimensionError("sequence: dimension must be >= 1");
    if (xs.size() != ys.size()) {
      throw DimensionError("sequence: feature/observation length mismatch");
    }
    for (const Vector& x : xs) {
      detail::require_dim(d, x.size(), "sequence");
      if (!x.allFinite()) throw NumericalError("sequence: non-finite feature");
    }
    for (double y : ys) {
      if (!std::isfinite(y)) throw NumericalError("sequence: non-finite y");
    }
  }

  /// This sequence followed by `tail`.
  FeatureSequence then(const FeatureSequence& tail) const {
    detail::require_dim(d, tail.d, "sequence concat");
    FeatureSequence out = *this;
    out.xs.insert(out.xs.end(), tail.xs.begin(), tail.xs.end());
    out.ys.insert(out.ys.end(), tail.ys.begin(), tail.ys.end());
    return out;
  }
};

/// i.i.d. N(0, scale^2 I) features; y = clamp(u0 . x + 0.5 eps, [-1, 1]) for a
/// hidden u0 ~ N(0, I/d).
inline FeatureSequence gen_gaussian(int d, int T, double scale,
                                    std::uint64_t seed) {
  if (d < 1 || T < 1) throw std::invalid_argument("gen_gaussian: d, T >= 1");
  auto rng = stream_rng(seed, 0);
  std::normal_distribution<double> n(0.0, 1.0);
  Vector u0(d);
  for (int i = 0; i < d; ++i) u0(i) = n(rng) / std::sqrt(d);
  FeatureSequence s;
  s.d = d;
  s.xs.reserve(T);
  s.ys.reserve(T);
  for (int t = 0; t < T; ++t) {
    Vector x(d);
    for (int i = 0; i < d; ++i) x(i) = scale * n(rng);
    const double y = std::clamp(u0.dot(x) + 0.5 * n(rng), -1.0, 1.0);
    s.xs.push_back(std::move(x));
    s.ys.push_back(y);
  }
  return s;
}

/// Gaussian features confined to a random `rank`-dimensional subspace.
inline FeatureSequence gen_lowrank(int d, int rank, int T, std::uint64_t seed) {
  if (rank < 0 || rank > d) {
    throw std::invalid_argument("gen_lowrank: need 0 <= rank <= d");
  }
  FeatureSequence base = gen_gaussian(rank > 0 ? rank : 1, T, 1.0, seed);
  auto rng = stream_rng(seed, 1);
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix basis(d, std::max(rank, 1));
  for (Eigen::Index j = 0; j < basis.cols(); ++j) {
    for (Eigen::Index i = 0; i < d; ++i) basis(i, j) = n(rng);
  }
  if (rank == 0) basis.setZero();
  FeatureSequence s;
  s.d = d;
  s.ys = base.ys;
  for (const Vector& z : base.xs) s.xs.push_back(basis * z);
  return s;
}

/// x_t = rate^{t-1} g_t with g_t ~ N(0, I), y_t ~ U[-1, 1].  Early rounds
/// dominate the Gram matrix, which is what the MM feasibility condition
/// favours.
inline FeatureSequence gen_decaying(int d, int T, double rate,
                                    std::uint64_t seed) {
  if (d < 1 || T < 1) throw std::invalid_argument("gen_decaying: d, T >= 1");
  if (!(rate > 0.0)) throw std::invalid_argument("gen_decaying: rate > 0");
  auto rng = stream_rng(seed, 2);
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  FeatureSequence s;
  s.d = d;
  double mag = 1.0;
  for (int t = 0; t < T; ++t) {
    Vector x(d);
    for (int i = 0; i < d; ++i) x(i) = mag * n(rng);
    s.xs.push_back(std::move(x));
    s.ys.push_back(u(rng));
    mag *= rate;
  }
  return s;
}

/// d rounds x_k = sqrt(lambda) e_k with y_k = 0.
inline FeatureSequence warmup_prefix(int d, double lambda) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("warmup_prefix: lambda < 0");
  FeatureSequence s;
  s.d = d;
  for (int k = 0; k < d; ++k) {
    s.xs.push_back(std::sqrt(lambda) * Vector::Unit(d, k));
    s.ys.push_back(0.0);
  }
  return s;
}

/// Features replaced by Gamma x_t; observations untouched.
inline FeatureSequence apply_linear_map(const FeatureSequence& seq,
                                        const Matrix& gamma) {
  detail::require_square(gamma, "apply_linear_map");
  detail::require_dim(seq.d, gamma.rows(), "apply_linear_map");
  if (!is_invertible(gamma)) {
    throw NumericalError("apply_linear_map: Gamma is singular");
  }
  FeatureSequence out = seq;
  for (Vector& x : out.xs) x = gamma * x;
  return out;
}

class CsvError : public std::runtime_error {
 public:
  CsvError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

inline std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline double parse_number(std::string_view field, int line) {
  double v = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (!field.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (field.empty() || ec != std::errc{} || ptr != last) {
    throw CsvError(line, "malformed number '" + std::string(field) + "'");
  }
  if (!std::isfinite(v)) {
    throw CsvError(line, "non-finite value '" + std::string(field) + "'");
  }
  return v;
}

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

inline FeatureSequence parse_csv(std::istream& in) {
  std::string line;
  int lineno = 0;
  FeatureSequence s;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view view = detail::trim(line);
    if (view.empty()) continue;
    const auto fields = detail::split_commas(view);
    if (!have_header) {
      const auto n = fields.size();
      if (n < 2 || fields.back() != "y") {
        throw CsvError(lineno, "header must be x1,...,xd,y");
      }
      for (std::size_t i = 0; i + 1 < n; ++i) {
        if (fields[i] != "x" + std::to_string(i + 1)) {
          throw CsvError(lineno, "header must be x1,...,xd,y");
        }
      }
      s.d = static_cast<int>(n - 1);
      have_header = true;
      continue;
    }
    if (fields.size() != static_cast<std::size_t>(s.d + 1)) {
      throw CsvError(lineno, "expected " + std::to_string(s.d + 1) +
                                 " columns, got " +
                                 std::to_string(fields.size()));
    }
    Vector x(s.d);
    for (int i = 0; i < s.d; ++i) x(i) = detail::parse_number(fields[i], lineno);
    s.xs.push_back(std::move(x));
    s.ys.push_back(detail::parse_number(fields.back(), lineno));
  }
  if (!have_header) throw CsvError(lineno + 1, "missing header row");
  return s;
}

inline FeatureSequence load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parse_csv(in);
}

inline void write_csv(std::ostream& out, const FeatureSequence& s) {
  for (int i = 0; i < s.d; ++i) out << 'x' << (i + 1) << ',';
  out << "y\n";
  for (std::size_t t = 0; t < s.xs.size(); ++t) {
    for (int i = 0; i < s.d; ++i) out << detail::format_double(s.xs[t](i)) << ',';
    out << detail::format_double(s.ys[t]) << '\n';
  }
}

inline void save_csv(const FeatureSequence& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  write_csv(out, s);
}

}  // namespace regretlab

#endif  // REGRETLAB_SEQUENCE_HPP
