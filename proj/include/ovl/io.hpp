#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ovl/estimator.hpp"
#include "ovl/experiments.hpp"
#include "ovl/oracle.hpp"
#include "ovl/sampling.hpp"

namespace ovl::io {

inline constexpr std::string_view kSchemaVersion = "1.0";
inline constexpr std::string_view kSampleHeader = "x,label";

/// Malformed input file. line() is 1-based; 0 when not tied to a line.
class InputError : public std::runtime_error {
 public:
  InputError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Shortest decimal text that parses back to the same double.
inline std::string format_roundtrip(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// 12 significant digits, for derived tables.
inline std::string format_12(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

}  // namespace detail

/// Reads `x,label` CSV. Blank lines are ignored; labels must be 1 or 2.
inline std::vector<LabeledSample> read_samples_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  std::vector<LabeledSample> out;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view row = line;
    if (lineno == 1 && row.starts_with("\xEF\xBB\xBF")) row.remove_prefix(3);
    row = detail::trim(row);
    if (row.empty()) continue;
    if (!header_seen) {
      if (row != kSampleHeader)
        throw InputError(lineno, "expected header 'x,label', got '" + std::string(row) + "'");
      header_seen = true;
      continue;
    }
    const auto comma = row.find(',');
    if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos)
      throw InputError(lineno, "expected two comma-separated fields");
    const auto xs = detail::trim(row.substr(0, comma));
    const auto ls = detail::trim(row.substr(comma + 1));

    double x = 0.0;
    auto rx = std::from_chars(xs.data(), xs.data() + xs.size(), x);
    if (rx.ec != std::errc() || rx.ptr != xs.data() + xs.size() || !std::isfinite(x))
      throw InputError(lineno, "invalid x value '" + std::string(xs) + "'");
    int label = 0;
    auto rl = std::from_chars(ls.data(), ls.data() + ls.size(), label);
    if (rl.ec != std::errc() || rl.ptr != ls.data() + ls.size() || (label != 1 && label != 2))
      throw InputError(lineno, "label must be 1 or 2, got '" + std::string(ls) + "'");
    out.push_back({x, static_cast<Label>(label)});
  }
  if (!header_seen) throw InputError(0, "empty input: missing header 'x,label'");
  if (out.empty()) throw InputError(0, "no samples after header");
  return out;
}

inline std::vector<LabeledSample> read_samples_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(0, "cannot open input file '" + path + "'");
  return read_samples_csv(in);
}

inline void write_samples_csv(std::ostream& out, std::span<const LabeledSample> samples) {
  out << kSampleHeader << '\n';
  for (const auto& s : samples)
    out << format_roundtrip(s.x) << ',' << static_cast<int>(s.y) << '\n';
}

inline void write_estimate_csv(std::ostream& out, const EstimateResult& r) {
  out << "n_samples,n_crossovers,algorithm,rho_hat,h_at_optimum,pi1_hat,pi2_hat";
  for (std::size_t k = 0; k < r.v_hat.size(); ++k) out << ",v_hat_" << k + 1;
  out << '\n'
      << r.n_samples << ',' << r.n_crossovers << ',' << to_string(r.algorithm) << ','
      << format_12(r.rho_hat) << ',' << format_12(r.h_at_optimum) << ','
      << format_12(r.pi_hat.pi1) << ',' << format_12(r.pi_hat.pi2);
  for (double v : r.v_hat) out << ',' << format_12(v);
  out << '\n';
}

/// Trial table. Timing is deliberately absent so reruns are byte-identical.
inline void write_trials_csv(std::ostream& out, std::span<const TrialRecord> records,
                             std::size_t n_crossovers) {
  out << "trial,n_samples";
  for (std::size_t k = 0; k < n_crossovers; ++k) out << ",v_hat_" << k + 1;
  out << ",v_error,rho_hat,rho_error,pi1_hat\n";
  for (const auto& r : records) {
    out << r.trial_index << ',' << r.n_samples;
    for (double v : r.v_hat) out << ',' << format_12(v);
    out << ',' << format_12(r.v_error) << ',' << format_12(r.rho_hat) << ','
        << format_12(r.rho_error) << ',' << format_12(r.pi_hat.pi1) << '\n';
  }
}

using nlohmann::json;

inline json to_json(const EstimateResult& r) {
  return {{"n_crossovers", r.n_crossovers},
          {"v_hat", r.v_hat},
          {"candidate_indices", r.candidate_indices},
          {"rho_hat", r.rho_hat},
          {"h_at_optimum", r.h_at_optimum},
          {"pi_hat", {r.pi_hat.pi1, r.pi_hat.pi2}},
          {"algorithm", to_string(r.algorithm)},
          {"n_samples", r.n_samples}};
}

inline json to_json(const OracleResult& r) {
  return {{"crossovers", r.crossovers}, {"rho_true", r.rho_true}};
}

inline json to_json(const ErrorStats& s) {
  return {{"median", s.median}, {"mean", s.mean}, {"min", s.min}, {"max", s.max}};
}

inline json to_json(const SizeSummary& s) {
  return {{"n_samples", s.n_samples},
          {"trials", s.trials},
          {"v_error", to_json(s.v_error)},
          {"rho_error", to_json(s.rho_error)}};
}

inline json envelope(std::string_view command, json config, json payload) {
  return {{"schema_version", kSchemaVersion},
          {"command", command},
          {"config", std::move(config)},
          {"payload", std::move(payload)}};
}

}  // namespace ovl::io
