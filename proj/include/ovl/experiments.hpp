#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ovl/empirical.hpp"
#include "ovl/estimator.hpp"
#include "ovl/oracle.hpp"
#include "ovl/sampling.hpp"

namespace ovl {

/// A mixture together with its known crossover count and ground truth.
struct CaseSpec {
  std::string name;
  TwoClassMixture mixture;
  std::size_t n_crossovers;
  OracleResult truth;
};

inline CaseSpec paper_case(int id) {
  switch (id) {
    case 1: return {"case1", case1_mixture(), 1, oracle_case1()};
    case 2: return {"case2", case2_mixture(), 2, oracle_case2()};
  }
  throw std::invalid_argument("unknown case id: " + std::to_string(id));
}

/// Custom mixture. Ground truth comes from the bisection crossover finder on
/// [lo, hi], which must find exactly n_crossovers sign changes.
inline CaseSpec custom_case(TwoClassMixture m, std::size_t n_crossovers, double lo = -20.0,
                            double hi = 20.0, std::size_t grid_points = kDefaultCrossoverGrid) {
  auto c = generic_crossovers(m, lo, hi, grid_points);
  if (c.size() != n_crossovers)
    throw std::invalid_argument("custom case: oracle found " + std::to_string(c.size()) +
                                " crossovers, expected " + std::to_string(n_crossovers));
  const double rho = rho_true(m, c);
  return {"custom", std::move(m), n_crossovers, {std::move(c), rho}};
}

enum class Protocol { nested, independent };

inline std::string_view to_string(Protocol p) {
  return p == Protocol::nested ? "nested" : "independent";
}

struct ExperimentConfig {
  CaseSpec case_spec = paper_case(1);
  std::vector<std::size_t> sizes{100, 1000, 10000};
  std::size_t trials = 30;
  std::uint64_t seed = 0;
  Protocol protocol = Protocol::nested;
  Algorithm algorithm = Algorithm::dp;
  /// Worker threads for trials; 0 picks hardware concurrency.
  unsigned threads = 1;

  void validate() const {
    if (sizes.empty()) throw std::invalid_argument("sizes must be nonempty");
    if (sizes.front() == 0) throw std::invalid_argument("sizes must be positive");
    for (std::size_t i = 1; i < sizes.size(); ++i)
      if (!(sizes[i - 1] < sizes[i]))
        throw std::invalid_argument("sizes must be strictly increasing");
    if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  }
};

struct TrialRecord {
  std::size_t trial_index = 0;
  std::size_t n_samples = 0;
  std::vector<double> v_hat;
  double v_error = 0.0;
  double rho_hat = 0.0;
  double rho_error = 0.0;
  double h_at_optimum = 0.0;
  Priors pi_hat{0.0, 0.0};
  double wall_time_ms = 0.0;
};

namespace detail {

inline constexpr std::uint64_t kNestedTag = 0x6e65737465640000ULL;
inline constexpr std::uint64_t kIndependentTag = 0x696e646570000000ULL;

}  // namespace detail

/// Seed of one sample stream. Nested trials share a single stream across
/// sizes; independent trials draw a fresh stream per size.
inline std::uint64_t trial_seed(std::uint64_t master, std::size_t trial, Protocol protocol,
                                std::size_t size = 0) {
  std::uint64_t s = hash_combine(master, trial);
  if (protocol == Protocol::nested) return hash_combine(s, detail::kNestedTag);
  return hash_combine(hash_combine(s, detail::kIndependentTag), size);
}

inline TrialRecord evaluate_trial(const CaseSpec& cs, Algorithm algo, std::size_t trial,
                                  std::span<const LabeledSample> samples) {
  const auto t0 = std::chrono::steady_clock::now();
  const LabeledDataset ds(samples);
  const auto est = estimate(ds, cs.n_crossovers, algo);
  const auto t1 = std::chrono::steady_clock::now();

  TrialRecord r;
  r.trial_index = trial;
  r.n_samples = samples.size();
  r.v_hat = est.v_hat;
  double sq = 0.0;
  for (std::size_t k = 0; k < est.v_hat.size(); ++k) {
    const double d = est.v_hat[k] - cs.truth.crossovers[k];
    sq += d * d;
  }
  r.v_error = std::sqrt(sq);
  r.rho_hat = est.rho_hat;
  r.rho_error = std::abs(est.rho_hat - cs.truth.rho_true);
  r.h_at_optimum = est.h_at_optimum;
  r.pi_hat = est.pi_hat;
  r.wall_time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return r;
}

/// Runs all trials of a sweep. Records are ordered by (trial, size)
/// regardless of the thread count.
inline std::vector<TrialRecord> run_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto& cs = cfg.case_spec;
  if (cs.truth.crossovers.size() != cs.n_crossovers)
    throw std::invalid_argument("case has no oracle crossovers matching its count");

  std::vector<std::vector<TrialRecord>> per_trial(cfg.trials);
  const auto run_one = [&](std::size_t t) {
    auto& out = per_trial[t];
    if (cfg.protocol == Protocol::nested) {
      const auto stream =
          sample_labeled(cs.mixture, cfg.sizes.back(), trial_seed(cfg.seed, t, cfg.protocol));
      for (std::size_t n : cfg.sizes)
        out.push_back(evaluate_trial(cs, cfg.algorithm, t, std::span(stream).first(n)));
    } else {
      for (std::size_t n : cfg.sizes) {
        const auto samples =
            sample_labeled(cs.mixture, n, trial_seed(cfg.seed, t, cfg.protocol, n));
        out.push_back(evaluate_trial(cs, cfg.algorithm, t, samples));
      }
    }
  };

  unsigned workers = cfg.threads == 0 ? std::thread::hardware_concurrency() : cfg.threads;
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(cfg.trials)));
  if (workers == 1) {
    for (std::size_t t = 0; t < cfg.trials; ++t) run_one(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
          try {
            for (std::size_t t = next++; t < cfg.trials; t = next++) run_one(t);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  std::vector<TrialRecord> records;
  records.reserve(cfg.trials * cfg.sizes.size());
  for (auto& v : per_trial)
    for (auto& r : v) records.push_back(std::move(r));
  return records;
}

struct ErrorStats {
  double median = 0.0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct SizeSummary {
  std::size_t n_samples = 0;
  std::size_t trials = 0;
  ErrorStats v_error;
  ErrorStats rho_error;
};

inline ErrorStats error_stats(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("error_stats of empty sample");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  ErrorStats s;
  s.median = n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(n);
  s.min = v.front();
  s.max = v.back();
  return s;
}

/// Per-size error statistics, in increasing order of sample size.
inline std::vector<SizeSummary> summarize(std::span<const TrialRecord> records) {
  if (records.empty()) throw std::invalid_argument("summarize: no records");
  std::map<std::size_t, std::pair<std::vector<double>, std::vector<double>>> groups;
  for (const auto& r : records) {
    auto& g = groups[r.n_samples];
    g.first.push_back(r.v_error);
    g.second.push_back(r.rho_error);
  }
  std::vector<SizeSummary> out;
  for (auto& [n, g] : groups)
    out.push_back({n, g.first.size(), error_stats(g.first), error_stats(g.second)});
  return out;
}

}  // namespace ovl
