#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ovl/empirical.hpp"
#include "ovl/impurity.hpp"

namespace ovl {

enum class Algorithm { dp, exhaustive, min_rho };

inline std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::dp: return "dp";
    case Algorithm::exhaustive: return "exhaustive";
    case Algorithm::min_rho: return "min-rho";
  }
  return "?";
}

inline Algorithm parse_algorithm(std::string_view s) {
  if (s == "dp") return Algorithm::dp;
  if (s == "exhaustive") return Algorithm::exhaustive;
  if (s == "min-rho") return Algorithm::min_rho;
  throw std::invalid_argument("unknown algorithm: " + std::string(s));
}

struct EstimateResult {
  std::size_t n_crossovers = 0;
  std::vector<double> v_hat;
  /// 0-based indices into the candidate grid, weakly increasing.
  std::vector<std::size_t> candidate_indices;
  double rho_hat = 0.0;
  double h_at_optimum = 0.0;
  Priors pi_hat{0.0, 0.0};
  Algorithm algorithm = Algorithm::dp;
  std::size_t n_samples = 0;
};

/// Plug-in overlap of a split: sum_k min_j N_XY(S_k, j) / N.
inline double rho_hat(const LabeledDataset& ds, const SplitVector& sv) {
  Count s = 0;
  for (const auto& c : segment_counts(ds, sv)) s += std::min(c.n1, c.n2);
  return static_cast<double>(s) / static_cast<double>(ds.size());
}

/// Overlap estimate when the densities never cross: min of the class priors.
inline double estimate_no_crossover(const LabeledDataset& ds) {
  const auto p = empirical_priors(ds);
  return std::min(p.pi1, p.pi2);
}

/// Refuse exhaustive enumeration above this many tuples.
inline constexpr double kExhaustiveTupleLimit = 1e7;

namespace detail {

inline EstimateResult make_result(const LabeledDataset& ds, const CandidateGrid& grid,
                                  std::vector<std::size_t> indices, Algorithm algo) {
  EstimateResult r;
  r.n_crossovers = indices.size();
  r.n_samples = ds.size();
  r.algorithm = algo;
  r.pi_hat = empirical_priors(ds);
  for (std::size_t i : indices) r.v_hat.push_back(grid[i]);
  r.candidate_indices = std::move(indices);
  const SplitVector sv(r.v_hat);
  r.rho_hat = rho_hat(ds, sv);
  r.h_at_optimum = goodness_closed_form(ds, sv);
  return r;
}

/// Number of weakly increasing n-tuples over k values, C(k + n - 1, n).
inline double multiset_count(std::size_t k, std::size_t n) {
  double c = 1.0;
  for (std::size_t i = 1; i <= n; ++i)
    c = c * static_cast<double>(k + n - i) / static_cast<double>(i);
  return c;
}

/// Optimizes a segment-separable objective over weakly increasing tuples of
/// grid boundaries and returns the lexicographically smallest optimal tuple.
///
/// suffix[k][i] is the best total over the segments to the right of a cut at
/// grid index i when k further cuts (at indices >= i) remain. Walking forward
/// and always taking the smallest index that attains the table value yields
/// the lexicographic minimum among all optimal tuples.
template <class SegmentScore, class Better>
std::vector<std::size_t> optimize_tuple(const LabeledDataset& ds, const CandidateGrid& grid,
                                        std::size_t n_cuts, SegmentScore seg, Better better) {
  const std::size_t k_grid = grid.size();
  const std::size_t n = ds.size();
  std::vector<std::size_t> rank(k_grid);
  for (std::size_t i = 0; i < k_grid; ++i) rank[i] = ds.rank_of(grid[i]);

  std::vector<std::vector<Count>> suffix(n_cuts, std::vector<Count>(k_grid));
  for (std::size_t i = 0; i < k_grid; ++i) suffix[0][i] = seg(rank[i], n);
  for (std::size_t k = 1; k < n_cuts; ++k) {
    const auto& prev = suffix[k - 1];
    auto& cur = suffix[k];
    for (std::size_t i = 0; i < k_grid; ++i) {
      Count best = seg(rank[i], rank[i]) + prev[i];
      for (std::size_t j = i + 1; j < k_grid; ++j) {
        const Count v = seg(rank[i], rank[j]) + prev[j];
        if (better(v, best)) best = v;
      }
      cur[i] = best;
    }
  }

  std::vector<std::size_t> tuple;
  tuple.reserve(n_cuts);
  {
    const auto& top = suffix[n_cuts - 1];
    std::size_t arg = 0;
    Count best = seg(0, rank[0]) + top[0];
    for (std::size_t i = 1; i < k_grid; ++i) {
      const Count v = seg(0, rank[i]) + top[i];
      if (better(v, best)) {
        best = v;
        arg = i;
      }
    }
    tuple.push_back(arg);
  }
  for (std::size_t k = n_cuts - 1; k >= 1; --k) {
    const std::size_t i = tuple.back();
    const auto& prev = suffix[k - 1];
    std::size_t j = i;
    while (seg(rank[i], rank[j]) + prev[j] != suffix[k][i]) ++j;
    tuple.push_back(j);
  }
  return tuple;
}

}  // namespace detail

/// Best (n+1)-ary split by dynamic programming over the candidate grid.
/// Runs in O(n K^2) for a grid of size K.
inline EstimateResult search_dp(const LabeledDataset& ds, std::size_t n) {
  if (n == 0) throw std::invalid_argument("search requires n >= 1");
  const auto grid = candidate_grid(ds);
  auto tuple = detail::optimize_tuple(
      ds, grid, n,
      [&](std::size_t lo, std::size_t hi) {
        const auto c = ds.counts_between(lo, hi);
        return std::max(c.n1, c.n2);
      },
      [](Count a, Count b) { return a > b; });
  return detail::make_result(ds, grid, std::move(tuple), Algorithm::dp);
}

/// Split minimizing the plug-in overlap directly. Selects the same tuple as
/// search_dp since goodness + overlap is constant over splits.
inline EstimateResult search_min_rho(const LabeledDataset& ds, std::size_t n) {
  if (n == 0) throw std::invalid_argument("search requires n >= 1");
  const auto grid = candidate_grid(ds);
  auto tuple = detail::optimize_tuple(
      ds, grid, n,
      [&](std::size_t lo, std::size_t hi) {
        const auto c = ds.counts_between(lo, hi);
        return std::min(c.n1, c.n2);
      },
      [](Count a, Count b) { return a < b; });
  return detail::make_result(ds, grid, std::move(tuple), Algorithm::min_rho);
}

/// Brute-force enumeration of all weakly increasing index tuples in
/// lexicographic order. Intended as a reference for small instances.
inline EstimateResult search_exhaustive(const LabeledDataset& ds, std::size_t n) {
  if (n == 0) throw std::invalid_argument("search requires n >= 1");
  const auto grid = candidate_grid(ds);
  const std::size_t k_grid = grid.size();
  if (detail::multiset_count(k_grid, n) > kExhaustiveTupleLimit)
    throw std::length_error("exhaustive search refused: too many candidate tuples");

  std::vector<std::size_t> idx(n, 0);
  std::vector<std::size_t> best_idx;
  Count best = -1;
  std::vector<double> cuts(n);
  while (true) {
    for (std::size_t k = 0; k < n; ++k) cuts[k] = grid[idx[k]];
    const Count s = split_score(ds, SplitVector(cuts));
    if (s > best) {
      best = s;
      best_idx = idx;
    }
    // Next weakly increasing tuple in lexicographic order.
    std::size_t pos = n;
    while (pos > 0 && idx[pos - 1] == k_grid - 1) --pos;
    if (pos == 0) break;
    const std::size_t v = idx[pos - 1] + 1;
    for (std::size_t k = pos - 1; k < n; ++k) idx[k] = v;
  }
  return detail::make_result(ds, grid, std::move(best_idx), Algorithm::exhaustive);
}

/// Dispatches on n: n = 0 gives the no-crossover estimate, otherwise the
/// requested search. Results for n >= grid size are legal but degenerate.
inline EstimateResult estimate(const LabeledDataset& ds, std::size_t n, Algorithm algo) {
  if (n == 0) {
    EstimateResult r;
    r.n_samples = ds.size();
    r.algorithm = algo;
    r.pi_hat = empirical_priors(ds);
    r.rho_hat = estimate_no_crossover(ds);
    r.h_at_optimum = 0.0;
    return r;
  }
  switch (algo) {
    case Algorithm::dp: return search_dp(ds, n);
    case Algorithm::exhaustive: return search_exhaustive(ds, n);
    case Algorithm::min_rho: return search_min_rho(ds, n);
  }
  throw std::invalid_argument("unknown algorithm");
}

}  // namespace ovl
