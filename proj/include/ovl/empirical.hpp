#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ovl/sampling.hpp"

namespace ovl {

using Count = std::int64_t;

/// Label counts inside one segment of a split.
struct SegmentCounts {
  Count n1 = 0;
  Count n2 = 0;

  friend bool operator==(const SegmentCounts&, const SegmentCounts&) = default;
};

/// Pooled sample sorted by x, with cumulative label counts.
///
/// Immutable once built. Estimators only ever look at rank statistics, so the
/// input order is discarded. Sorting is stable: tied x values keep their
/// input label order.
class LabeledDataset {
 public:
  explicit LabeledDataset(std::span<const LabeledSample> samples) {
    if (samples.empty()) throw std::invalid_argument("dataset must be nonempty");
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const Label y = samples[i].y;
      if (y != Label::one && y != Label::two)
        throw std::invalid_argument("label outside {1,2} at sample " +
                                    std::to_string(i));
    }
    std::vector<LabeledSample> sorted(samples.begin(), samples.end());
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const auto& l, const auto& r) { return l.x < r.x; });

    const std::size_t n = sorted.size();
    xs_.reserve(n);
    ys_.reserve(n);
    cum1_.assign(n + 1, 0);
    cum2_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
      xs_.push_back(sorted[i].x);
      ys_.push_back(sorted[i].y);
      cum1_[i + 1] = cum1_[i] + (sorted[i].y == Label::one ? 1 : 0);
      cum2_[i + 1] = cum2_[i] + (sorted[i].y == Label::two ? 1 : 0);
    }
  }

  std::size_t size() const { return xs_.size(); }
  const std::vector<double>& xs_sorted() const { return xs_; }
  const std::vector<Label>& ys() const { return ys_; }

  /// #{k <= i : y_k = 1} over the sorted sample (0-based i).
  Count prefix1(std::size_t i) const { return cum1_.at(i + 1); }
  Count prefix2(std::size_t i) const { return cum2_.at(i + 1); }

  Count total1() const { return cum1_.back(); }
  Count total2() const { return cum2_.back(); }

  /// Label counts among the first k sorted samples, k in [0, N].
  SegmentCounts counts_below(std::size_t k) const { return {cum1_[k], cum2_[k]}; }

  /// Label counts of sorted samples with rank in [lo, hi).
  SegmentCounts counts_between(std::size_t lo, std::size_t hi) const {
    return {cum1_[hi] - cum1_[lo], cum2_[hi] - cum2_[lo]};
  }

  /// Number of samples with x <= v (exact floating comparison).
  std::size_t rank_of(double v) const {
    return static_cast<std::size_t>(
        std::upper_bound(xs_.begin(), xs_.end(), v) - xs_.begin());
  }

 private:
  std::vector<double> xs_;
  std::vector<Label> ys_;
  std::vector<Count> cum1_;
  std::vector<Count> cum2_;
};

inline LabeledDataset build_dataset(std::span<const LabeledSample> samples) {
  return LabeledDataset(samples);
}

struct Priors {
  double pi1;
  double pi2;
};

inline Priors empirical_priors(const LabeledDataset& ds) {
  const auto n = static_cast<double>(ds.size());
  return {static_cast<double>(ds.total1()) / n, static_cast<double>(ds.total2()) / n};
}

/// Weakly increasing cut values v_1 <= ... <= v_m, m >= 1.
///
/// Segment k is (v_{k-1}, v_k], with v_0 = -inf and v_{m+1} = +inf.
class SplitVector {
 public:
  explicit SplitVector(std::vector<double> cuts) : cuts_(std::move(cuts)) {
    if (cuts_.empty()) throw std::invalid_argument("split vector needs at least one cut");
    if (!std::is_sorted(cuts_.begin(), cuts_.end()))
      throw std::invalid_argument("split cuts must be weakly increasing");
  }

  std::size_t size() const { return cuts_.size(); }
  std::size_t segments() const { return cuts_.size() + 1; }
  const std::vector<double>& cuts() const { return cuts_; }
  double operator[](std::size_t k) const { return cuts_[k]; }

 private:
  std::vector<double> cuts_;
};

/// Per-segment label counts N_XY(S_k, j), for the m + 1 segments of sv.
inline std::vector<SegmentCounts> segment_counts(const LabeledDataset& ds,
                                                 const SplitVector& sv) {
  std::vector<SegmentCounts> out;
  out.reserve(sv.segments());
  std::size_t lo = 0;
  for (double v : sv.cuts()) {
    const std::size_t hi = ds.rank_of(v);
    out.push_back(ds.counts_between(lo, hi));
    lo = hi;
  }
  out.push_back(ds.counts_between(lo, ds.size()));
  return out;
}

/// Midpoints of adjacent order statistics, the finite search space for cuts.
struct CandidateGrid {
  std::vector<double> zs;

  std::size_t size() const { return zs.size(); }
  double operator[](std::size_t i) const { return zs[i]; }
};

inline CandidateGrid candidate_grid(const LabeledDataset& ds) {
  const auto& xs = ds.xs_sorted();
  if (xs.size() == 1) return {{xs.front()}};
  CandidateGrid grid;
  grid.zs.reserve(xs.size() - 1);
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    grid.zs.push_back(0.5 * (xs[i] + xs[i + 1]));
  return grid;
}

}  // namespace ovl
