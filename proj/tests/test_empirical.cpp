#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "ovl/empirical.hpp"
#include "ovl/oracle.hpp"
#include "support/oracles.hpp"

using namespace ovl;

namespace {

std::vector<LabeledSample> make(std::initializer_list<std::pair<double, int>> rows) {
  std::vector<LabeledSample> out;
  for (auto [x, y] : rows) out.push_back({x, static_cast<Label>(y)});
  return out;
}

}  // namespace

TEST(Dataset, TwoPointSort) {
  const auto ds = build_dataset(make({{2, 1}, {1, 2}}));
  EXPECT_EQ(ds.xs_sorted(), (std::vector<double>{1, 2}));
  EXPECT_EQ(ds.ys(), (std::vector<Label>{Label::two, Label::one}));
  EXPECT_EQ(ds.prefix1(0), 0);
  EXPECT_EQ(ds.prefix1(1), 1);
}

TEST(Dataset, TiesKeptWithConsistentPrefixes) {
  const auto ds = build_dataset(make({{0, 1}, {0, 2}}));
  ASSERT_EQ(ds.size(), 2u);
  EXPECT_EQ(ds.ys(), (std::vector<Label>{Label::one, Label::two}));
  EXPECT_EQ(ds.prefix1(1) + ds.prefix2(1), 2);
}

TEST(Dataset, StableSortKeepsInputOrderOfTies) {
  const auto ds = build_dataset(make({{5, 2}, {0, 2}, {0, 1}, {0, 2}}));
  EXPECT_EQ(ds.ys(), (std::vector<Label>{Label::two, Label::one, Label::two, Label::two}));
}

TEST(Dataset, Errors) {
  EXPECT_THROW(build_dataset(std::vector<LabeledSample>{}), std::invalid_argument);
  std::vector<LabeledSample> bad{{0.0, static_cast<Label>(3)}};
  EXPECT_THROW(build_dataset(bad), std::invalid_argument);
}

TEST(Dataset, PrefixInvariantsOnRandomData) {
  std::mt19937_64 rng(11);
  const auto samples = reference::random_samples(rng, 10000, false);
  const auto ds = build_dataset(samples);
  const auto ones = std::count_if(samples.begin(), samples.end(),
                                  [](auto& s) { return s.y == Label::one; });
  EXPECT_EQ(ds.prefix1(ds.size() - 1), ones);
  EXPECT_EQ(ds.total1() + ds.total2(), static_cast<Count>(ds.size()));
  EXPECT_TRUE(std::is_sorted(ds.xs_sorted().begin(), ds.xs_sorted().end()));
  for (std::size_t i = 0; i < ds.size(); ++i) {
    ASSERT_EQ(ds.prefix1(i) + ds.prefix2(i), static_cast<Count>(i + 1));
    if (i > 0) {
      ASSERT_GE(ds.prefix1(i), ds.prefix1(i - 1));
    }
  }
}

TEST(Priors, Counts) {
  const auto p = empirical_priors(build_dataset(make({{0, 1}, {1, 1}, {2, 2}})));
  EXPECT_DOUBLE_EQ(p.pi1, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(p.pi2, 1.0 / 3.0);
  const auto q = empirical_priors(build_dataset(make({{0, 1}, {1, 1}})));
  EXPECT_EQ(q.pi1, 1.0);
  EXPECT_EQ(q.pi2, 0.0);
}

TEST(Priors, CaseOneSample) {
  const auto p = empirical_priors(build_dataset(sample_labeled(case1_mixture(), 10000, 5)));
  EXPECT_NEAR(p.pi1, 2.0 / 3.0, 0.02);
}

TEST(SplitVectorTest, Validation) {
  EXPECT_THROW(SplitVector({}), std::invalid_argument);
  EXPECT_THROW(SplitVector({1.0, 0.0}), std::invalid_argument);
  EXPECT_NO_THROW(SplitVector({1.0, 1.0}));
}

TEST(SegmentCountsTest, DirectEnumeration) {
  const auto ds = build_dataset(make({{1, 1}, {2, 2}, {3, 1}}));
  const auto c = segment_counts(ds, SplitVector({1.5}));
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0], (SegmentCounts{1, 0}));
  EXPECT_EQ(c[1], (SegmentCounts{1, 1}));
}

TEST(SegmentCountsTest, RightClosedBoundary) {
  const auto ds = build_dataset(make({{1, 1}, {2, 2}, {3, 1}}));
  const auto c = segment_counts(ds, SplitVector({2.0}));
  EXPECT_EQ(c[0], (SegmentCounts{1, 1}));
  EXPECT_EQ(c[1], (SegmentCounts{1, 0}));
}

TEST(SegmentCountsTest, RepeatedCutGivesEmptySegment) {
  const auto ds = build_dataset(make({{1, 1}, {2, 2}, {3, 1}}));
  const auto c = segment_counts(ds, SplitVector({1.5, 1.5}));
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[1], (SegmentCounts{0, 0}));
}

TEST(SegmentCountsTest, MatchesLinearScan) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uc(-3.5, 3.5);
  std::uniform_int_distribution<int> um(1, 5);
  for (int rep = 0; rep < 50; ++rep) {
    const auto samples = reference::random_samples(rng, 200, rep % 2 == 0);
    const auto ds = build_dataset(samples);
    std::vector<double> cuts(um(rng));
    for (auto& c : cuts) c = rep % 4 == 0 ? std::round(uc(rng)) : uc(rng);
    std::sort(cuts.begin(), cuts.end());
    const auto got = segment_counts(ds, SplitVector(cuts));
    const auto want = reference::scan_segment_counts(samples, cuts);
    ASSERT_EQ(got.size(), want.size());
    Count total = 0;
    for (std::size_t k = 0; k < got.size(); ++k) {
      EXPECT_EQ(got[k].n1, want[k].n1);
      EXPECT_EQ(got[k].n2, want[k].n2);
      total += got[k].n1 + got[k].n2;
    }
    EXPECT_EQ(total, 200);
  }
}

TEST(SegmentCountsTest, InvariantUnderIncreasingTransform) {
  std::mt19937_64 rng(8);
  const auto samples = reference::random_samples(rng, 150, false);
  std::vector<double> cuts{-1.2, 0.3, 0.31, 2.0};
  const auto g = [](double x) { return std::exp(x) + x * x * x; };
  auto mapped = samples;
  for (auto& s : mapped) s.x = g(s.x);
  std::vector<double> mapped_cuts;
  for (double c : cuts) mapped_cuts.push_back(g(c));
  EXPECT_EQ(segment_counts(build_dataset(samples), SplitVector(cuts)),
            segment_counts(build_dataset(mapped), SplitVector(mapped_cuts)));
}

TEST(Grid, Examples) {
  EXPECT_EQ(candidate_grid(build_dataset(make({{0, 1}, {1, 2}}))).zs, (std::vector<double>{0.5}));
  EXPECT_EQ(candidate_grid(build_dataset(make({{0, 1}, {0, 2}, {1, 1}}))).zs,
            (std::vector<double>{0, 0.5}));
  EXPECT_EQ(candidate_grid(build_dataset(make({{7, 2}}))).zs, (std::vector<double>{7}));
}

TEST(Grid, InterleavesOrderStatistics) {
  std::mt19937_64 rng(21);
  for (bool ties : {false, true}) {
    const auto ds = build_dataset(reference::random_samples(rng, 300, ties));
    const auto grid = candidate_grid(ds);
    const auto& xs = ds.xs_sorted();
    ASSERT_EQ(grid.size(), xs.size() - 1);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      EXPECT_LE(xs[i], grid[i]);
      EXPECT_LE(grid[i], xs[i + 1]);
      if (i > 0) {
        EXPECT_LE(grid[i - 1], grid[i]);
      }
    }
  }
}
