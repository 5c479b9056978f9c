#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "ovl/experiments.hpp"
#include "ovl/io.hpp"

using namespace ovl;

namespace {

ExperimentConfig small_config(int case_id, Protocol p) {
  ExperimentConfig cfg;
  cfg.case_spec = paper_case(case_id);
  cfg.sizes = {50, 200, 600};
  cfg.trials = 4;
  cfg.seed = 123;
  cfg.protocol = p;
  return cfg;
}

std::string table(const std::vector<TrialRecord>& r, std::size_t n) {
  std::ostringstream os;
  io::write_trials_csv(os, r, n);
  return os.str();
}

}  // namespace

TEST(Sweep, RecordLayout) {
  const auto cfg = small_config(1, Protocol::nested);
  const auto recs = run_sweep(cfg);
  ASSERT_EQ(recs.size(), 12u);
  for (std::size_t i = 0; i < recs.size(); ++i) {
    EXPECT_EQ(recs[i].trial_index, i / 3);
    EXPECT_EQ(recs[i].n_samples, cfg.sizes[i % 3]);
    EXPECT_EQ(recs[i].v_hat.size(), 1u);
    EXPECT_GE(recs[i].v_error, 0.0);
    EXPECT_GE(recs[i].rho_error, 0.0);
    EXPECT_NEAR(recs[i].rho_hat + recs[i].h_at_optimum,
                1.0 - std::max(recs[i].pi_hat.pi1, recs[i].pi_hat.pi2), 1e-12);
  }
}

TEST(Sweep, Deterministic) {
  for (auto p : {Protocol::nested, Protocol::independent}) {
    auto cfg = small_config(2, p);
    const auto a = table(run_sweep(cfg), 2);
    const auto b = table(run_sweep(cfg), 2);
    EXPECT_EQ(a, b);
    cfg.threads = 3;
    EXPECT_EQ(table(run_sweep(cfg), 2), a);
    cfg.seed = 124;
    EXPECT_NE(table(run_sweep(cfg), 2), a);
  }
}

TEST(Sweep, NestedPrefixesShareDraws) {
  const auto cfg = small_config(1, Protocol::nested);
  const auto full = sample_labeled(cfg.case_spec.mixture, 600, trial_seed(cfg.seed, 2, cfg.protocol));
  const auto prefix = sample_labeled(cfg.case_spec.mixture, 50, trial_seed(cfg.seed, 2, cfg.protocol));
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    EXPECT_EQ(prefix[i].x, full[i].x);
    EXPECT_EQ(prefix[i].y, full[i].y);
  }
  const auto recs = run_sweep(cfg);
  const auto direct = estimate(LabeledDataset(prefix), 1, Algorithm::dp);
  EXPECT_EQ(recs[6].n_samples, 50u);
  EXPECT_EQ(recs[6].v_hat, direct.v_hat);
  EXPECT_EQ(recs[6].rho_hat, direct.rho_hat);
}

TEST(Sweep, IndependentUsesFreshSamples) {
  const auto cfg = small_config(1, Protocol::independent);
  EXPECT_NE(trial_seed(cfg.seed, 0, cfg.protocol, 50), trial_seed(cfg.seed, 0, cfg.protocol, 200));
  EXPECT_NE(trial_seed(cfg.seed, 0, Protocol::nested), trial_seed(cfg.seed, 1, Protocol::nested));
  const auto recs = run_sweep(cfg);
  const auto s = sample_labeled(cfg.case_spec.mixture, 200, trial_seed(cfg.seed, 1, cfg.protocol, 200));
  EXPECT_EQ(recs[4].rho_hat, estimate(LabeledDataset(s), 1, Algorithm::dp).rho_hat);
}

TEST(Sweep, ConfigValidation) {
  auto cfg = small_config(1, Protocol::nested);
  cfg.sizes = {100, 100};
  EXPECT_THROW(run_sweep(cfg), std::invalid_argument);
  cfg.sizes = {};
  EXPECT_THROW(run_sweep(cfg), std::invalid_argument);
  cfg.sizes = {10};
  cfg.trials = 0;
  EXPECT_THROW(run_sweep(cfg), std::invalid_argument);
}

TEST(Sweep, CustomCase) {
  const TwoClassMixture m(0.5, Gaussian(-1, 1), Gaussian(1, 1));
  EXPECT_THROW(custom_case(m, 2), std::invalid_argument);
  ExperimentConfig cfg;
  cfg.case_spec = custom_case(m, 1);
  EXPECT_NEAR(cfg.case_spec.truth.crossovers[0], 0.0, 1e-12);
  EXPECT_NEAR(cfg.case_spec.truth.rho_true, 2 * 0.5 * std_normal_cdf(-1.0), 1e-12);
  cfg.sizes = {300};
  cfg.trials = 2;
  EXPECT_EQ(run_sweep(cfg).size(), 2u);
}

TEST(Sweep, ExhaustiveAlgorithmMatchesDp) {
  auto cfg = small_config(1, Protocol::nested);
  cfg.sizes = {30, 80};
  const auto a = table(run_sweep(cfg), 1);
  cfg.algorithm = Algorithm::exhaustive;
  EXPECT_EQ(table(run_sweep(cfg), 1), a);
}

TEST(Summary, SingleRecord) {
  TrialRecord r;
  r.n_samples = 10;
  r.v_error = 0.25;
  r.rho_error = 0.125;
  const auto s = summarize(std::vector{r});
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].v_error.median, 0.25);
  EXPECT_EQ(s[0].v_error.mean, 0.25);
  EXPECT_EQ(s[0].rho_error.min, 0.125);
  EXPECT_EQ(s[0].rho_error.max, 0.125);
}

TEST(Summary, EvenMedianAndGrouping) {
  std::vector<TrialRecord> recs(3);
  recs[0].n_samples = 100;
  recs[0].v_error = 0.1;
  recs[1].n_samples = 100;
  recs[1].v_error = 0.3;
  recs[2].n_samples = 10;
  recs[2].v_error = 7;
  const auto s = summarize(recs);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].n_samples, 10u);
  EXPECT_EQ(s[1].n_samples, 100u);
  EXPECT_DOUBLE_EQ(s[1].v_error.median, 0.2);
  EXPECT_EQ(s[1].trials, 2u);
}

TEST(Summary, EmptyRejected) {
  EXPECT_THROW(summarize(std::vector<TrialRecord>{}), std::invalid_argument);
}
