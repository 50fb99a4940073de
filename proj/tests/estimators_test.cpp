#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"
#include "treewalk/chain.hpp"
#include "treewalk/errors.hpp"
#include "treewalk/estimators.hpp"
#include "treewalk/exact.hpp"

namespace treewalk {
namespace {

EstimatorOptions exact_burn_in(Exec exec = Exec::Parallel) {
  EstimatorOptions o;
  o.burn_in = BurnInMode::ExactMeasured;
  o.exec = exec;
  return o;
}

double exact_alpha(const SuccinctTree& t) {
  return 1.0 / stationary_exact(enumerate(t, 1u << 20)).alpha_inverse.get_d();
}

TEST(MedianOfBatches, Examples) {
  EXPECT_EQ(median_of_batches({3}), 3);
  EXPECT_EQ(median_of_batches({1, 5, 2}), 2);
  EXPECT_EQ(median_of_batches({0.08, 0.09, 0.50, 0.085, 0.082}), 0.085);
  EXPECT_THROW(median_of_batches({1, 2}), InvalidArgument);
  EXPECT_THROW(median_of_batches({}), InvalidArgument);
}

TEST(Parameters, BatchAndSampleCounts) {
  EXPECT_EQ(median_batch_count(0.1), 21u);
  EXPECT_EQ(median_batch_count(0.5), 7u);
  for (double d : {0.01, 0.05, 0.2, 0.9}) EXPECT_EQ(median_batch_count(d) % 2, 1u);
  EXPECT_EQ(samples_per_batch(2, 0.1, 4), 1200u);
  EXPECT_EQ(samples_per_batch(0, 1.0, 4), 4u);
  EXPECT_THROW(median_batch_count(0), InvalidArgument);
  EXPECT_THROW(median_batch_count(1), InvalidArgument);
  EXPECT_THROW(samples_per_batch(2, 0, 4), InvalidArgument);
  EXPECT_THROW(samples_per_batch(2, 1.5, 4), InvalidArgument);
}

TEST(EstimateAlpha, RootOnlyIsExact) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto est = estimate_alpha(root_only(6), 0.3, 0.2, RandomStream(seed, 0));
    EXPECT_EQ(est.value, std::ldexp(1.0, -6));
    EXPECT_EQ(est.batches % 2, 1u);
    EXPECT_EQ(est.batch_values.size(), est.batches);
  }
}

TEST(EstimateAlpha, RecordsParameters) {
  const auto est = estimate_alpha(full_tree(2), 0.1, 0.1, RandomStream(1, 0), exact_burn_in());
  EXPECT_EQ(est.batches, 21u);
  EXPECT_EQ(est.samples_per_batch, 1200u);
  EXPECT_EQ(est.chain_steps_total, est.batches * est.samples_per_batch * est.burn_in);
  EXPECT_GT(est.value, 0);
  EXPECT_EQ(est.value, median_of_batches(est.batch_values));
  EXPECT_THROW(estimate_alpha(full_tree(2), 0, 0.1, RandomStream(1, 0)), InvalidArgument);
  EXPECT_THROW(estimate_alpha(full_tree(2), 0.1, 1, RandomStream(1, 0)), InvalidArgument);
}

TEST(EstimateAlpha, BurnInModes) {
  const SuccinctTree t = full_tree(3);
  const double tv = 0.1 / (2 * 4);
  EXPECT_EQ(resolve_burn_in(t, tv, EstimatorOptions{}), burn_in_steps(3, tv, 2.0));
  const std::uint64_t measured = resolve_burn_in(t, tv, exact_burn_in());
  const ExplicitTree e = enumerate(t, 100);
  EXPECT_EQ(measured, mixing_time_exact(transition_matrix(e, true), stationary_exact(e), Rational(tv)));
  EXPECT_LT(measured, burn_in_steps(3, tv, 2.0));
  EstimatorOptions capped = exact_burn_in();
  capped.exact_state_cap = 10;
  EXPECT_THROW(resolve_burn_in(t, tv, capped), BudgetExceeded);
}

TEST(EstimateAlpha, FullTreeTwoCoverage) {
  const SuccinctTree t = full_tree(2);
  int within = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const double v = estimate_alpha(t, 0.1, 0.1, RandomStream(seed, 0), exact_burn_in()).value;
    within += v >= 0.075 && v <= 0.0917;
  }
  EXPECT_GE(within, 80);
}

TEST(EstimateAlpha, HashTreeCoverage) {
  const SuccinctTree t = hash_random_tree(2, 8, 0.8);
  const double alpha = exact_alpha(t);
  int within = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const double v = estimate_alpha(t, 0.2, 0.1, RandomStream(seed, 1), exact_burn_in()).value;
    within += std::abs(v - alpha) <= 0.2 * alpha;
  }
  EXPECT_GE(within, 24);  // 1 - delta - 0.1 of the runs
}

TEST(EstimateAlpha, SerialAndParallelAgree) {
  const SuccinctTree t = hash_random_tree(3, 6, 0.8);
  for (BurnInMode mode : {BurnInMode::Bound, BurnInMode::ExactMeasured}) {
    EstimatorOptions s, p;
    s.burn_in = p.burn_in = mode;
    s.exec = Exec::Serial;
    const auto a = estimate_alpha(t, 0.5, 0.3, RandomStream(4, 4), s);
    const auto b = estimate_alpha(t, 0.5, 0.3, RandomStream(4, 4), p);
    EXPECT_EQ(a.batch_values, b.batch_values);
    EXPECT_EQ(a.value, b.value);
  }
}

TEST(EstimateSize, RootOnlyBudgetZero) {
  const auto est = estimate_size_additive(root_only(0), 0.5, 0.1, RandomStream(1, 0));
  EXPECT_EQ(est.value, 1);
  EXPECT_EQ(est.per_level_alphas.size(), 1u);
}

TEST(EstimateSize, InternalParameters) {
  const auto est = estimate_size_additive(full_tree(4), 0.2, 0.5, RandomStream(1, 0), exact_burn_in());
  ASSERT_EQ(est.per_level_alphas.size(), 5u);
  const double zeta = 0.2 / 10;
  const double eps = zeta / (1 + zeta);
  EXPECT_NEAR(eps, 0.019608, 1e-6);
  for (const auto& a : est.per_level_alphas) {
    EXPECT_DOUBLE_EQ(a.zeta, eps);
    EXPECT_DOUBLE_EQ(a.delta, 0.5 / 5);
  }
  double b_hat = 0;
  for (int k = 0; k < 4; ++k) b_hat += 1.0 / est.per_level_alphas[k].value;
  EXPECT_DOUBLE_EQ(est.A_hat, 1.0 / est.per_level_alphas[4].value);
  EXPECT_DOUBLE_EQ(est.B_hat, b_hat);
  EXPECT_DOUBLE_EQ(est.value, est.A_hat - est.B_hat);
  EXPECT_EQ(est.method, "level-chain");
}

TEST(EstimateSize, AdditiveCoverage) {
  for (const SuccinctTree& t : {full_tree(4), leftmost_path(5), hash_random_tree(4, 5, 0.8)}) {
    const double truth = static_cast<double>(exact_count(t, 1000));
    const double slack = 0.25 * std::ldexp(1.0, t.level_budget());
    int ok = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto est = estimate_size_additive(t, 0.25, 0.25, RandomStream(seed, 2), exact_burn_in());
      ok += std::abs(est.value - truth) <= slack;
    }
    EXPECT_GE(ok, 13) << t.label();  // 1 - delta - 0.1 of 20 runs
  }
}

TEST(EstimateSize, AgreesWithUniformBaseline) {
  const SuccinctTree t = hash_random_tree(7, 5, 0.8);
  const double truth = static_cast<double>(exact_count(t, 1000));
  const double bound = 0.25 * 32;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto add = estimate_size_additive(t, 0.25, 0.25, RandomStream(seed, 3), exact_burn_in());
    const auto uni = estimate_size_uniform(t, 0.25, 0.25, RandomStream(seed, 3));
    if (std::abs(add.value - truth) <= bound && std::abs(uni.value - truth) <= bound) {
      EXPECT_LE(std::abs(add.value - uni.value), 2 * bound);
    }
  }
}

TEST(EstimateProbability, ScalesAndClamps) {
  const auto root = estimate_probability(root_only(4), 0.3, 0.2, RandomStream(1, 0), exact_burn_in());
  EXPECT_DOUBLE_EQ(root.value, 1.0 / 16);
  const auto full = estimate_probability(full_tree(3), 0.25, 0.25, RandomStream(2, 0), exact_burn_in());
  EXPECT_DOUBLE_EQ(full.value, std::clamp(full.size.value / 8, 0.0, 2.0));
  EXPECT_LE(std::abs(full.value - 15.0 / 8), 0.25 + 0.25);
  const auto wide = estimate_probability(hash_random_tree(5, 4, 0.7), 1.0, 0.5, RandomStream(3, 0), exact_burn_in());
  EXPECT_GE(wide.value, 0);
  EXPECT_LE(wide.value, 2);
}

TEST(EstimateUniform, FullTreeIsExact) {
  const auto est = estimate_size_uniform(full_tree(6), 0.1, 0.1, RandomStream(1, 0));
  EXPECT_EQ(est.value, 127);
  EXPECT_EQ(est.method, "uniform");
}

TEST(EstimateUniform, SampleCount) {
  const double xi_prime = 0.05 * 1024 / 2047.0;
  const auto est = estimate_size_uniform(comb(10), 0.05, 0.1, RandomStream(1, 0));
  EXPECT_EQ(est.samples, static_cast<std::uint64_t>(std::ceil(2 * std::log(2 / 0.1) / (xi_prime * xi_prime))));
}

TEST(EstimateUniform, CombCoverage) {
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const double v = estimate_size_uniform(comb(10), 0.05, 0.1, RandomStream(seed, 5)).value;
    ok += std::abs(v - 21) <= 0.05 * 1024;
  }
  EXPECT_GE(ok, 85);
}

TEST(EstimateUniform, SerialAndParallelAgree) {
  const SuccinctTree t = hash_random_tree(9, 9, 0.8);
  EXPECT_EQ(estimate_size_uniform(t, 0.1, 0.1, RandomStream(2, 2), Exec::Serial).value,
            estimate_size_uniform(t, 0.1, 0.1, RandomStream(2, 2), Exec::Parallel).value);
}

TEST(Knuth, SymmetricTreesHaveZeroVariance) {
  RandomStream rng(1, 0);
  for (int i = 0; i < 50; ++i) {
    EXPECT_EQ(knuth_estimate(full_tree(2), rng), 7);
    EXPECT_EQ(knuth_estimate(leftmost_path(4), rng), 5);
  }
}

TEST(Knuth, UnbiasedOnSmallTrees) {
  for (const SuccinctTree& t : {comb(4), hash_random_tree(1, 8, 0.8), hash_random_tree(99, 10, 0.7)}) {
    const auto s = knuth_summary(t, 100000, RandomStream(3, 1));
    const double truth = static_cast<double>(exact_count(t, 5000));
    EXPECT_LE(std::abs(s.mean - truth), 3 * s.std_error + 1e-9) << t.label();
    EXPECT_LE(s.min, truth);
    EXPECT_GE(s.max, truth);
  }
}

TEST(Reproducibility, SameSeedSameOutput) {
  const SuccinctTree t = hash_random_tree(6, 6, 0.8);
  const auto a = estimate_size_additive(t, 0.5, 0.3, RandomStream(10, 0), exact_burn_in());
  const auto b = estimate_size_additive(t, 0.5, 0.3, RandomStream(10, 0), exact_burn_in());
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.chain_steps_total, b.chain_steps_total);
  EXPECT_EQ(knuth_summary(t, 1000, RandomStream(4, 0)).mean, knuth_summary(t, 1000, RandomStream(4, 0)).mean);
}

}  // namespace
}  // namespace treewalk
