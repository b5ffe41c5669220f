#include "dualdetect/fusion.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "oracles.hpp"

using namespace dualdetect;

TEST(MultinomialCoeff, SmallValues) {
  EXPECT_EQ(multinomial_coeff(5, 3, 0), 10u);
  EXPECT_EQ(multinomial_coeff(5, 3, 1), 20u);
  for (int n = 0; n < 30; ++n) EXPECT_EQ(multinomial_coeff(n, 0, 0), 1u);
  EXPECT_EQ(multinomial_coeff(12, 4, 4), 34650u);
}

TEST(MultinomialCoeff, RejectsOutOfRange) {
  EXPECT_THROW((void)multinomial_coeff(5, 4, 2), std::invalid_argument);
  EXPECT_THROW((void)multinomial_coeff(5, -1, 0), std::invalid_argument);
  EXPECT_THROW((void)multinomial_coeff(-1, 0, 0), std::invalid_argument);
  EXPECT_THROW((void)multinomial_coeff(60, 20, 20), std::overflow_error);
  EXPECT_EQ(multinomial_coeff(62, 31, 0), 465428353255261088ULL);
}

TEST(KOutOfN, RuleTable) {
  EXPECT_EQ(apply_k_out_of_n(3, 0, 3), Hypothesis::Event1);
  EXPECT_EQ(apply_k_out_of_n(0, 3, 3), Hypothesis::Event2);
  EXPECT_EQ(apply_k_out_of_n(2, 2, 3), Hypothesis::Normal);
  EXPECT_EQ(apply_k_out_of_n(3, 2, 2), Hypothesis::Event1);
  EXPECT_EQ(apply_k_out_of_n(2, 3, 2), Hypothesis::Event2);
  EXPECT_EQ(apply_k_out_of_n(2, 2, 2), Hypothesis::Normal);
}

TEST(FusionParams, Validation) {
  EXPECT_NO_THROW(FusionParams(5, 3));
  EXPECT_THROW(FusionParams(5, 6), std::invalid_argument);
  EXPECT_THROW(FusionParams(5, 0), std::invalid_argument);
  EXPECT_THROW(FusionParams(0, 0), std::invalid_argument);
  EXPECT_FALSE(FusionParams(5, 3).dual_quorum_possible());
  EXPECT_TRUE(FusionParams(4, 2).dual_quorum_possible());
}

TEST(FusionQuality, CertainDetection) {
  LocalMetrics m;
  m.p_d1 = 1.0;
  for (int n = 1; n <= 9; ++n) {
    for (int k = 1; k <= n; ++k) EXPECT_NEAR(fusion_quality(m, {n, k}).q_d1, 1.0, 1e-15);
  }
}

TEST(FusionQuality, UnanimousRuleIsAPower) {
  LocalMetrics m;
  for (double p : {0.1, 0.5, 0.93}) {
    m.p_d1 = p;
    m.p_m1 = (1 - p) / 3;
    EXPECT_NEAR(fusion_quality(m, {5, 5}).q_d1, std::pow(p, 5), 1e-15);
  }
}

TEST(FusionQuality, TwoOfThreeByEnumeration) {
  LocalMetrics m;
  m.p_d1 = 0.8;
  m.p_m1 = 0.1;
  const double brute = oracle::brute_force_quorum({0.1, 0.8, 0.1}, 3, 2);
  EXPECT_NEAR(brute, 0.896, 1e-12);
  EXPECT_NEAR(fusion_quality(m, {3, 2}).q_d1, 0.896, 1e-12);
}

TEST(FusionQuality, FalseAlarmIsSumOfBoth) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    const auto q = fusion_quality(oracle::random_metrics(rng), {7, 4});
    EXPECT_NEAR(q.q_f, q.q_f1 + q.q_f2, 1e-12);
  }
}

TEST(FusionOracle, MatchesClosedFormWhenQuorumIsExclusive) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const auto metrics = oracle::random_metrics(rng);
    for (int n = 1; n <= 7; ++n) {
      for (int k = n / 2 + 1; k <= n; ++k) {
        const FusionParams params(n, k);
        const auto closed = fusion_quality(metrics, params);
        const auto exact = oracle_fusion_quality(metrics, params);
        ASSERT_NEAR(closed.q_d1, exact.q_d1, 1e-12);
        ASSERT_NEAR(closed.q_d2, exact.q_d2, 1e-12);
        ASSERT_NEAR(closed.q_f1, exact.q_f1, 1e-12);
        ASSERT_NEAR(closed.q_f2, exact.q_f2, 1e-12);
      }
    }
  }
}

TEST(FusionOracle, QuorumMarginalsMatchClosedFormForEveryK) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const auto metrics = oracle::random_metrics(rng);
    for (int n = 1; n <= 7; ++n) {
      for (int k = 1; k <= n; ++k) {
        const FusionParams params(n, k);
        const auto closed = fusion_quality(metrics, params);
        const auto h0 = enumerate_fusion_oracle(metrics, params, Hypothesis::Normal);
        const auto h1 = enumerate_fusion_oracle(metrics, params, Hypothesis::Event1);
        const auto h2 = enumerate_fusion_oracle(metrics, params, Hypothesis::Event2);
        ASSERT_NEAR(closed.q_d1, h1.quorum_event1, 1e-12);
        ASSERT_NEAR(closed.q_d2, h2.quorum_event2, 1e-12);
        ASSERT_NEAR(closed.q_f1, h0.quorum_event1, 1e-12);
        ASSERT_NEAR(closed.q_f2, h0.quorum_event2, 1e-12);
      }
    }
  }
}

TEST(FusionOracle, DualQuorumOverstatesFalseAlarm) {
  LocalMetrics m;
  m.p_f1 = 0.4;
  m.p_f2 = 0.4;
  const FusionParams params(4, 2);
  const auto closed = fusion_quality(m, params);
  const auto exact = oracle_fusion_quality(m, params);
  EXPECT_GT(closed.q_f, exact.q_f + 0.1);
  const auto h0 = enumerate_fusion_oracle(m, params, Hypothesis::Normal);
  double total = 0.0;
  for (double p : h0.final_decision) total += p;
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(FusionOracle, CertainDetectionAndSizeLimit) {
  LocalMetrics m;
  m.p_d1 = 1.0;
  const auto out = enumerate_fusion_oracle(m, {3, 2}, Hypothesis::Event1);
  EXPECT_NEAR(out.final_decision[index_of(Hypothesis::Event1)], 1.0, 1e-15);
  EXPECT_NO_THROW((void)enumerate_fusion_oracle(m, {12, 7}, Hypothesis::Normal));
  EXPECT_THROW((void)enumerate_fusion_oracle(m, {13, 7}, Hypothesis::Normal),
               std::invalid_argument);
}

TEST(FusionQuality, MonotoneInDetectionProbability) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double p_m1 = 0.5 * u(rng);
    const int n = 1 + static_cast<int>(rng() % 9);
    const FusionParams params(n, 1 + static_cast<int>(rng() % static_cast<unsigned>(n)));
    LocalMetrics m;
    m.p_m1 = p_m1;
    double previous = -1.0;
    for (double p = 0.0; p <= 1.0 - p_m1; p += 0.01) {
      m.p_d1 = p;
      const double q = fusion_quality(m, params).q_d1;
      EXPECT_GE(q, previous - 1e-14);
      previous = q;
    }
  }
}

TEST(ProbError, SimpleCases) {
  FusionQuality perfect{1.0, 1.0, 0.0, 0.0, 0.0};
  EXPECT_EQ(prob_error(Priors(0.59, 0.25, 0.16), perfect), 0.0);
  FusionQuality alarms{0.2, 0.7, 0.1, 0.2, 0.3};
  EXPECT_NEAR(prob_error(Priors(1, 0, 0), alarms), 0.3, 1e-15);
}

TEST(ProbError, StaysInUnitIntervalWhenQuorumIsExclusive) {
  std::mt19937_64 rng(12);
  std::exponential_distribution<double> e(1.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const double a = e(rng), b = e(rng), c = e(rng);
    const Priors priors(a / (a + b + c), b / (a + b + c), 1.0 - a / (a + b + c) - b / (a + b + c));
    const int n = 1 + static_cast<int>(rng() % 11);
    const int k = n / 2 + 1 + static_cast<int>(rng() % static_cast<unsigned>(n - n / 2));
    const double pe = prob_error(priors, fusion_quality(oracle::random_metrics(rng), {n, k}));
    EXPECT_GE(pe, -1e-12);
    EXPECT_LE(pe, 1.0 + 1e-12);
  }
}
