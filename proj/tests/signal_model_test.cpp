#include "dualdetect/signal_model.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "oracles.hpp"

using namespace dualdetect;

TEST(Hypothesis, DecisionEncodingIsBijective) {
  EXPECT_EQ(to_decision(Hypothesis::Normal), 0);
  EXPECT_EQ(to_decision(Hypothesis::Event1), 1);
  EXPECT_EQ(to_decision(Hypothesis::Event2), -1);
  for (Hypothesis h : kAllHypotheses) EXPECT_EQ(from_decision(to_decision(h)), h);
  EXPECT_THROW((void)from_decision(2), std::invalid_argument);
  EXPECT_THROW((void)from_decision(-2), std::invalid_argument);
}

TEST(SignalModel, RequiresStrictlyIncreasingMeans) {
  EXPECT_NO_THROW(SignalModel(0, 3, 6));
  EXPECT_NO_THROW(SignalModel(-6, -3, -1));
  EXPECT_THROW(SignalModel(0, 0, 6), std::invalid_argument);
  EXPECT_THROW(SignalModel(0, 6, 3), std::invalid_argument);
  EXPECT_THROW(SignalModel(0, 3, NAN), std::invalid_argument);
}

TEST(Priors, MustBeAProbabilityVector) {
  EXPECT_NO_THROW(Priors(0.59, 0.25, 0.16));
  EXPECT_NO_THROW(Priors(1, 0, 0));
  EXPECT_THROW(Priors(0.5, 0.25, 0.2), std::invalid_argument);
  EXPECT_THROW(Priors(1.2, -0.1, -0.1), std::invalid_argument);
  EXPECT_NO_THROW(Priors(0.59, 0.25, 0.16 + 5e-10));
  EXPECT_THROW(Priors(0.59, 0.25, 0.16 + 5e-9), std::invalid_argument);
}

TEST(NormalCdf, KnownValues) {
  EXPECT_EQ(normal_cdf(0.0), 0.5);
  EXPECT_NEAR(normal_cdf(40.0), 1.0, 1e-12);
  EXPECT_NEAR(normal_cdf(-40.0), 0.0, 1e-12);
  EXPECT_NEAR(normal_cdf(1.5), 0.9331928, 1e-7);
}

TEST(NormalCdf, MatchesQuadratureOracle) {
  EXPECT_NEAR(oracle::quadrature_cdf(1.5), 0.9331928, 1e-7);
  for (double z = -8.0; z <= 8.0; z += 0.125) {
    EXPECT_NEAR(normal_cdf(z), oracle::quadrature_cdf(z), 1e-7) << "z=" << z;
    EXPECT_NEAR(normal_sf(z), oracle::quadrature_sf(z), 1e-7) << "z=" << z;
  }
}

TEST(NormalCdf, SymmetryAndMonotonicity) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 10000; ++i) {
    const double z = u(rng);
    EXPECT_NEAR(normal_cdf(z) + normal_cdf(-z), 1.0, 1e-12);
    EXPECT_NEAR(normal_cdf(z) + normal_sf(z), 1.0, 1e-12);
  }
  double previous = 0.0;
  for (double z = -40.0; z <= 40.0; z += 0.01) {
    const double p = normal_cdf(z);
    EXPECT_GE(p, previous);
    previous = p;
  }
}

TEST(SampleObservation, NormalHypothesisHasZeroMean) {
  const SignalModel model(0, 3, 6);
  RandomSource rng(2024);
  constexpr int draws = 1'000'000;
  double sum = 0.0;
  for (int i = 0; i < draws; ++i) sum += sample_observation(model, Hypothesis::Normal, rng);
  EXPECT_NEAR(sum / draws, 0.0, 0.01);
}

TEST(SampleObservation, UnitVariance) {
  const SignalModel model(0, 3, 6);
  RandomSource rng(7);
  constexpr int draws = 1'000'000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double x = sample_observation(model, Hypothesis::Event1, rng);
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / draws;
  EXPECT_NEAR(mean, 3.0, 0.01);
  EXPECT_NEAR(sum_sq / draws - mean * mean, 1.0, 0.01);
}

TEST(SampleObservation, SeededDrawsRepeat) {
  const SignalModel model(0, 3, 6);
  RandomSource a(99);
  RandomSource b(99);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(sample_observation(model, Hypothesis::Event2, a),
              sample_observation(model, Hypothesis::Event2, b));
  }
}
