#include "gospa/rfs.hpp"

#include <cmath>

#include <gtest/gtest.h>

namespace gospa {

namespace {

const std::vector<std::vector<double>> kIdentity2{{1.0, 0.0}, {0.0, 1.0}};
const std::vector<std::vector<double>> kZero2{{0.0, 0.0}, {0.0, 0.0}};

GospaParams table_params(double p) { return {8.0, 2.0, p, BaseDistance::euclidean()}; }

double norm2(const StateVector& a, const StateVector& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

}  // namespace

TEST(MultiBernoulli, Validation) {
  EXPECT_THROW(MultiBernoulli({{1.5, {0.0, 0.0}, kIdentity2}}), InvalidInput);
  EXPECT_THROW(MultiBernoulli({{-0.1, {0.0, 0.0}, kIdentity2}}), InvalidInput);
  EXPECT_THROW(MultiBernoulli({{1.0, {0.0, 0.0}, {{1.0, 0.5}, {0.4, 1.0}}}}), InvalidInput);  // asymmetric
  EXPECT_THROW(MultiBernoulli({{1.0, {0.0, 0.0}, {{1.0, 2.0}, {2.0, 1.0}}}}), InvalidInput);  // indefinite
  EXPECT_THROW(MultiBernoulli({{1.0, {0.0, 0.0}, {{1.0}}}}), InvalidInput);
  EXPECT_THROW(MultiBernoulli({{1.0, {0.0, 0.0}, kIdentity2}, {1.0, {0.0}, {{1.0}}}}), InvalidInput);
  EXPECT_NO_THROW(MultiBernoulli({{1.0, {0.0, 0.0}, kZero2}}));
  EXPECT_NO_THROW(MultiBernoulli({{1.0, {0.0, 0.0}, {{1.0, 1.0}, {1.0, 1.0}}}}));  // rank one
}

TEST(MultiBernoulli, SemidefiniteFactorReproducesCovariance) {
  const MultiBernoulli model({{1.0, {0.0, 0.0, 0.0}, {{4.0, 2.0, 0.0}, {2.0, 1.0, 0.0}, {0.0, 0.0, 9.0}}}});
  const auto& l = model.cholesky_factor(0);
  const std::vector<std::vector<double>> cov{{4.0, 2.0, 0.0}, {2.0, 1.0, 0.0}, {0.0, 0.0, 9.0}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < 3; ++k) s += l[i * 3 + k] * l[j * 3 + k];
      EXPECT_NEAR(s, cov[i][j], 1e-12);
    }
}

TEST(SampleMultiBernoulli, ExistenceZeroNeverContributes) {
  const MultiBernoulli model({{0.0, {1.0, 2.0}, kIdentity2}});
  for (std::uint64_t seed = 0; seed < 200; ++seed) EXPECT_TRUE(sample_multi_bernoulli(model, seed).empty());
}

TEST(SampleMultiBernoulli, ZeroCovarianceGivesExactMean) {
  const MultiBernoulli model({{1.0, {1.5, -2.25}, kZero2}});
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const TargetSet s = sample_multi_bernoulli(model, seed);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s.points()[0], (StateVector{1.5, -2.25}));
  }
}

TEST(SampleMultiBernoulli, InclusionRateMatchesExistence) {
  // 3 sigma binomial bound for 10000 draws at 0.5: 3 * sqrt(0.25 / 10000) = 0.015.
  const MultiBernoulli model({{0.5, {0.0}, {{1.0}}}});
  int included = 0;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) included += static_cast<int>(sample_multi_bernoulli(model, seed).size());
  EXPECT_NEAR(included / 10000.0, 0.5, 0.015);
}

TEST(SampleMultiBernoulli, GaussianMomentsAndDeterminism) {
  const MultiBernoulli model({{1.0, {3.0, -1.0}, {{2.0, 0.6}, {0.6, 1.0}}}});
  constexpr int kDraws = 20000;
  double m0 = 0, m1 = 0, s00 = 0, s01 = 0, s11 = 0;
  for (int k = 0; k < kDraws; ++k) {
    const auto pt = sample_multi_bernoulli(model, static_cast<std::uint64_t>(k)).points()[0];
    m0 += pt[0];
    m1 += pt[1];
    s00 += (pt[0] - 3.0) * (pt[0] - 3.0);
    s01 += (pt[0] - 3.0) * (pt[1] + 1.0);
    s11 += (pt[1] + 1.0) * (pt[1] + 1.0);
  }
  // Tolerances are ~5 standard errors at 20000 draws.
  EXPECT_NEAR(m0 / kDraws, 3.0, 0.05);
  EXPECT_NEAR(m1 / kDraws, -1.0, 0.04);
  EXPECT_NEAR(s00 / kDraws, 2.0, 0.1);
  EXPECT_NEAR(s01 / kDraws, 0.6, 0.06);
  EXPECT_NEAR(s11 / kDraws, 1.0, 0.05);

  EXPECT_EQ(sample_multi_bernoulli(model, 42), sample_multi_bernoulli(model, 42));
  EXPECT_NE(sample_multi_bernoulli(model, 42), sample_multi_bernoulli(model, 43));
}

TEST(EstimateMetric, DegenerateModelsEqualDeterministicMetric) {
  const MultiBernoulli truth({{1.0, {0.0, 0.0}, kZero2}, {1.0, {10.0, 0.0}, kZero2}});
  const MultiBernoulli est({{1.0, {1.0, 1.0}, kZero2}, {1.0, {40.0, 0.0}, kZero2}});
  const TargetSet truth_set{{0.0, 0.0}, {10.0, 0.0}};
  const TargetSet est_set{{1.0, 1.0}, {40.0, 0.0}};
  for (MetricKind kind : kTable1Metrics) {
    for (double p : {1.0, 2.0}) {
      const GospaParams params = table_params(p);
      const auto e = estimate_metric(IndependentPair{truth, est}, params, {p, 50, 9, 1}, kind);
      EXPECT_EQ(e.value, evaluate_metric(kind, truth_set, est_set, params));
      EXPECT_EQ(e.standardError, 0.0);
      EXPECT_EQ(e.samples, 50u);
    }
  }
}

TEST(EstimateMetric, CustomJointSampler) {
  const CustomJoint joint{[](std::uint64_t seed) {
    const double shift = static_cast<double>(seed % 2);  // distance 0 or 1
    return std::pair{TargetSet{{0.0}}, TargetSet{{shift}}};
  }};
  const auto e = estimate_metric(joint, {5.0, 2.0, 1.0, BaseDistance::euclidean()}, {2.0, 400, 3, 1},
                                 MetricKind::gospa);
  EXPECT_GT(e.value, 0.5);
  EXPECT_LT(e.value, 0.9);  // sqrt(E[d^2]) = sqrt(1/2) for a fair mix of 0 and 1
  EXPECT_GT(e.standardError, 0.0);
}

TEST(EstimateMetric, RejectsBadConfig) {
  const auto pair = table1_scenario(0, 0);
  EXPECT_THROW(estimate_metric(pair, table_params(1), {1.0, 0, 1, 1}, MetricKind::gospa), InvalidInput);
  EXPECT_THROW(estimate_metric(pair, table_params(1), {0.5, 10, 1, 1}, MetricKind::gospa), InvalidInput);
  EXPECT_THROW(estimate_metric(CustomJoint{}, table_params(1), {1.0, 10, 1, 1}, MetricKind::gospa), InvalidInput);
}

TEST(EstimateMetric, BitIdenticalAcrossWorkerCounts) {
  const auto pair = table1_scenario(0, 3);
  const GospaParams params = table_params(2);
  const auto serial = estimate_metric(pair, params, {2.0, 997, 1234, 1}, MetricKind::gospa);
  for (std::size_t workers : {2u, 3u, 8u, 0u}) {
    const auto parallel = estimate_metric(pair, params, {2.0, 997, 1234, workers}, MetricKind::gospa);
    EXPECT_EQ(serial.value, parallel.value);
    EXPECT_EQ(serial.standardError, parallel.standardError);
  }
  EXPECT_NE(serial.value, estimate_metric(pair, params, {2.0, 997, 1235, 1}, MetricKind::gospa).value);
}

TEST(EstimateMetric, StandardErrorScalesWithInverseRootSamples) {
  const auto pair = table1_scenario(0, 0);
  const auto small = estimate_metric(pair, table_params(1), {1.0, 2000, 77, 0}, MetricKind::gospa);
  const auto large = estimate_metric(pair, table_params(1), {1.0, 8000, 77, 0}, MetricKind::gospa);
  EXPECT_NEAR(small.standardError / large.standardError, 2.0, 0.4);
}

TEST(EstimateMetric, DeltaMethodStandardError) {
  // Values 1 and 9 for d^2: mean 5, sample sd sqrt(64 / 3) over four samples.
  const auto e = summarize_powers({1.0, 9.0, 1.0, 9.0}, 2.0);
  EXPECT_DOUBLE_EQ(e.value, std::sqrt(5.0));
  const double moment_se = std::sqrt(64.0 / 3.0) / 2.0;
  EXPECT_NEAR(e.standardError, moment_se / (2.0 * std::sqrt(5.0)), 1e-12);
  EXPECT_EQ(summarize_powers({3.0}, 1.0).standardError, 0.0);
}

TEST(Table1Scenario, ExistenceAssignments) {
  const auto none = table1_scenario(2, 0);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    EXPECT_TRUE(sample_multi_bernoulli(none.estimate, seed).empty());
    EXPECT_EQ(sample_multi_bernoulli(none.truth, seed).size(), 2u);
  }
  const auto one_three = table1_scenario(1, 3);
  for (std::uint64_t seed = 0; seed < 100; ++seed) EXPECT_EQ(sample_multi_bernoulli(one_three.estimate, seed).size(), 4u);

  const auto full = table1_scenario(0, 0);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto pts = sample_multi_bernoulli(full.estimate, seed).points();
    ASSERT_EQ(pts.size(), 2u);
    EXPECT_LT(norm2(pts[0], {-6.7, -5.1}), 6.0);
    EXPECT_LT(norm2(pts[1], {-1.8, 2.9}), 6.0);
  }
  EXPECT_THROW(table1_scenario(3, 0), InvalidInput);
  EXPECT_THROW(table1_scenario(0, 11), InvalidInput);
  EXPECT_THROW(table1_scenario(-1, 0), InvalidInput);
}

TEST(Table1Scenario, FalseComponentsAreFarFromEverything) {
  const double two_c = 2.0 * kTable1Cutoff;
  const std::vector<StateVector> anchors{{-6.0, -6.0}, {0.0, 3.0}, {-6.7, -5.1}, {-1.8, 2.9}};
  const auto means = table1_false_means();
  ASSERT_EQ(means.size(), 10u);
  for (std::size_t i = 0; i < means.size(); ++i) {
    for (const auto& a : anchors) EXPECT_GT(norm2(means[i], a), two_c);
    for (std::size_t j = i + 1; j < means.size(); ++j) EXPECT_GT(norm2(means[i], means[j]), two_c);
  }
}

TEST(Table1Scenario, FalseTargetsAddSaturatedCostPerSample) {
  // Common random numbers: truth and detection components draw from the same
  // streams in every scenario.
  for (int missed : {0, 1, 2}) {
    for (double p : {1.0, 2.0}) {
      const GospaParams params = table_params(p);
      const auto base = sample_metric_powers(table1_scenario(missed, 0), params, {1.0, 300, 555, 1}, MetricKind::gospa);
      for (int n_false : {1, 3, 10}) {
        const auto more = sample_metric_powers(table1_scenario(missed, n_false), params, {1.0, 300, 555, 1},
                                               MetricKind::gospa);
        for (std::size_t k = 0; k < base.size(); ++k) {
          const double base_p = std::pow(base[k], p);
          const double more_p = std::pow(more[k], p);
          ASSERT_NEAR(more_p - base_p, n_false * std::pow(8.0, p) / 2.0, 1e-9 * std::max(1.0, more_p));
        }
      }
    }
  }
}

TEST(RunTable1, LayoutAndLookup) {
  const auto table = run_table1({20, 5, 1});
  EXPECT_EQ(table.cells.size(), 3u * 4u * 2u * 3u);
  EXPECT_EQ(table.cells.front().metric, MetricKind::gospa);
  EXPECT_EQ(table.cells.back().metric, MetricKind::unnormalizedOspa);
  EXPECT_EQ(table.at(MetricKind::gospa, 1.0, 2, 10).estimate.value, 48.0);
  EXPECT_THROW(table.at(MetricKind::gospa, 3.0, 0, 0), std::out_of_range);
}

TEST(MetricKindNames, RoundTrip) {
  for (MetricKind kind : kTable1Metrics) EXPECT_EQ(parse_metric_kind(to_string(kind)), kind);
  EXPECT_EQ(parse_metric_kind("unnormalized-ospa"), MetricKind::unnormalizedOspa);
  EXPECT_THROW(parse_metric_kind("hausdorff"), InvalidInput);
}

}  // namespace gospa
