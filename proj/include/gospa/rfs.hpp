#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "gospa/metrics.hpp"

namespace gospa {

struct BernoulliComponent {
  double existence = 1.0;
  StateVector mean;
  std::vector<std::vector<double>> covariance;  // N x N, symmetric PSD
};

/// Union of independent Bernoulli components with Gaussian densities.
///
/// Construction validates the components and caches a lower Cholesky factor
/// per covariance, so sampling never fails afterwards. Semi-definite
/// covariances are accepted: a pivot within kCholeskyJitter of zero yields a
/// zero column.
class MultiBernoulli {
 public:
  static constexpr double kCholeskyJitter = 1e-10;

  MultiBernoulli() = default;
  explicit MultiBernoulli(std::vector<BernoulliComponent> components);

  const std::vector<BernoulliComponent>& components() const noexcept { return components_; }
  std::size_t dimension() const noexcept { return dimension_; }

  /// Lower-triangular factor of component k, row-major N x N.
  const std::vector<double>& cholesky_factor(std::size_t k) const { return factors_[k]; }

 private:
  std::vector<BernoulliComponent> components_;
  std::vector<std::vector<double>> factors_;
  std::size_t dimension_ = 0;
};

/// Deterministic 64-bit child seed for stream `stream` of `seed` (splitmix64 mixing).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// Draws one realization. Component k uses its own stream derive_seed(seed, k):
/// one uniform draw for existence, then (if present) N standard normals.
TargetSet sample_multi_bernoulli(const MultiBernoulli& model, std::uint64_t seed);

struct IndependentPair {
  MultiBernoulli truth;
  MultiBernoulli estimate;
};

struct CustomJoint {
  std::function<std::pair<TargetSet, TargetSet>(std::uint64_t)> generate;
};

/// Source of (truth, estimate) realizations from a per-sample seed.
using PairSampler = std::variant<IndependentPair, CustomJoint>;

std::pair<TargetSet, TargetSet> draw_pair(const PairSampler& sampler, std::uint64_t sample_seed);

struct EstimatorConfig {
  double pPrime = 1.0;
  std::size_t samples = 1000;
  std::uint64_t masterSeed = 0;
  std::size_t workers = 1;  // 0 selects std::thread::hardware_concurrency()

  void validate() const;
};

enum class MetricKind { gospa, ospa, unnormalizedOspa };

std::string_view to_string(MetricKind kind) noexcept;
/// Accepts "gospa", "ospa", "uospa" / "unnormalized-ospa".
MetricKind parse_metric_kind(std::string_view name);

struct MetricEstimate {
  double value = 0.0;
  double standardError = 0.0;
  std::size_t samples = 0;
};

/// Evaluates `kind` for one pair of sets; ospa and unnormalizedOspa ignore params.alpha.
double evaluate_metric(MetricKind kind, const TargetSet& truth, const TargetSet& estimate,
                       const GospaParams& params);

/// Monte Carlo estimate of E[d(X, Y)^p']^(1/p').
///
/// Sample k is drawn from derive_seed(masterSeed, k). Per-sample values are
/// stored by index and reduced in index order, so the result is bit-identical
/// for any worker count. The standard error propagates the sample standard
/// deviation of d^p' through x -> x^(1/p') by the delta method.
MetricEstimate estimate_metric(const PairSampler& sampler, const GospaParams& params, const EstimatorConfig& cfg,
                               MetricKind kind);

/// Per-sample d(X_k, Y_k)^p' values in sample order.
std::vector<double> sample_metric_powers(const PairSampler& sampler, const GospaParams& params,
                                         const EstimatorConfig& cfg, MetricKind kind);

MetricEstimate summarize_powers(const std::vector<double>& powers, double pPrime);

// --- Missed/false scenario grid --------------------------------------------

inline constexpr double kTable1Cutoff = 8.0;
inline constexpr int kTable1FalseComponents = 10;
inline constexpr int kTable1MissedLevels[] = {0, 1, 2};
inline constexpr int kTable1FalseLevels[] = {0, 1, 3, 10};
inline constexpr double kTable1Exponents[] = {1.0, 2.0};
inline constexpr MetricKind kTable1Metrics[] = {MetricKind::gospa, MetricKind::ospa, MetricKind::unnormalizedOspa};

/// Two always-present truth targets near (-6,-6) and (0,3); an estimate with
/// two detection components (existence set by nMissed) and ten false
/// components at (20k, 20), the first nFalse of which are present.
IndependentPair table1_scenario(int nMissed, int nFalse);

/// Means of the ten false-target components.
std::vector<StateVector> table1_false_means();

struct Table1Config {
  std::size_t samples = 1000;
  std::uint64_t masterSeed = 0;
  std::size_t workers = 1;
};

struct Table1Cell {
  MetricKind metric = MetricKind::gospa;
  double exponent = 1.0;  // p' = p
  int nMissed = 0;
  int nFalse = 0;
  MetricEstimate estimate;
};

struct Table1Result {
  Table1Config config;
  double c = kTable1Cutoff;
  std::vector<Table1Cell> cells;  // metric-major, then nFalse, exponent, nMissed

  const Table1Cell& at(MetricKind metric, double exponent, int nMissed, int nFalse) const;
};

/// Every (metric, exponent, nMissed, nFalse) cell with c = 8 and a Euclidean
/// base. All cells share masterSeed, so scenarios use common random numbers.
Table1Result run_table1(const Table1Config& cfg);

}  // namespace gospa
