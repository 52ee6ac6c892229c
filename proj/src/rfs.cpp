#include "gospa/rfs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

namespace gospa {

namespace {

std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// mt19937_64 output is fixed by the standard; the distributions are written
// out so that draws do not depend on the standard library implementation.
class DrawStream {
 public:
  explicit DrawStream(std::uint64_t seed) : engine_(seed) {}

  // [0, 1)
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::vector<double> semidefinite_cholesky(const std::vector<std::vector<double>>& cov, std::size_t n) {
  std::vector<double> lower(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double pivot = cov[j][j];
    for (std::size_t k = 0; k < j; ++k) pivot -= lower[j * n + k] * lower[j * n + k];
    if (pivot < -MultiBernoulli::kCholeskyJitter) {
      throw InvalidInput("multi-Bernoulli: covariance is not positive semi-definite");
    }
    if (pivot <= MultiBernoulli::kCholeskyJitter) {
      // Degenerate direction: the rest of the column must vanish too.
      for (std::size_t i = j + 1; i < n; ++i) {
        double off = cov[i][j];
        for (std::size_t k = 0; k < j; ++k) off -= lower[i * n + k] * lower[j * n + k];
        if (std::abs(off) > std::sqrt(MultiBernoulli::kCholeskyJitter)) {
          throw InvalidInput("multi-Bernoulli: covariance is not positive semi-definite");
        }
      }
      continue;
    }
    const double diag = std::sqrt(pivot);
    lower[j * n + j] = diag;
    for (std::size_t i = j + 1; i < n; ++i) {
      double off = cov[i][j];
      for (std::size_t k = 0; k < j; ++k) off -= lower[i * n + k] * lower[j * n + k];
      lower[i * n + j] = off / diag;
    }
  }
  return lower;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return splitmix64(seed ^ splitmix64(stream + 0x632BE59BD9B4E019ULL));
}

MultiBernoulli::MultiBernoulli(std::vector<BernoulliComponent> components) : components_(std::move(components)) {
  for (const auto& comp : components_) {
    if (!(comp.existence >= 0.0 && comp.existence <= 1.0)) {
      throw InvalidInput("multi-Bernoulli: existence probability outside [0, 1]");
    }
    const std::size_t n = comp.mean.size();
    if (n == 0) throw InvalidInput("multi-Bernoulli: component mean is empty");
    if (dimension_ != 0 && n != dimension_) {
      throw InvalidInput("multi-Bernoulli: components have different dimensions");
    }
    dimension_ = n;
    for (double v : comp.mean)
      if (!std::isfinite(v)) throw InvalidInput("multi-Bernoulli: non-finite mean");
    if (comp.covariance.size() != n) throw InvalidInput("multi-Bernoulli: covariance shape does not match mean");
    for (std::size_t i = 0; i < n; ++i) {
      if (comp.covariance[i].size() != n) {
        throw InvalidInput("multi-Bernoulli: covariance shape does not match mean");
      }
      for (std::size_t j = 0; j < n; ++j) {
        const double a = comp.covariance[i][j];
        const double b = comp.covariance[j][i];
        if (!std::isfinite(a)) throw InvalidInput("multi-Bernoulli: non-finite covariance");
        if (std::abs(a - b) > 1e-12 * std::max({1.0, std::abs(a), std::abs(b)})) {
          throw InvalidInput("multi-Bernoulli: covariance is not symmetric");
        }
      }
    }
    factors_.push_back(semidefinite_cholesky(comp.covariance, n));
  }
}

TargetSet sample_multi_bernoulli(const MultiBernoulli& model, std::uint64_t seed) {
  TargetSet out(model.dimension());
  const std::size_t n = model.dimension();
  std::vector<double> z(n), point(n);
  for (std::size_t k = 0; k < model.components().size(); ++k) {
    const auto& comp = model.components()[k];
    DrawStream draws(derive_seed(seed, k));
    if (!(draws.uniform() < comp.existence)) continue;
    for (auto& zi : z) zi = draws.normal();
    const auto& lower = model.cholesky_factor(k);
    for (std::size_t i = 0; i < n; ++i) {
      double v = comp.mean[i];
      for (std::size_t j = 0; j <= i; ++j) v += lower[i * n + j] * z[j];
      point[i] = v;
    }
    out.add(point);
  }
  return out;
}

std::pair<TargetSet, TargetSet> draw_pair(const PairSampler& sampler, std::uint64_t sample_seed) {
  if (const auto* pair = std::get_if<IndependentPair>(&sampler)) {
    return {sample_multi_bernoulli(pair->truth, derive_seed(sample_seed, 0)),
            sample_multi_bernoulli(pair->estimate, derive_seed(sample_seed, 1))};
  }
  const auto& custom = std::get<CustomJoint>(sampler);
  if (!custom.generate) throw InvalidInput("custom joint sampler has no generator");
  return custom.generate(sample_seed);
}

void EstimatorConfig::validate() const {
  if (samples < 1) throw InvalidInput("estimator: samples must be at least 1");
  if (!(pPrime >= 1.0) || !std::isfinite(pPrime)) throw InvalidInput("estimator: p' must lie in [1, inf)");
}

std::string_view to_string(MetricKind kind) noexcept {
  switch (kind) {
    case MetricKind::gospa:
      return "gospa";
    case MetricKind::ospa:
      return "ospa";
    case MetricKind::unnormalizedOspa:
      return "uospa";
  }
  return "unknown";
}

MetricKind parse_metric_kind(std::string_view name) {
  if (name == "gospa") return MetricKind::gospa;
  if (name == "ospa") return MetricKind::ospa;
  if (name == "uospa" || name == "unnormalized-ospa") return MetricKind::unnormalizedOspa;
  throw InvalidInput("unknown metric '" + std::string(name) + "'");
}

double evaluate_metric(MetricKind kind, const TargetSet& truth, const TargetSet& estimate,
                       const GospaParams& params) {
  switch (kind) {
    case MetricKind::gospa:
      return gospa(truth, estimate, params).total;
    case MetricKind::ospa:
      return ospa(truth, estimate, params.c, params.p, params.base);
    case MetricKind::unnormalizedOspa:
      return unnormalized_ospa(truth, estimate, params.c, params.p, params.base);
  }
  throw InvalidInput("unknown metric kind");
}

std::vector<double> sample_metric_powers(const PairSampler& sampler, const GospaParams& params,
                                         const EstimatorConfig& cfg, MetricKind kind) {
  cfg.validate();
  params.validate();

  std::vector<double> powers(cfg.samples);
  const auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const auto [truth, estimate] = draw_pair(sampler, derive_seed(cfg.masterSeed, k));
      powers[k] = std::pow(evaluate_metric(kind, truth, estimate, params), cfg.pPrime);
    }
  };

  std::size_t workers = cfg.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.workers;
  workers = std::min(workers, cfg.samples);
  if (workers <= 1) {
    run_range(0, cfg.samples);
    return powers;
  }

  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (cfg.samples + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(cfg.samples, begin + chunk);
      pool.emplace_back([&, w, begin, end] {
        try {
          run_range(begin, end);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);
  return powers;
}

MetricEstimate summarize_powers(const std::vector<double>& powers, double pPrime) {
  MetricEstimate est;
  est.samples = powers.size();
  if (powers.empty()) return est;

  const double k = static_cast<double>(powers.size());
  // Shift by the first sample: constant inputs then reproduce exactly.
  const double shift = powers.front();
  double sum = 0.0;
  for (double v : powers) sum += v - shift;
  const double offset = sum / k;
  const double moment = shift + offset;

  double sq = 0.0;
  for (double v : powers) sq += (v - shift - offset) * (v - shift - offset);
  const double sample_sd = powers.size() > 1 ? std::sqrt(sq / (k - 1.0)) : 0.0;
  const double moment_se = sample_sd / std::sqrt(k);

  est.value = std::pow(moment, 1.0 / pPrime);
  if (moment > 0.0 && moment_se > 0.0) {
    // d/dm m^(1/p') = m^(1/p' - 1) / p'
    est.standardError = std::pow(moment, 1.0 / pPrime - 1.0) / pPrime * moment_se;
  }
  return est;
}

MetricEstimate estimate_metric(const PairSampler& sampler, const GospaParams& params, const EstimatorConfig& cfg,
                               MetricKind kind) {
  return summarize_powers(sample_metric_powers(sampler, params, cfg, kind), cfg.pPrime);
}

std::vector<StateVector> table1_false_means() {
  std::vector<StateVector> means;
  for (int k = 1; k <= kTable1FalseComponents; ++k) means.push_back({20.0 * k, 20.0});
  return means;
}

IndependentPair table1_scenario(int nMissed, int nFalse) {
  if (nMissed < 0 || nMissed > 2) throw InvalidInput("table1: nMissed must be 0, 1 or 2");
  if (nFalse < 0 || nFalse > kTable1FalseComponents) {
    throw InvalidInput("table1: nFalse must lie in [0, 10]");
  }
  const std::vector<std::vector<double>> identity{{1.0, 0.0}, {0.0, 1.0}};

  std::vector<BernoulliComponent> truth{
      {1.0, {-6.0, -6.0}, identity},
      {1.0, {0.0, 3.0}, identity},
  };

  std::vector<BernoulliComponent> estimate{
      {nMissed <= 1 ? 1.0 : 0.0, {-6.7, -5.1}, identity},
      {nMissed == 0 ? 1.0 : 0.0, {-1.8, 2.9}, identity},
  };
  const auto false_means = table1_false_means();
  for (int k = 0; k < kTable1FalseComponents; ++k) {
    estimate.push_back({k < nFalse ? 1.0 : 0.0, false_means[static_cast<std::size_t>(k)], identity});
  }
  return {MultiBernoulli(std::move(truth)), MultiBernoulli(std::move(estimate))};
}

const Table1Cell& Table1Result::at(MetricKind metric, double exponent, int nMissed, int nFalse) const {
  for (const auto& cell : cells) {
    if (cell.metric == metric && cell.exponent == exponent && cell.nMissed == nMissed && cell.nFalse == nFalse) {
      return cell;
    }
  }
  throw std::out_of_range("table1: no such cell");
}

Table1Result run_table1(const Table1Config& cfg) {
  Table1Result result;
  result.config = cfg;
  for (MetricKind metric : kTable1Metrics) {
    for (int n_false : kTable1FalseLevels) {
      for (double exponent : kTable1Exponents) {
        for (int n_missed : kTable1MissedLevels) {
          const GospaParams params{kTable1Cutoff, 2.0, exponent, BaseDistance::euclidean()};
          const EstimatorConfig est_cfg{exponent, cfg.samples, cfg.masterSeed, cfg.workers};
          Table1Cell cell{metric, exponent, n_missed, n_false, {}};
          cell.estimate = estimate_metric(table1_scenario(n_missed, n_false), params, est_cfg, metric);
          result.cells.push_back(cell);
        }
      }
    }
  }
  return result;
}

}  // namespace gospa
