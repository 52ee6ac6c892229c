#include "gospa/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace gospa {

TargetSet::TargetSet(std::initializer_list<StateVector> points) {
  for (const auto& pt : points) add(pt);
}

TargetSet::TargetSet(const std::vector<StateVector>& points) {
  for (const auto& pt : points) add(pt);
}

void TargetSet::add(std::span<const double> point) {
  if (point.empty()) throw InvalidInput("target set: point of dimension 0");
  if (dimension_ != 0 && point.size() != dimension_)
    throw InvalidInput("target set: point dimension does not match set dimension");
  dimension_ = point.size();
  for (double v : point)
    if (!std::isfinite(v)) throw InvalidInput("target set: non-finite coordinate");
  coords_.insert(coords_.end(), point.begin(), point.end());
}

std::vector<StateVector> TargetSet::points() const {
  std::vector<StateVector> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    const auto pt = (*this)[i];
    out.emplace_back(pt.begin(), pt.end());
  }
  return out;
}

BaseDistance BaseDistance::euclidean() {
  return {"euclidean", [](std::span<const double> x, std::span<const double> y) {
            double sum = 0.0;
            for (std::size_t k = 0; k < x.size(); ++k) {
              const double diff = x[k] - y[k];
              sum += diff * diff;
            }
            return std::sqrt(sum);
          }};
}

BaseDistance BaseDistance::manhattan() {
  return {"manhattan", [](std::span<const double> x, std::span<const double> y) {
            double sum = 0.0;
            for (std::size_t k = 0; k < x.size(); ++k) sum += std::abs(x[k] - y[k]);
            return sum;
          }};
}

BaseDistance BaseDistance::custom(std::string name, Function fn) {
  if (!fn) throw InvalidInput("base distance: empty function");
  return {std::move(name), std::move(fn)};
}

void GospaParams::validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidInput("gospa: cut-off c must be positive and finite");
  if (!(alpha > 0.0 && alpha <= 2.0)) throw InvalidInput("gospa: alpha must lie in (0, 2]");
  if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidInput("gospa: exponent p must lie in [1, inf)");
}

double cutoff_distance(std::span<const double> x, std::span<const double> y, double c, const BaseDistance& base) {
  if (x.size() != y.size()) throw InvalidInput("cutoff_distance: dimension mismatch");
  if (!(c > 0.0)) throw InvalidInput("cutoff_distance: c must be positive");
  return std::min(base(x, y), c);
}

namespace {

void check_dimensions(const TargetSet& x, const TargetSet& y) {
  if (!x.empty() && !y.empty() && x.dimension() != y.dimension()) {
    throw InvalidInput("gospa: truth and estimate sets have different dimensions");
  }
}

// Rows index `rows_set`, columns index `cols_set`; entries are min(d, c)^p.
CostMatrix cutoff_cost_matrix(const TargetSet& rows_set, const TargetSet& cols_set, const GospaParams& params) {
  CostMatrix costs(rows_set.size(), cols_set.size());
  for (std::size_t i = 0; i < rows_set.size(); ++i)
    for (std::size_t j = 0; j < cols_set.size(); ++j)
      costs(i, j) = std::pow(std::min(params.base(rows_set[i], cols_set[j]), params.c), params.p);
  return costs;
}

}  // namespace

GospaBreakdown gospa(const TargetSet& truth, const TargetSet& estimate, const GospaParams& params) {
  params.validate();
  check_dimensions(truth, estimate);

  const double cp = std::pow(params.c, params.p);
  const bool decompose = params.alpha == 2.0;
  const std::size_t nx = truth.size();
  const std::size_t ny = estimate.size();

  GospaBreakdown out;
  if (nx == 0 || ny == 0) {
    out.total = std::pow(cp / params.alpha * static_cast<double>(nx + ny), 1.0 / params.p);
    if (decompose) {
      Decomposition d;
      d.missedCount = nx;
      d.falseCount = ny;
      d.missedCostP = cp / 2.0 * static_cast<double>(nx);
      d.falseCostP = cp / 2.0 * static_cast<double>(ny);
      out.decomposition = std::move(d);
    }
    return out;
  }

  const bool truth_rows = nx <= ny;
  const TargetSet& small = truth_rows ? truth : estimate;
  const TargetSet& large = truth_rows ? estimate : truth;
  const AssignmentSet solved = solve_full_assignment(cutoff_cost_matrix(small, large, params));

  const double unmatched = static_cast<double>(large.size() - small.size());
  out.total = std::pow(solved.totalCost + cp / params.alpha * unmatched, 1.0 / params.p);
  if (!decompose) return out;

  Decomposition d;
  for (const auto& [r, col] : solved.pairs) {
    const std::size_t ti = truth_rows ? r : col;
    const std::size_t ei = truth_rows ? col : r;
    const double dist = params.base(truth[ti], estimate[ei]);
    if (dist < params.c) {
      d.assignment.pairs.emplace_back(ti, ei);
    }
  }
  std::sort(d.assignment.pairs.begin(), d.assignment.pairs.end());
  for (const auto& [ti, ei] : d.assignment.pairs)
    d.assignment.totalCost += std::pow(params.base(truth[ti], estimate[ei]), params.p);
  d.localizationCostP = d.assignment.totalCost;
  d.missedCount = nx - d.assignment.size();
  d.falseCount = ny - d.assignment.size();
  d.missedCostP = cp / 2.0 * static_cast<double>(d.missedCount);
  d.falseCostP = cp / 2.0 * static_cast<double>(d.falseCount);
  out.decomposition = std::move(d);
  return out;
}

double gospa_permutation_form(const TargetSet& truth, const TargetSet& estimate, const GospaParams& params) {
  params.validate();
  check_dimensions(truth, estimate);

  const TargetSet& small = truth.size() <= estimate.size() ? truth : estimate;
  const TargetSet& large = truth.size() <= estimate.size() ? estimate : truth;
  const std::size_t n = large.size();
  if (n == 0) return 0.0;

  // Square |large| x |large| problem: real rows for the smaller set, and
  // padding rows whose every entry is the per-point cardinality penalty.
  const double cp = std::pow(params.c, params.p);
  const double pad = cp / params.alpha;
  CostMatrix costs(n, n, pad);
  for (std::size_t i = 0; i < small.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double dc = std::min(params.base(small[i], large[j]), params.c);
      costs(i, j) = std::pow(dc, params.p);
    }
  return std::pow(solve_full_assignment(costs).totalCost, 1.0 / params.p);
}

double unnormalized_ospa(const TargetSet& truth, const TargetSet& estimate, double c, double p,
                         const BaseDistance& base) {
  return gospa(truth, estimate, GospaParams{c, 1.0, p, base}).total;
}

double ospa(const TargetSet& truth, const TargetSet& estimate, double c, double p, const BaseDistance& base) {
  const double unnormalized = unnormalized_ospa(truth, estimate, c, p, base);
  const std::size_t largest = std::max(truth.size(), estimate.size());
  if (largest == 0) return 0.0;
  if (truth.empty() || estimate.empty()) return c;
  return std::pow(std::pow(unnormalized, p) / static_cast<double>(largest), 1.0 / p);
}

double unnormalized_ospa_closed_form(int nFalse, int nMissed, double d1, double d2, double c, double p) {
  if (nFalse < 0) throw InvalidInput("closed form: nFalse must be non-negative");
  if (nMissed < 0 || nMissed > 2) throw InvalidInput("closed form: nMissed must be 0, 1 or 2");
  if (!(c > 0.0)) throw InvalidInput("closed form: c must be positive");
  if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidInput("closed form: p must lie in [1, inf)");
  if (!(d1 >= 0.0 && d1 <= c) || !(d2 >= 0.0 && d2 <= c))
    throw InvalidInput("closed form: detected distances must lie in [0, c]");

  const double cp = std::pow(c, p);
  double sum = static_cast<double>(std::max(nFalse, nMissed)) * cp;
  if (nMissed <= 1) sum += std::pow(d1, p);
  if (nMissed == 0) sum += std::pow(d2, p);
  return std::pow(sum, 1.0 / p);
}

}  // namespace gospa
