#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gospa/assignment.hpp"

namespace gospa {

using StateVector = std::vector<double>;

/// A finite multiset of equal-dimension state vectors, stored flat.
///
/// Point order is storage only. An empty set has dimension 0 and is
/// compatible with a set of any dimension.
class TargetSet {
 public:
  TargetSet() = default;
  explicit TargetSet(std::size_t dimension) : dimension_(dimension) {}
  TargetSet(std::initializer_list<StateVector> points);
  explicit TargetSet(const std::vector<StateVector>& points);

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return dimension_ == 0 ? 0 : coords_.size() / dimension_; }
  bool empty() const noexcept { return size() == 0; }

  std::span<const double> operator[](std::size_t i) const {
    return {coords_.data() + i * dimension_, dimension_};
  }

  /// Appends a point; throws InvalidInput on non-finite values or a dimension clash.
  void add(std::span<const double> point);

  std::vector<StateVector> points() const;

  friend bool operator==(const TargetSet&, const TargetSet&) = default;

 private:
  std::size_t dimension_ = 0;
  std::vector<double> coords_;
};

/// Single-target metric d(x, y) underlying every set metric.
class BaseDistance {
 public:
  using Function = std::function<double(std::span<const double>, std::span<const double>)>;

  static BaseDistance euclidean();
  static BaseDistance manhattan();
  /// The supplied function must itself be a metric on the state space.
  static BaseDistance custom(std::string name, Function fn);

  double operator()(std::span<const double> x, std::span<const double> y) const { return fn_(x, y); }
  const std::string& name() const noexcept { return name_; }

 private:
  BaseDistance(std::string name, Function fn) : name_(std::move(name)), fn_(std::move(fn)) {}

  std::string name_;
  Function fn_;
};

struct GospaParams {
  double c = 1.0;      // cut-off distance
  double alpha = 2.0;  // cardinality-penalty shape, in (0, 2]
  double p = 1.0;      // exponent, in [1, inf)
  BaseDistance base = BaseDistance::euclidean();

  /// Throws InvalidInput unless c > 0, 0 < alpha <= 2 and 1 <= p < inf.
  void validate() const;
};

/// Localization / missed / false split of a GOSPA value. Only defined for alpha = 2.
struct Decomposition {
  double localizationCostP = 0.0;  // sum of d(x_i, y_j)^p over assigned pairs
  std::size_t missedCount = 0;
  std::size_t falseCount = 0;
  double missedCostP = 0.0;  // (c^p / 2) * missedCount
  double falseCostP = 0.0;   // (c^p / 2) * falseCount
  AssignmentSet assignment;  // (truth index, estimate index) pairs with d < c
};

struct GospaBreakdown {
  double total = 0.0;
  std::optional<Decomposition> decomposition;  // empty unless alpha == 2
};

/// min(d(x, y), c).
double cutoff_distance(std::span<const double> x, std::span<const double> y, double c,
                       const BaseDistance& base = BaseDistance::euclidean());

/// GOSPA distance between a truth set X and an estimate set Y.
///
/// Solves one rectangular assignment over min(d, c)^p costs and adds
/// (c^p / alpha) per unmatched point of the larger set. With alpha = 2 the
/// result also carries the decomposition: solver pairs at or beyond the
/// cut-off are reported as one missed plus one false target, which leaves
/// the total unchanged.
GospaBreakdown gospa(const TargetSet& truth, const TargetSet& estimate, const GospaParams& params);

/// The same distance evaluated as a minimum over permutations of the larger
/// set, with the smaller set padded by constant c^p / alpha rows.
double gospa_permutation_form(const TargetSet& truth, const TargetSet& estimate, const GospaParams& params);

/// Normalized OSPA: GOSPA(alpha = 1) divided by max(|X|, |Y|)^(1/p).
double ospa(const TargetSet& truth, const TargetSet& estimate, double c, double p,
            const BaseDistance& base = BaseDistance::euclidean());

/// GOSPA with alpha = 1.
double unnormalized_ospa(const TargetSet& truth, const TargetSet& estimate, double c, double p,
                         const BaseDistance& base = BaseDistance::euclidean());

// Closed form of the unnormalized OSPA for two true targets, nMissed of them
// undetected, detected ones at cut-off distances d1 (and d2), and nFalse
// false targets farther than c from everything. The unmatched points pair
// off at cost c^p each, so the cardinality part is max(nFalse, nMissed) c^p.
double unnormalized_ospa_closed_form(int nFalse, int nMissed, double d1, double d2, double c, double p);

}  // namespace gospa
