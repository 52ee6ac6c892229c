#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gospa {

/// Raised for malformed inputs: non-finite costs, bad parameters, dimension
/// mismatches and similar caller errors.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when the exhaustive oracle is asked for a problem it cannot enumerate.
class OracleLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Dense m x n matrix of non-negative finite costs, row-major.
class CostMatrix {
 public:
  CostMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  CostMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
  CostMatrix(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

  double max_entry() const noexcept;
  CostMatrix transposed() const;

  /// Throws InvalidInput unless the matrix is non-empty with finite, non-negative entries.
  void validate() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> entries_;
};

using IndexPair = std::pair<std::size_t, std::size_t>;

/// Partial one-to-one pairing of row and column indices.
struct AssignmentSet {
  std::vector<IndexPair> pairs;  // sorted by row, then column
  double totalCost = 0.0;

  std::size_t size() const noexcept { return pairs.size(); }
};

/// True when no row or column appears twice and all indices are in range.
bool is_valid_assignment(const AssignmentSet& a, std::size_t rows, std::size_t cols);

/// Absolute slack under which two assignment costs are treated as tied.
double tie_tolerance(const CostMatrix& costs);

/// Minimum-cost assignment of every row to a distinct column (rows <= cols).
///
/// Shortest augmenting path with row/column potentials, O(m^2 n). Among
/// cost-optimal solutions (within tie_tolerance) the lexicographically
/// smallest pair list is returned, so results are stable across runs and
/// platforms with identical floating point.
AssignmentSet solve_full_assignment(const CostMatrix& costs);

/// Exhaustive reference solver with the same contract as
/// solve_full_assignment. Limited to rows <= 7, cols <= 8.
AssignmentSet brute_force_assignment(const CostMatrix& costs);

inline constexpr std::size_t kBruteForceMaxRows = 7;
inline constexpr std::size_t kBruteForceMaxCols = 8;

}  // namespace gospa
