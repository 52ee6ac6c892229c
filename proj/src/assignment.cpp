#include "gospa/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace gospa {

CostMatrix::CostMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), entries_(rows * cols, fill) {}

CostMatrix::CostMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw InvalidInput("cost matrix: entry count does not match shape");
  }
}

CostMatrix::CostMatrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw InvalidInput("cost matrix: ragged rows");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

double CostMatrix::max_entry() const noexcept {
  double best = 0.0;
  for (double e : entries_) best = std::max(best, e);
  return best;
}

CostMatrix CostMatrix::transposed() const {
  CostMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

void CostMatrix::validate() const {
  if (rows_ == 0 || cols_ == 0) throw InvalidInput("cost matrix: empty");
  for (double e : entries_) {
    if (!std::isfinite(e)) throw InvalidInput("cost matrix: non-finite entry");
    if (e < 0.0) throw InvalidInput("cost matrix: negative entry");
  }
}

bool is_valid_assignment(const AssignmentSet& a, std::size_t rows, std::size_t cols) {
  std::vector<bool> row_seen(rows, false), col_seen(cols, false);
  for (const auto& [r, c] : a.pairs) {
    if (r >= rows || c >= cols) return false;
    if (row_seen[r] || col_seen[c]) return false;
    row_seen[r] = col_seen[c] = true;
  }
  return true;
}

double tie_tolerance(const CostMatrix& costs) {
  return 1e-11 * std::max(1.0, costs.max_entry()) * static_cast<double>(costs.rows());
}

namespace {

struct LapSolution {
  std::vector<std::size_t> row_to_col;
  // Dual potentials, 1-based: u[i] for row i-1, v[j] for column j-1.
  std::vector<double> u, v;
};

// Rows must not outnumber columns. Scan order is fixed (ascending columns,
// strict improvement), which makes the result deterministic.
LapSolution shortest_augmenting_path(const CostMatrix& a) {
  const std::size_t n = a.rows();
  const std::size_t m = a.cols();
  const double inf = std::numeric_limits<double>::infinity();

  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<std::size_t> match(m + 1, 0), way(m + 1, 0);
  std::vector<double> minv(m + 1);
  std::vector<char> used(m + 1);

  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = match[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = a(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  LapSolution sol;
  sol.row_to_col.assign(n, 0);
  for (std::size_t j = 1; j <= m; ++j)
    if (match[j] != 0) sol.row_to_col[match[j] - 1] = j - 1;
  sol.u = std::move(u);
  sol.v = std::move(v);
  return sol;
}

double row_order_cost(const CostMatrix& a, const std::vector<std::size_t>& row_to_col) {
  double total = 0.0;
  for (std::size_t i = 0; i < row_to_col.size(); ++i) total += a(i, row_to_col[i]);
  return total;
}

AssignmentSet to_assignment(const CostMatrix& a, const std::vector<std::size_t>& row_to_col) {
  AssignmentSet out;
  out.pairs.reserve(row_to_col.size());
  for (std::size_t i = 0; i < row_to_col.size(); ++i) out.pairs.emplace_back(i, row_to_col[i]);
  out.totalCost = row_order_cost(a, row_to_col);
  return out;
}

void require_rows_le_cols(const CostMatrix& costs) {
  costs.validate();
  if (costs.rows() > costs.cols()) {
    throw InvalidInput("assignment: more rows than columns; transpose the matrix first");
  }
}

}  // namespace

AssignmentSet solve_full_assignment(const CostMatrix& costs) {
  require_rows_le_cols(costs);
  const std::size_t m = costs.rows();
  const std::size_t n = costs.cols();

  const LapSolution base = shortest_augmenting_path(costs);
  const double optimum = row_order_cost(costs, base.row_to_col);
  const double tol = tie_tolerance(costs);

  // Walk the rows in order and move each one to the smallest column that
  // still admits an optimal completion. Only edges that are tight under the
  // optimal duals can appear in an optimal solution, so everything else is
  // skipped without a re-solve.
  std::vector<std::size_t> current = base.row_to_col;
  std::vector<char> taken(n, 0);
  double prefix = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < current[i]; ++j) {
      if (taken[j]) continue;
      const double reduced = costs(i, j) - base.u[i + 1] - base.v[j + 1];
      if (reduced > tol) continue;

      std::vector<std::size_t> free_cols;
      for (std::size_t k = 0; k < n; ++k)
        if (!taken[k] && k != j) free_cols.push_back(k);
      const std::size_t rest = m - i - 1;
      double rest_cost = 0.0;
      std::vector<std::size_t> rest_cols;
      if (rest > 0) {
        CostMatrix sub(rest, free_cols.size());
        for (std::size_t r = 0; r < rest; ++r)
          for (std::size_t k = 0; k < free_cols.size(); ++k) sub(r, k) = costs(i + 1 + r, free_cols[k]);
        const LapSolution sub_sol = shortest_augmenting_path(sub);
        rest_cost = row_order_cost(sub, sub_sol.row_to_col);
        for (std::size_t col : sub_sol.row_to_col) rest_cols.push_back(free_cols[col]);
      }
      if (prefix + costs(i, j) + rest_cost <= optimum + tol) {
        current[i] = j;
        std::copy(rest_cols.begin(), rest_cols.end(), current.begin() + static_cast<std::ptrdiff_t>(i + 1));
        break;
      }
    }
    taken[current[i]] = 1;
    prefix += costs(i, current[i]);
  }
  return to_assignment(costs, current);
}

AssignmentSet brute_force_assignment(const CostMatrix& costs) {
  require_rows_le_cols(costs);
  if (costs.rows() > kBruteForceMaxRows || costs.cols() > kBruteForceMaxCols) {
    throw OracleLimitError("brute_force_assignment: at most " + std::to_string(kBruteForceMaxRows) +
                           " rows and " + std::to_string(kBruteForceMaxCols) + " columns");
  }
  const std::size_t m = costs.rows();
  const std::size_t n = costs.cols();

  // Visits every injection of rows into columns in lexicographic order.
  std::vector<std::size_t> pick(m);
  std::vector<char> used(n, 0);
  const auto enumerate = [&](const std::function<bool()>& visit) {
    std::function<bool(std::size_t)> rec = [&](std::size_t row) -> bool {
      if (row == m) return visit();
      for (std::size_t j = 0; j < n; ++j) {
        if (used[j]) continue;
        used[j] = 1;
        pick[row] = j;
        const bool stop = rec(row + 1);
        used[j] = 0;
        if (stop) return true;
      }
      return false;
    };
    rec(0);
  };

  double best = std::numeric_limits<double>::infinity();
  enumerate([&] {
    best = std::min(best, row_order_cost(costs, pick));
    return false;
  });

  const double tol = tie_tolerance(costs);
  std::vector<std::size_t> chosen;
  enumerate([&] {
    if (row_order_cost(costs, pick) <= best + tol) {
      chosen = pick;
      return true;
    }
    return false;
  });
  return to_assignment(costs, chosen);
}

}  // namespace gospa
