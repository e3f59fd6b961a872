#include "calibra/lp.hpp"

#include <cmath>
#include <limits>

#include "calibra/error.hpp"

namespace calibra {

namespace {

class Tableau {
 public:
  Tableau(int rows, int cols) : rows_(rows), cols_(cols), t_(static_cast<std::size_t>(rows) * (cols + 1), 0.0) {}

  double& at(int r, int c) { return t_[static_cast<std::size_t>(r) * (cols_ + 1) + c]; }
  double at(int r, int c) const { return t_[static_cast<std::size_t>(r) * (cols_ + 1) + c]; }
  double& rhs(int r) { return at(r, cols_); }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  void pivot(int r, int e, std::vector<double>& reduced, double& objective) {
    const double p = at(r, e);
    for (int c = 0; c <= cols_; ++c) at(r, c) /= p;
    at(r, e) = 1.0;
    for (int i = 0; i < rows_; ++i) {
      if (i == r) continue;
      const double f = at(i, e);
      if (f == 0.0) continue;
      for (int c = 0; c <= cols_; ++c) at(i, c) -= f * at(r, c);
      at(i, e) = 0.0;
    }
    const double f = reduced[e];
    if (f != 0.0) {
      for (int c = 0; c < cols_; ++c) reduced[c] -= f * at(r, c);
      objective += f * at(r, cols_);
      reduced[e] = 0.0;
    }
  }

  void erase_row(int r) {
    const auto begin = t_.begin() + static_cast<std::ptrdiff_t>(r) * (cols_ + 1);
    t_.erase(begin, begin + cols_ + 1);
    --rows_;
  }

 private:
  int rows_;
  int cols_;
  std::vector<double> t_;
};

// Runs Bland-rule pivots until optimal; returns the status.
LpStatus iterate(Tableau& t, std::vector<int>& basis, std::vector<double>& reduced, double& objective,
                 const std::vector<char>& forbidden, long& pivots, const LpOptions& options) {
  const double tol = options.tolerance;
  while (true) {
    int enter = -1;
    for (int j = 0; j < t.cols(); ++j) {
      if (!forbidden[j] && reduced[j] < -tol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return LpStatus::optimal;
    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < t.rows(); ++i) {
      const double a = t.at(i, enter);
      if (a <= tol) continue;
      const double ratio = t.rhs(i) / a;
      if (ratio < best - tol || (ratio <= best + tol && leave >= 0 && basis[i] < basis[leave])) {
        if (ratio < best - tol) best = ratio;
        leave = i;
      }
    }
    if (leave < 0) return LpStatus::unbounded;
    if (++pivots > options.max_pivots) return LpStatus::pivot_limit;
    t.pivot(leave, enter, reduced, objective);
    basis[leave] = enter;
  }
}

}  // namespace

LpResult solve_lp(const LinearProgram& lp, const LpOptions& options) {
  const int n = lp.variables;
  require(static_cast<int>(lp.cost.size()) == n, ErrorCode::dimension_mismatch, "LP cost size mismatch");
  const int m = static_cast<int>(lp.rows.size());

  // Normalize to rhs >= 0.
  std::vector<LpRow> rows = lp.rows;
  int slacks = 0;
  int artificials = 0;
  for (LpRow& row : rows) {
    for (const auto& [j, v] : row.coeffs) {
      require(j >= 0 && j < n, ErrorCode::invalid_argument, "LP row refers to an unknown variable");
      require(std::isfinite(v), ErrorCode::non_finite, "LP row has a non-finite coefficient");
    }
    if (row.rhs < 0) {
      row.rhs = -row.rhs;
      for (auto& [_, v] : row.coeffs) v = -v;
      if (row.sense == RowSense::less_equal)
        row.sense = RowSense::greater_equal;
      else if (row.sense == RowSense::greater_equal)
        row.sense = RowSense::less_equal;
    }
    if (row.sense != RowSense::equal) ++slacks;
    if (row.sense != RowSense::less_equal) ++artificials;
  }
  const int cols = n + slacks + artificials;
  Tableau t(m, cols);
  std::vector<int> basis(m, -1);
  std::vector<char> is_artificial(cols, 0);
  int next_slack = n;
  int next_art = n + slacks;
  for (int i = 0; i < m; ++i) {
    const LpRow& row = rows[i];
    for (const auto& [j, v] : row.coeffs) t.at(i, j) += v;
    t.rhs(i) = row.rhs;
    if (row.sense == RowSense::less_equal) {
      t.at(i, next_slack) = 1.0;
      basis[i] = next_slack++;
    } else {
      if (row.sense == RowSense::greater_equal) t.at(i, next_slack++) = -1.0;
      t.at(i, next_art) = 1.0;
      is_artificial[next_art] = 1;
      basis[i] = next_art++;
    }
  }

  LpResult result;
  long pivots = 0;

  // Phase 1: minimize the sum of artificials.
  std::vector<double> reduced(cols, 0.0);
  double objective = 0.0;
  for (int j = 0; j < cols; ++j)
    if (is_artificial[j]) reduced[j] = 1.0;
  for (int i = 0; i < m; ++i) {
    if (!is_artificial[basis[i]]) continue;
    for (int j = 0; j < cols; ++j) reduced[j] -= t.at(i, j);
    objective += t.rhs(i);
  }
  std::vector<char> none(cols, 0);
  LpStatus st = iterate(t, basis, reduced, objective, none, pivots, options);
  result.pivots = pivots;
  if (st == LpStatus::pivot_limit) {
    result.status = st;
    return result;
  }
  double infeasibility = 0.0;
  double scale = 1.0;
  for (int i = 0; i < t.rows(); ++i) {
    if (is_artificial[basis[i]]) infeasibility += t.rhs(i);
    scale = std::max(scale, std::abs(t.rhs(i)));
  }
  if (infeasibility > options.tolerance * scale * 10) {
    result.status = LpStatus::infeasible;
    return result;
  }
  // Drive artificials out of the basis or drop redundant rows.
  for (int i = 0; i < t.rows();) {
    if (!is_artificial[basis[i]]) {
      ++i;
      continue;
    }
    int enter = -1;
    double best = options.tolerance;
    for (int j = 0; j < cols; ++j) {
      if (is_artificial[j]) continue;
      if (std::abs(t.at(i, j)) > best) {
        best = std::abs(t.at(i, j));
        enter = j;
      }
    }
    if (enter >= 0) {
      t.pivot(i, enter, reduced, objective);
      basis[i] = enter;
      ++i;
    } else {
      t.erase_row(i);
      basis.erase(basis.begin() + i);
    }
  }

  // Phase 2.
  std::fill(reduced.begin(), reduced.end(), 0.0);
  for (int j = 0; j < n; ++j) reduced[j] = lp.cost[j];
  objective = 0.0;
  for (int i = 0; i < t.rows(); ++i) {
    const int b = basis[i];
    const double cb = b < n ? lp.cost[b] : 0.0;
    if (cb == 0.0) continue;
    for (int j = 0; j < cols; ++j) reduced[j] -= cb * t.at(i, j);
    objective += cb * t.rhs(i);
  }
  st = iterate(t, basis, reduced, objective, is_artificial, pivots, options);
  result.pivots = pivots;
  result.status = st;
  if (st != LpStatus::optimal) return result;
  result.x.assign(n, 0.0);
  for (int i = 0; i < t.rows(); ++i)
    if (basis[i] < n) result.x[basis[i]] = std::max(0.0, t.rhs(i));
  result.objective = 0.0;
  for (int j = 0; j < n; ++j) result.objective += lp.cost[j] * result.x[j];
  return result;
}

}  // namespace calibra
