#pragma once

// Dense two-phase primal simplex with Bland's rule, for min c^T x subject to
// linear rows and x >= 0.

#include <utility>
#include <vector>

namespace calibra {

enum class RowSense { less_equal, equal, greater_equal };

struct LpRow {
  std::vector<std::pair<int, double>> coeffs;
  RowSense sense = RowSense::equal;
  double rhs = 0.0;
};

struct LinearProgram {
  int variables = 0;
  std::vector<double> cost;
  std::vector<LpRow> rows;
};

enum class LpStatus { optimal, infeasible, unbounded, pivot_limit };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  std::vector<double> x;
  double objective = 0.0;
  long pivots = 0;
};

struct LpOptions {
  long max_pivots = 200000;
  double tolerance = 1e-9;
};

LpResult solve_lp(const LinearProgram& lp, const LpOptions& options = {});

}  // namespace calibra
