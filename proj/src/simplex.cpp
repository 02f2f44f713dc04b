#include "priomap/simplex.hpp"

#include <vector>

namespace priomap {

namespace {

constexpr double kPivotEps = 1e-9;
constexpr double kCostEps = 1e-9;
constexpr double kFeasEps = 1e-7;

/// Pivots the tableau (rows x cols, last column is the rhs) on (prow, pcol)
/// and keeps the reduced-cost row in sync.
void pivot(Eigen::MatrixXd& tab, Eigen::RowVectorXd& costrow, double& costrhs,
           std::vector<int>& basis, int prow, int pcol) {
  tab.row(prow) /= tab(prow, pcol);
  for (int i = 0; i < tab.rows(); ++i) {
    if (i == prow) continue;
    const double f = tab(i, pcol);
    if (f != 0.0) tab.row(i) -= f * tab.row(prow);
  }
  const double f = costrow(pcol);
  if (f != 0.0) {
    costrow -= f * tab.row(prow).head(costrow.size());
    costrhs -= f * tab(prow, tab.cols() - 1);
  }
  basis[prow] = pcol;
}

/// Runs simplex iterations until optimal, unbounded, or the iteration cap.
/// Columns at or past `n_cols_usable` never enter the basis.
LpStatus iterate(Eigen::MatrixXd& tab, Eigen::RowVectorXd& costrow, double& costrhs,
                 std::vector<int>& basis, int n_cols_usable, long max_pivots) {
  const int rows = static_cast<int>(tab.rows());
  const int rhs = static_cast<int>(tab.cols()) - 1;
  for (long it = 0; it < max_pivots; ++it) {
    // Bland: smallest-index column with negative reduced cost.
    int pcol = -1;
    for (int j = 0; j < n_cols_usable; ++j) {
      if (costrow(j) < -kCostEps) {
        pcol = j;
        break;
      }
    }
    if (pcol < 0) return LpStatus::kOptimal;

    int prow = -1;
    double best = 0.0;
    for (int i = 0; i < rows; ++i) {
      if (tab(i, pcol) > kPivotEps) {
        const double ratio = tab(i, rhs) / tab(i, pcol);
        if (prow < 0 || ratio < best - 1e-12 ||
            (ratio < best + 1e-12 && basis[i] < basis[prow])) {
          prow = i;
          best = ratio;
        }
      }
    }
    if (prow < 0) return LpStatus::kUnbounded;
    pivot(tab, costrow, costrhs, basis, prow, pcol);
  }
  return LpStatus::kIterationLimit;
}

}  // namespace

LpSolution solve_standard_form(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                               const Eigen::VectorXd& cost) {
  const int rows = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  const long max_pivots = 200L * (rows + n) + 1000;

  // Tableau [A | I | b] with one artificial per row; rhs made non-negative.
  Eigen::MatrixXd tab(rows, n + rows + 1);
  tab.leftCols(n) = A;
  tab.middleCols(n, rows) = Eigen::MatrixXd::Identity(rows, rows);
  tab.col(n + rows) = b;
  for (int i = 0; i < rows; ++i) {
    if (tab(i, n + rows) < 0.0) {
      tab.row(i) = -tab.row(i);
      tab(i, n + i) = 1.0;
    }
  }

  std::vector<int> basis(rows);
  for (int i = 0; i < rows; ++i) basis[i] = n + i;

  // Phase 1: minimize the artificial sum. Reduced costs of the original
  // columns start at -(column sums) because every basic artificial costs 1.
  Eigen::RowVectorXd costrow = Eigen::RowVectorXd::Zero(n + rows);
  double costrhs = 0.0;
  for (int j = 0; j < n; ++j) costrow(j) = -tab.col(j).sum();
  costrhs = -tab.col(n + rows).sum();

  LpSolution out;
  LpStatus st = iterate(tab, costrow, costrhs, basis, n, max_pivots);
  if (st == LpStatus::kIterationLimit) {
    out.status = st;
    return out;
  }
  if (-costrhs > kFeasEps) {
    out.status = LpStatus::kInfeasible;
    return out;
  }

  // Drive leftover artificials out of the basis; rows that cannot pivot on
  // any original column are redundant and get dropped.
  std::vector<int> keep;
  for (int i = 0; i < rows; ++i) {
    if (basis[i] < n) {
      keep.push_back(i);
      continue;
    }
    int pcol = -1;
    for (int j = 0; j < n; ++j) {
      if (std::abs(tab(i, j)) > kPivotEps) {
        pcol = j;
        break;
      }
    }
    if (pcol >= 0) {
      pivot(tab, costrow, costrhs, basis, i, pcol);
      keep.push_back(i);
    }
  }
  if (static_cast<int>(keep.size()) < rows) {
    Eigen::MatrixXd pruned(keep.size(), n + 1);
    std::vector<int> pruned_basis(keep.size());
    for (std::size_t r = 0; r < keep.size(); ++r) {
      pruned.row(r).head(n) = tab.row(keep[r]).head(n);
      pruned(r, n) = tab(keep[r], n + rows);
      pruned_basis[r] = basis[keep[r]];
    }
    tab = std::move(pruned);
    basis = std::move(pruned_basis);
  } else {
    // Drop the artificial columns, keep the rhs.
    Eigen::MatrixXd trimmed(rows, n + 1);
    trimmed.leftCols(n) = tab.leftCols(n);
    trimmed.col(n) = tab.col(n + rows);
    tab = std::move(trimmed);
  }

  // Phase 2: reduced costs for the true objective.
  costrow = cost.transpose();
  costrhs = 0.0;
  for (int i = 0; i < tab.rows(); ++i) {
    const double cb = cost(basis[i]);
    if (cb != 0.0) {
      costrow -= cb * tab.row(i).head(n);
      costrhs -= cb * tab(i, n);
    }
  }

  st = iterate(tab, costrow, costrhs, basis, n, max_pivots);
  out.status = st;
  if (st != LpStatus::kOptimal) return out;

  out.x = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < tab.rows(); ++i) out.x(basis[i]) = tab(i, n);
  out.objective = cost.dot(out.x);
  return out;
}

}  // namespace priomap
