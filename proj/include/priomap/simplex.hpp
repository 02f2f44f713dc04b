#pragma once

#include <Eigen/Core>

namespace priomap {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

struct LpSolution {
  LpStatus status = LpStatus::kIterationLimit;
  double objective = 0.0;   // cost . x at the optimum
  Eigen::VectorXd x;
};

/// Dense two-phase primal simplex for
///
///   minimize cost . x  subject to  A x = b,  x >= 0.
///
/// Bland's rule throughout, so the method cannot cycle. Sized for the small
/// programs this library produces (up to a few hundred rows); no attempt at
/// sparsity or revised-form updates.
LpSolution solve_standard_form(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                               const Eigen::VectorXd& cost);

}  // namespace priomap
