#pragma once

#include <Eigen/Core>
#include <vector>

#include "priomap/core.hpp"
#include "priomap/model.hpp"

namespace priomap {

/// Objective value split into its two parts. `objective` is always the exact
/// sum consistency + alpha * frontier as computed.
struct LossBreakdown {
  double consistency = 0.0;  // label-violation term
  double frontier = 0.0;     // dominance-violation term
  double objective = 0.0;
};

/// Subgradients of the unconstrained objective with respect to the three
/// parameter blocks.
struct Subgradients {
  Eigen::MatrixXd embeddings;
  Eigen::MatrixXd best_viewpoints;
  Eigen::MatrixXd evaluator_criteria;
};

/// Evaluates both loss terms at the given map.
LossBreakdown objective(const PriorityMap& map, const Dataset& data);

/// Subgradients of consistency + alpha * frontier. Each active hinge term
/// (margin strictly below 1) contributes the negated margin gradient scaled
/// by its averaging weight; terms at or past the margin contribute zero,
/// including at the kink itself.
Subgradients subgradients(const PriorityMap& map, const Dataset& data);

struct FitResult {
  PriorityMap map;
  /// history[0] is the objective at the (feasible) initialization,
  /// history[t] after t update steps.
  std::vector<LossBreakdown> history;
};

/// Projected subgradient descent with a fixed learning rate. After every
/// update the embeddings are clamped to the non-negative orthant and the
/// viewpoint and criterion rows are renormalized to unit length, so the
/// returned map always satisfies the feasibility constraints. Runs are
/// deterministic given config.seed. Stops early once the objective change
/// stays below config.convergence_tol for ten consecutive epochs.
///
/// Throws NonFinite if the objective becomes NaN or infinite.
FitResult fit(const Dataset& data, const TrainConfig& config);

}  // namespace priomap
