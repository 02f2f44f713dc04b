#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "priomap/errors.hpp"

namespace priomap {

/// Fitted multi-criteria preference model. Rows of `embeddings` place each
/// item in the non-negative d-dimensional preference space; rows of
/// `best_viewpoints` and `evaluator_criteria` are unit non-negative
/// directions. Immutable once fitted.
struct PriorityMap {
  int d = 0;
  double alpha = 0.0;
  Eigen::MatrixXd embeddings;          // n x d, entries >= 0
  Eigen::MatrixXd best_viewpoints;     // n x d, unit rows
  Eigen::MatrixXd evaluator_criteria;  // m x d, unit rows
  std::vector<std::string> item_ids;
  std::vector<std::string> evaluator_ids;

  Eigen::Index n_items() const { return embeddings.rows(); }
  Eigen::Index n_evaluators() const { return evaluator_criteria.rows(); }
};

/// Checks the structural invariants of a map: consistent shapes, entries
/// >= 0, unit rows within `row_norm_tol`. Throws SchemaError naming the
/// offending field.
void check_map(const PriorityMap& map, double row_norm_tol = 1e-9);

/// Frontier membership verdict for one item. `margin` is the optimum of the
/// separation program; `certificate` is the witnessing direction, unit-L2
/// whenever the margin is positive.
struct FrontierResult {
  int item = 0;
  double margin = 0.0;
  Eigen::VectorXd certificate;
  bool is_frontier = false;
};

}  // namespace priomap
