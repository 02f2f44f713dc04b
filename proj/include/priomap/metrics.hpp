#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "priomap/errors.hpp"

namespace priomap {

/// Per-item grades under each ground-truth viewpoint (items x viewpoints).
struct GroundTruth {
  Eigen::MatrixXd priorities;
  std::vector<std::string> viewpoint_labels;

  int n_items() const { return static_cast<int>(priorities.rows()); }
  int n_viewpoints() const { return static_cast<int>(priorities.cols()); }
};

/// DCG(k, y) = sum_{i=1..k} y_i / log2(i + 1) with y in predicted order.
double dcg(int k, const Eigen::VectorXd& y);

/// Indices sorted by descending value; ties broken by ascending index.
std::vector<int> rank_descending(const Eigen::VectorXd& values);

/// DCG of the predicted top-k true priorities over the ideal DCG; by
/// convention 1 when the ideal DCG is zero. `predicted_order` must be a
/// permutation of the item indices.
double ndcg_at_k(const std::vector<int>& predicted_order, const Eigen::VectorXd& truth,
                 int k);

struct ViewpointFit {
  Eigen::VectorXd direction;
  double ndcg = 0.0;
};

/// Grid search for the unit non-negative direction whose induced ranking of
/// the embedded items best matches `truth` at cutoff k. The nDCG objective is
/// piecewise constant in the direction, so the search enumerates a fixed grid
/// (grid_size 0 picks 1000 angles for d = 2, 5000 lattice points for d = 3);
/// ties resolve to the smallest grid index.
ViewpointFit fit_viewpoint(const Eigen::MatrixXd& items, const Eigen::VectorXd& truth,
                           int k, int grid_size = 0);

/// A method under evaluation contributes either an item embedding (ranked per
/// viewpoint through fit_viewpoint) or a single score vector (the same
/// ranking for every viewpoint).
using MethodInput = std::variant<Eigen::MatrixXd, Eigen::VectorXd>;

struct EvalCell {
  std::string method;
  int viewpoint = 0;
  int k = 0;
  double ndcg = 0.0;
};

struct FittedDirection {
  std::string method;
  int viewpoint = 0;
  int k = 0;
  Eigen::VectorXd direction;
};

struct EvalSummary {
  std::string method;
  int k = 0;
  double mean_ndcg = 0.0;
};

struct EvalReport {
  std::vector<EvalCell> cells;            // one per (method, viewpoint, k)
  std::vector<FittedDirection> directions;  // embedding methods only
  std::vector<EvalSummary> summary;       // viewpoint means per (method, k)
};

EvalReport evaluate_methods(const std::vector<std::pair<std::string, MethodInput>>& methods,
                            const GroundTruth& truth, const std::vector<int>& ks);

}  // namespace priomap
