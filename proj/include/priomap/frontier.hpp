#pragma once

#include <Eigen/Dense>
#include <vector>

#include "priomap/errors.hpp"
#include "priomap/model.hpp"

namespace priomap {

struct FrontierConfig {
  double frontier_tolerance = 1e-9;
  int oracle_samples = 100000;
};

/// Largest t such that some simplex direction v (v >= 0, sum v = 1) gives
/// v^T(x_i - x_j) >= t for all j != i, solved exactly as a linear program.
/// Membership under the simplex constraint matches the unit-L2 definition
/// because strict separation is scale-invariant. The certificate is the
/// optimal v, renormalized to unit L2 when t > 0. Requires n >= 2.
FrontierResult frontier_margin(const Eigen::MatrixXd& items, int i,
                               double frontier_tolerance = 1e-9);

/// One FrontierResult per item; a single item is frontier vacuously with an
/// infinite margin and the uniform certificate.
std::vector<FrontierResult> detect_frontier(const Eigen::MatrixXd& items,
                                            const FrontierConfig& config = {});

/// Brute-force membership check: true iff some direction in the standard
/// non-negative grid strictly separates item i from every other item.
bool oracle_frontier_grid(const Eigen::MatrixXd& items, int i, int samples);

/// Same check for all items from one shared projection pass; equivalent to
/// calling oracle_frontier_grid per item but O(n) times faster.
std::vector<bool> oracle_frontier_grid_all(const Eigen::MatrixXd& items, int samples);

/// p_i = sum_{j != i} v_i^T(x_i - x_j), evaluated with the trained viewpoint.
double frontier_score(const PriorityMap& map, int i);

Eigen::VectorXd frontier_scores(const PriorityMap& map);

/// Item indices sorted by descending p_i; ties broken by ascending index.
std::vector<int> rank_by_frontier_score(const PriorityMap& map);

}  // namespace priomap
