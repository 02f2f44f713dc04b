#include "priomap/frontier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "priomap/directions.hpp"
#include "priomap/simplex.hpp"

namespace priomap {

FrontierResult frontier_margin(const Eigen::MatrixXd& items, int i,
                               double frontier_tolerance) {
  const int n = static_cast<int>(items.rows());
  const int d = static_cast<int>(items.cols());
  if (n < 2) throw DegenerateInput("frontier margin needs at least two items");
  if (i < 0 || i >= n) throw InvalidConfig("item index out of range");

  // maximize t  s.t.  v^T(x_i - x_j) >= t  for j != i,  v >= 0,  sum v = 1.
  // Standard form variables: [v(d), t+, t-, slack per j row].
  const int rows = n;  // n-1 margin rows + the simplex row
  const int cols = d + 2 + (n - 1);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, cols);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(rows);
  Eigen::VectorXd cost = Eigen::VectorXd::Zero(cols);
  int r = 0;
  for (int j = 0; j < n; ++j) {
    if (j == i) continue;
    A.row(r).head(d) = items.row(i) - items.row(j);
    A(r, d) = -1.0;
    A(r, d + 1) = 1.0;
    A(r, d + 2 + r) = -1.0;
    ++r;
  }
  A.row(n - 1).head(d).setOnes();
  b(n - 1) = 1.0;
  cost(d) = -1.0;
  cost(d + 1) = 1.0;

  const LpSolution sol = solve_standard_form(A, b, cost);
  if (sol.status != LpStatus::kOptimal)
    throw SolverFailure("frontier LP did not reach an optimum");

  FrontierResult out;
  out.item = i;
  out.margin = -sol.objective;
  out.certificate = sol.x.head(d).cwiseMax(0.0);
  if (out.margin > 0.0) out.certificate.normalize();
  out.is_frontier = out.margin > frontier_tolerance;
  return out;
}

std::vector<FrontierResult> detect_frontier(const Eigen::MatrixXd& items,
                                            const FrontierConfig& config) {
  const int n = static_cast<int>(items.rows());
  const int d = static_cast<int>(items.cols());
  if (n < 1) throw DegenerateInput("frontier detection needs at least one item");
  if (config.frontier_tolerance <= 0.0)
    throw InvalidConfig("frontier_tolerance must be positive");

  std::vector<FrontierResult> out;
  out.reserve(n);
  if (n == 1) {
    FrontierResult only;
    only.item = 0;
    only.margin = std::numeric_limits<double>::infinity();
    only.certificate = Eigen::VectorXd::Constant(d, 1.0 / std::sqrt(double(d)));
    only.is_frontier = true;
    out.push_back(std::move(only));
    return out;
  }
  for (int i = 0; i < n; ++i)
    out.push_back(frontier_margin(items, i, config.frontier_tolerance));
  return out;
}

bool oracle_frontier_grid(const Eigen::MatrixXd& items, int i, int samples) {
  const int n = static_cast<int>(items.rows());
  if (i < 0 || i >= n) throw InvalidConfig("item index out of range");
  if (n == 1) return true;
  const Eigen::MatrixXd grid =
      nonnegative_direction_grid(static_cast<int>(items.cols()), samples);
  const Eigen::MatrixXd proj = grid * items.transpose();  // samples x n
  for (int s = 0; s < samples; ++s) {
    const double mine = proj(s, i);
    bool wins = true;
    for (int j = 0; j < n; ++j) {
      if (j != i && proj(s, j) >= mine) {
        wins = false;
        break;
      }
    }
    if (wins) return true;
  }
  return false;
}

std::vector<bool> oracle_frontier_grid_all(const Eigen::MatrixXd& items, int samples) {
  const int n = static_cast<int>(items.rows());
  std::vector<bool> frontier(n, n == 1);
  if (n == 1) return frontier;
  const Eigen::MatrixXd grid =
      nonnegative_direction_grid(static_cast<int>(items.cols()), samples);
  const Eigen::MatrixXd proj = grid * items.transpose();
  for (int s = 0; s < samples; ++s) {
    // A direction certifies exactly its strict, unique projection maximum.
    int arg = 0;
    double best = proj(s, 0);
    bool unique = true;
    for (int j = 1; j < n; ++j) {
      const double p = proj(s, j);
      if (p > best) {
        best = p;
        arg = j;
        unique = true;
      } else if (p == best) {
        unique = false;
      }
    }
    if (unique) frontier[arg] = true;
  }
  return frontier;
}

double frontier_score(const PriorityMap& map, int i) {
  const int n = map.n_items();
  if (i < 0 || i >= n) throw InvalidConfig("item index out of range");
  const Eigen::VectorXd centered =
      double(n) * map.embeddings.row(i).transpose() -
      map.embeddings.colwise().sum().transpose();
  return map.best_viewpoints.row(i).dot(centered.transpose());
}

Eigen::VectorXd frontier_scores(const PriorityMap& map) {
  const int n = map.n_items();
  const Eigen::RowVectorXd total = map.embeddings.colwise().sum();
  Eigen::VectorXd scores(n);
  for (int i = 0; i < n; ++i) {
    scores(i) =
        map.best_viewpoints.row(i).dot(double(n) * map.embeddings.row(i) - total);
  }
  return scores;
}

std::vector<int> rank_by_frontier_score(const PriorityMap& map) {
  const Eigen::VectorXd scores = frontier_scores(map);
  std::vector<int> order(map.n_items());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (scores(a) != scores(b)) return scores(a) > scores(b);
    return a < b;
  });
  return order;
}

}  // namespace priomap
