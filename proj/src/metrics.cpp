#include "priomap/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "priomap/directions.hpp"

namespace priomap {

double dcg(int k, const Eigen::VectorXd& y) {
  if (k < 1) throw InvalidConfig("dcg needs k >= 1");
  if (y.size() != k) throw ShapeMismatch("dcg expects exactly k grades");
  double total = 0.0;
  for (int i = 0; i < k; ++i) total += y(i) / std::log2(double(i) + 2.0);
  return total;
}

std::vector<int> rank_descending(const Eigen::VectorXd& values) {
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (values(a) != values(b)) return values(a) > values(b);
    return a < b;
  });
  return order;
}

double ndcg_at_k(const std::vector<int>& predicted_order, const Eigen::VectorXd& truth,
                 int k) {
  const int n = static_cast<int>(truth.size());
  if (k < 1 || k > n) throw InvalidConfig("ndcg cutoff must satisfy 1 <= k <= n");
  if (static_cast<int>(predicted_order.size()) != n)
    throw ShapeMismatch("predicted order must list every item");

  Eigen::VectorXd y(k);
  for (int i = 0; i < k; ++i) y(i) = truth(predicted_order[i]);

  const std::vector<int> ideal = rank_descending(truth);
  Eigen::VectorXd t(k);
  for (int i = 0; i < k; ++i) t(i) = truth(ideal[i]);

  const double idcg = dcg(k, t);
  if (idcg == 0.0) return 1.0;
  return dcg(k, y) / idcg;
}

ViewpointFit fit_viewpoint(const Eigen::MatrixXd& items, const Eigen::VectorXd& truth,
                           int k, int grid_size) {
  const int n = static_cast<int>(items.rows());
  const int d = static_cast<int>(items.cols());
  if (truth.size() != n) throw ShapeMismatch("truth must grade every item");
  if (grid_size == 0) grid_size = d == 2 ? 1000 : 5000;

  const Eigen::MatrixXd grid = nonnegative_direction_grid(d, grid_size);
  const Eigen::MatrixXd proj = items * grid.transpose();  // n x grid_size

  ViewpointFit best;
  best.ndcg = -1.0;
  for (int g = 0; g < grid_size; ++g) {
    const double value = ndcg_at_k(rank_descending(proj.col(g)), truth, k);
    if (value > best.ndcg) {
      best.ndcg = value;
      best.direction = grid.row(g).transpose();
    }
  }
  return best;
}

EvalReport evaluate_methods(const std::vector<std::pair<std::string, MethodInput>>& methods,
                            const GroundTruth& truth, const std::vector<int>& ks) {
  const int n = truth.n_items();
  const int vps = truth.n_viewpoints();
  if (vps < 1) throw DegenerateInput("ground truth needs at least one viewpoint");
  if (!truth.priorities.allFinite())
    throw NonFinite("ground truth contains a non-finite grade");
  if (ks.empty()) throw InvalidConfig("at least one nDCG cutoff is required");

  EvalReport report;
  for (const auto& [name, input] : methods) {
    for (const int k : ks) {
      if (k < 1 || k > n) throw InvalidConfig("ndcg cutoff must satisfy 1 <= k <= n");
      double total = 0.0;
      for (int j = 0; j < vps; ++j) {
        double value = 0.0;
        if (const auto* items = std::get_if<Eigen::MatrixXd>(&input)) {
          if (int(items->rows()) != n)
            throw ShapeMismatch("embedding rows must match the ground-truth items");
          const ViewpointFit fit = fit_viewpoint(*items, truth.priorities.col(j), k);
          value = fit.ndcg;
          report.directions.push_back({name, j, k, fit.direction});
        } else {
          const auto& scores = std::get<Eigen::VectorXd>(input);
          if (int(scores.size()) != n)
            throw ShapeMismatch("score length must match the ground-truth items");
          value = ndcg_at_k(rank_descending(scores), truth.priorities.col(j), k);
        }
        report.cells.push_back({name, j, k, value});
        total += value;
      }
      report.summary.push_back({name, k, total / double(vps)});
    }
  }
  return report;
}

}  // namespace priomap
