#include "priomap/optimizer.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "priomap/losses.hpp"
#include "priomap/rng.hpp"

namespace priomap {

namespace {

void check_shapes(const PriorityMap& map, const Dataset& data) {
  if (map.embeddings.rows() != data.n_items ||
      map.evaluator_criteria.rows() != data.n_evaluators)
    throw ShapeMismatch("map dimensions do not match dataset");
  if (map.best_viewpoints.rows() != map.embeddings.rows() ||
      map.best_viewpoints.cols() != map.d || map.embeddings.cols() != map.d ||
      map.evaluator_criteria.cols() != map.d)
    throw ShapeMismatch("map matrices disagree on shape");
}

/// One pass over all hinge terms. Accumulates both loss parts and, when
/// `grads` is non-null, the subgradients of consistency + alpha * frontier.
/// Term order is fixed (stored comparisons, then ascending item pairs) so
/// runs are bit-reproducible.
LossBreakdown accumulate(const Eigen::MatrixXd& X, const Eigen::MatrixXd& V,
                         const Eigen::MatrixXd& W, const Dataset& data, double alpha,
                         Subgradients* grads,
                         const std::vector<int>* batch = nullptr) {
  const int n = static_cast<int>(X.rows());
  const int d = static_cast<int>(X.cols());
  const int c = data.total_comparisons();
  if (n < 2) throw DegenerateInput("fit objective needs at least two items");
  if (c == 0) throw DegenerateInput("fit objective needs at least one comparison");

  if (grads) {
    grads->embeddings.setZero(n, d);
    grads->best_viewpoints.setZero(n, d);
    grads->evaluator_criteria.setZero(W.rows(), d);
  }

  LossBreakdown loss;

  // Label terms. In minibatch mode only the listed rows contribute and the
  // average runs over the batch instead of all c labels.
  const double inv_c = batch ? 1.0 / static_cast<double>(batch->size())
                             : 1.0 / static_cast<double>(c);
  const std::size_t n_terms = batch ? batch->size() : data.comparisons.size();
  for (std::size_t t = 0; t < n_terms; ++t) {
    const Comparison& cmp = data.comparisons[batch ? (*batch)[t] : t];
    double z = 0.0;
    for (int l = 0; l < d; ++l)
      z += W(cmp.evaluator, l) * (X(cmp.winner, l) - X(cmp.loser, l));
    if (z < 1.0) {
      loss.consistency += 1.0 - z;
      if (grads) {
        for (int l = 0; l < d; ++l) {
          const double wl = W(cmp.evaluator, l) * inv_c;
          grads->embeddings(cmp.winner, l) -= wl;
          grads->embeddings(cmp.loser, l) += wl;
          grads->evaluator_criteria(cmp.evaluator, l) -=
              (X(cmp.winner, l) - X(cmp.loser, l)) * inv_c;
        }
      }
    }
  }
  loss.consistency *= inv_c;

  // Dominance terms over all ordered item pairs.
  const double inv_pairs = 1.0 / static_cast<double>(n) / static_cast<double>(n - 1);
  const double gscale = alpha * inv_pairs;
  for (int i = 0; i < n; ++i) {
    double self = 0.0;
    for (int l = 0; l < d; ++l) self += V(i, l) * X(i, l);
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      double z = self;
      for (int l = 0; l < d; ++l) z -= V(i, l) * X(j, l);
      if (z < 1.0) {
        loss.frontier += 1.0 - z;
        if (grads) {
          for (int l = 0; l < d; ++l) {
            grads->best_viewpoints(i, l) -= (X(i, l) - X(j, l)) * gscale;
            grads->embeddings(i, l) -= V(i, l) * gscale;
            grads->embeddings(j, l) += V(i, l) * gscale;
          }
        }
      }
    }
  }
  loss.frontier *= inv_pairs;

  loss.objective = loss.consistency + alpha * loss.frontier;
  return loss;
}

PriorityMap initial_map(const Dataset& data, const TrainConfig& config, Rng& rng) {
  PriorityMap map;
  map.d = config.d;
  map.alpha = config.alpha;
  map.item_ids = data.item_ids;
  map.evaluator_ids = data.evaluator_ids;
  // Embeddings start uniform in [0,1); criterion rows start at the uniform
  // direction, a feasible and symmetric point. Fill order is fixed.
  map.embeddings.resize(data.n_items, config.d);
  for (int i = 0; i < data.n_items; ++i)
    for (int l = 0; l < config.d; ++l) map.embeddings(i, l) = rng.uniform01();
  const double u = 1.0 / std::sqrt(static_cast<double>(config.d));
  map.best_viewpoints = Eigen::MatrixXd::Constant(data.n_items, config.d, u);
  map.evaluator_criteria = Eigen::MatrixXd::Constant(data.n_evaluators, config.d, u);
  return map;
}

void apply_step(PriorityMap& map, const Subgradients& grads, double lr) {
  map.embeddings -= lr * grads.embeddings;
  map.best_viewpoints -= lr * grads.best_viewpoints;
  map.evaluator_criteria -= lr * grads.evaluator_criteria;
  map.embeddings = project_nonnegative(map.embeddings);
  map.best_viewpoints = normalize_rows(project_nonnegative(map.best_viewpoints).eval());
  map.evaluator_criteria = normalize_rows(project_nonnegative(map.evaluator_criteria).eval());
}

}  // namespace

LossBreakdown objective(const PriorityMap& map, const Dataset& data) {
  check_shapes(map, data);
  LossBreakdown loss;
  loss.consistency = loss_consistency(map.embeddings, map.evaluator_criteria, data);
  loss.frontier = loss_frontier(map.embeddings, map.best_viewpoints);
  loss.objective = loss.consistency + map.alpha * loss.frontier;
  return loss;
}

Subgradients subgradients(const PriorityMap& map, const Dataset& data) {
  check_shapes(map, data);
  Subgradients grads;
  accumulate(map.embeddings, map.best_viewpoints, map.evaluator_criteria, data,
             map.alpha, &grads);
  return grads;
}

FitResult fit(const Dataset& data, const TrainConfig& config) {
  validate_config(config);
  validate_dataset(data);

  Rng rng(config.seed);
  FitResult result;
  result.map = initial_map(data, config, rng);
  PriorityMap& map = result.map;

  const bool minibatch = config.batch_mode == BatchMode::kMinibatch;
  std::vector<int> order;
  if (minibatch) {
    order.resize(data.comparisons.size());
    std::iota(order.begin(), order.end(), 0);
  }

  Subgradients grads;
  int flat_epochs = 0;
  auto record = [&](const LossBreakdown& loss, int epoch) {
    // A NaN parameter silences its hinge terms (NaN compares false), so the
    // parameters are checked alongside the objective.
    if (!std::isfinite(loss.objective) || !map.embeddings.allFinite() ||
        !map.best_viewpoints.allFinite() || !map.evaluator_criteria.allFinite())
      throw NonFinite("objective became non-finite at epoch " + std::to_string(epoch));
    if (!result.history.empty() &&
        std::abs(loss.objective - result.history.back().objective) < config.convergence_tol)
      ++flat_epochs;
    else
      flat_epochs = 0;
    result.history.push_back(loss);
  };

  for (int epoch = 0; epoch < config.max_iters; ++epoch) {
    if (minibatch) {
      // Objective snapshot, then shuffled passes over label chunks. The
      // dominance part is recomputed in full for every chunk step so the
      // two terms keep their relative weight.
      record(accumulate(map.embeddings, map.best_viewpoints, map.evaluator_criteria,
                        data, map.alpha, nullptr),
             epoch);
      if (flat_epochs >= 10) return result;
      for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[rng.below(i)]);
      for (std::size_t start = 0; start < order.size();
           start += static_cast<std::size_t>(config.batch_size)) {
        const std::size_t stop =
            std::min(order.size(), start + static_cast<std::size_t>(config.batch_size));
        std::vector<int> batch(order.begin() + start, order.begin() + stop);
        accumulate(map.embeddings, map.best_viewpoints, map.evaluator_criteria, data,
                   map.alpha, &grads, &batch);
        apply_step(map, grads, config.learning_rate);
      }
    } else {
      const LossBreakdown loss = accumulate(
          map.embeddings, map.best_viewpoints, map.evaluator_criteria, data, map.alpha, &grads);
      record(loss, epoch);
      if (flat_epochs >= 10) return result;
      apply_step(map, grads, config.learning_rate);
    }
  }

  record(accumulate(map.embeddings, map.best_viewpoints, map.evaluator_criteria, data,
                    map.alpha, nullptr),
         config.max_iters);
  return result;
}

}  // namespace priomap
