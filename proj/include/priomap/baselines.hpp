#pragma once

#include <Eigen/Dense>
#include <optional>

#include "priomap/core.hpp"
#include "priomap/errors.hpp"

namespace priomap {

struct BtModel {
  Eigen::VectorXd scores;
  double lambda = 0.01;
};

struct CrowdBtModel {
  Eigen::VectorXd scores;
  Eigen::VectorXd reliabilities;  // eta_k in [0, 1], one per evaluator
  double lambda = 0.01;
};

struct CrowdBtOptions {
  double eta_init = 0.9;
  bool freeze_eta = false;  // keeps reliabilities at eta_init (BT reduction)
};

/// exp(s_i) / (exp(s_i) + exp(s_j)), shifted so neither exponent overflows.
double bt_prob(double s_i, double s_j);

/// Regularized log-likelihoods maximized by the fitters below.
double bt_log_likelihood(const Dataset& data, const Eigen::VectorXd& scores,
                         double lambda);
double crowdbt_log_likelihood(const Dataset& data, const Eigen::VectorXd& scores,
                              const Eigen::VectorXd& reliabilities, double lambda);

/// TrainConfig tuned for the score-based fitters (the hinge-model defaults
/// are far too timid for the smooth likelihood).
TrainConfig baseline_defaults();

/// Gradient ascent on bt_log_likelihood; gradients are averaged over the
/// comparisons, scores mean-centered afterward. `init` defaults to zeros.
BtModel fit_bt(const Dataset& data, double lambda, const TrainConfig& config,
               const std::optional<Eigen::VectorXd>& init = std::nullopt);

/// Alternating gradient ascent on scores and per-evaluator reliabilities;
/// reliabilities clipped to [0, 1] after each step, scores mean-centered.
/// Every evaluator must carry at least one comparison.
CrowdBtModel fit_crowdbt(const Dataset& data, double lambda, const TrainConfig& config,
                         const CrowdBtOptions& options = {});

}  // namespace priomap
