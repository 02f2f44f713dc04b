#include "priomap/baselines.hpp"

#include <cmath>
#include <vector>

namespace priomap {

namespace {

double log_sigmoid(double delta) {
  return delta >= 0.0 ? -std::log1p(std::exp(-delta))
                      : delta - std::log1p(std::exp(delta));
}

void check_finite(const Eigen::VectorXd& v, const char* what) {
  if (!v.allFinite()) throw NonFinite(std::string(what) + " diverged to a non-finite value");
}

std::vector<int> labels_per_evaluator(const Dataset& data) {
  std::vector<int> counts(data.n_evaluators, 0);
  for (const Comparison& c : data.comparisons) ++counts[c.evaluator];
  return counts;
}

}  // namespace

double bt_prob(double s_i, double s_j) {
  if (s_i >= s_j) return 1.0 / (1.0 + std::exp(s_j - s_i));
  const double e = std::exp(s_i - s_j);
  return e / (1.0 + e);
}

double bt_log_likelihood(const Dataset& data, const Eigen::VectorXd& scores,
                         double lambda) {
  double ll = 0.0;
  for (const Comparison& c : data.comparisons)
    ll += log_sigmoid(scores(c.winner) - scores(c.loser));
  return ll - lambda * scores.squaredNorm();
}

double crowdbt_log_likelihood(const Dataset& data, const Eigen::VectorXd& scores,
                              const Eigen::VectorXd& reliabilities, double lambda) {
  double ll = 0.0;
  for (const Comparison& c : data.comparisons) {
    const double p = bt_prob(scores(c.winner), scores(c.loser));
    const double eta = reliabilities(c.evaluator);
    ll += std::log(std::max(eta * p + (1.0 - eta) * (1.0 - p), 1e-300));
  }
  return ll - lambda * scores.squaredNorm();
}

TrainConfig baseline_defaults() {
  TrainConfig config;
  config.learning_rate = 1.0;
  config.max_iters = 2000;
  return config;
}

BtModel fit_bt(const Dataset& data, double lambda, const TrainConfig& config,
               const std::optional<Eigen::VectorXd>& init) {
  validate_dataset(data);
  validate_config(config);
  const int n = data.n_items;
  Eigen::VectorXd s = init ? *init : Eigen::VectorXd::Zero(n);
  if (s.size() != n) throw ShapeMismatch("initial scores must have one entry per item");

  const double inv_c = 1.0 / double(data.comparisons.size());
  Eigen::VectorXd grad(n);
  for (int it = 0; it < config.max_iters; ++it) {
    grad = -2.0 * lambda * s;
    for (const Comparison& c : data.comparisons) {
      const double miss = 1.0 - bt_prob(s(c.winner), s(c.loser));
      grad(c.winner) += miss;
      grad(c.loser) -= miss;
    }
    s += config.learning_rate * inv_c * grad;
    check_finite(s, "BT scores");
  }
  s.array() -= s.mean();

  BtModel model;
  model.scores = std::move(s);
  model.lambda = lambda;
  return model;
}

CrowdBtModel fit_crowdbt(const Dataset& data, double lambda, const TrainConfig& config,
                         const CrowdBtOptions& options) {
  validate_dataset(data);
  validate_config(config);
  if (options.eta_init < 0.0 || options.eta_init > 1.0)
    throw InvalidConfig("eta_init must lie in [0, 1]");
  const std::vector<int> counts = labels_per_evaluator(data);
  for (int k = 0; k < data.n_evaluators; ++k) {
    if (counts[k] == 0)
      throw DegenerateInput("evaluator " + data.evaluator_ids[k] +
                            " has no comparisons; reliability is unidentifiable");
  }

  const int n = data.n_items;
  const int m = data.n_evaluators;
  Eigen::VectorXd s = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd eta = Eigen::VectorXd::Constant(m, options.eta_init);
  const double inv_c = 1.0 / double(data.comparisons.size());

  Eigen::VectorXd grad_s(n);
  Eigen::VectorXd grad_eta(m);
  for (int it = 0; it < config.max_iters; ++it) {
    grad_s = -2.0 * lambda * s;
    for (const Comparison& c : data.comparisons) {
      const double p = bt_prob(s(c.winner), s(c.loser));
      const double e = eta(c.evaluator);
      const double denom = std::max(e * p + (1.0 - e) * (1.0 - p), 1e-300);
      const double g = (2.0 * e - 1.0) * p * (1.0 - p) / denom;
      grad_s(c.winner) += g;
      grad_s(c.loser) -= g;
    }
    s += config.learning_rate * inv_c * grad_s;
    check_finite(s, "CrowdBT scores");

    if (!options.freeze_eta) {
      grad_eta.setZero();
      for (const Comparison& c : data.comparisons) {
        const double p = bt_prob(s(c.winner), s(c.loser));
        const double e = eta(c.evaluator);
        const double denom = std::max(e * p + (1.0 - e) * (1.0 - p), 1e-300);
        grad_eta(c.evaluator) += (2.0 * p - 1.0) / denom;
      }
      for (int k = 0; k < m; ++k)
        eta(k) += config.learning_rate * grad_eta(k) / double(counts[k]);
      eta = eta.cwiseMax(0.0).cwiseMin(1.0);
      check_finite(eta, "CrowdBT reliabilities");
    }
  }
  s.array() -= s.mean();

  CrowdBtModel model;
  model.scores = std::move(s);
  model.reliabilities = std::move(eta);
  model.lambda = lambda;
  return model;
}

}  // namespace priomap
