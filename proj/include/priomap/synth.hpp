#pragma once

#include <Eigen/Dense>
#include <vector>

#include "priomap/core.hpp"
#include "priomap/errors.hpp"

namespace priomap {

struct MixtureComponent {
  Eigen::VectorXd direction;  // unit L2, non-negative
  double weight = 1.0;
};

struct SynthConfig {
  int n_items = 80;
  int n_evaluators = 200;
  long n_labels = 64000;
  int d_true = 2;
  double noise = 0.0;  // label flip probability, in [0, 0.5)
  std::uint64_t seed = 0;
  // Planted viewpoint clusters; empty means equal-weight coordinate axes.
  std::vector<MixtureComponent> evaluator_mixture;
};

struct SyntheticData {
  Dataset dataset;
  Eigen::MatrixXd planted_embeddings;  // n x d
  Eigen::MatrixXd planted_criteria;    // one direction per evaluator, m x d
};

/// Labels from known geometry: each label draws an evaluator uniformly, a
/// distinct item pair uniformly, declares the winner by the sign of
/// w_k^T(x_i - x_j) (ties favor the first draw), then flips the outcome with
/// probability `noise`. Ids are stringified indices; n_labels may be zero.
Dataset generate_labels(const Eigen::MatrixXd& items, const Eigen::MatrixXd& criteria,
                        long n_labels, double noise, std::uint64_t seed);

/// Plants item embeddings uniform in [0,1)^{n x d}, assigns each evaluator a
/// mixture direction, then generates labels as above — all from one seeded
/// stream.
SyntheticData generate_synthetic(const SynthConfig& config);

/// Uniform sample of q evaluators without replacement; keeps all their labels
/// in original order and renumbers evaluators densely. Items are untouched.
Dataset subsample_evaluators(const Dataset& data, int q, std::uint64_t seed);

/// Uniform sample of r labels without replacement, kept in original order;
/// the evaluator roster is preserved even for evaluators left with no labels.
Dataset subsample_labels(const Dataset& data, long r, std::uint64_t seed);

}  // namespace priomap
