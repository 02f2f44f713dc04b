#include "priomap/synth.hpp"

#include <cmath>
#include <string>

#include "priomap/rng.hpp"

namespace priomap {

namespace {

std::vector<std::string> index_ids(int n) {
  std::vector<std::string> ids(n);
  for (int i = 0; i < n; ++i) ids[i] = std::to_string(i);
  return ids;
}

Dataset labels_from_geometry(const Eigen::MatrixXd& items,
                             const Eigen::MatrixXd& criteria, long n_labels,
                             double noise, Rng& rng) {
  const int n = static_cast<int>(items.rows());
  const int m = static_cast<int>(criteria.rows());
  if (n < 2) throw DegenerateInput("label generation needs at least two items");
  if (m < 1) throw DegenerateInput("label generation needs at least one evaluator");
  if (items.cols() != criteria.cols())
    throw ShapeMismatch("items and criteria must share a dimension");
  if (n_labels < 0) throw InvalidConfig("n_labels must be non-negative");
  if (noise < 0.0 || noise >= 0.5) throw InvalidConfig("noise must lie in [0, 0.5)");

  Dataset data;
  data.n_items = n;
  data.n_evaluators = m;
  data.item_ids = index_ids(n);
  data.evaluator_ids = index_ids(m);
  data.comparisons.reserve(n_labels);
  for (long t = 0; t < n_labels; ++t) {
    const int k = rng.index(m);
    const int i = rng.index(n);
    int j = rng.index(n - 1);
    if (j >= i) ++j;
    const double z = criteria.row(k).dot(items.row(i) - items.row(j));
    int winner = z >= 0.0 ? i : j;
    int loser = z >= 0.0 ? j : i;
    if (noise > 0.0 && rng.uniform01() < noise) std::swap(winner, loser);
    data.comparisons.push_back({k, winner, loser});
  }
  return data;
}

}  // namespace

Dataset generate_labels(const Eigen::MatrixXd& items, const Eigen::MatrixXd& criteria,
                        long n_labels, double noise, std::uint64_t seed) {
  Rng rng(seed);
  return labels_from_geometry(items, criteria, n_labels, noise, rng);
}

SyntheticData generate_synthetic(const SynthConfig& config) {
  if (config.n_items < 2) throw InvalidConfig("need at least two items");
  if (config.n_evaluators < 1) throw InvalidConfig("need at least one evaluator");
  if (config.d_true < 1) throw InvalidConfig("d_true must be positive");

  std::vector<MixtureComponent> mixture = config.evaluator_mixture;
  if (mixture.empty()) {
    for (int l = 0; l < config.d_true; ++l) {
      MixtureComponent axis;
      axis.direction = Eigen::VectorXd::Unit(config.d_true, l);
      axis.weight = 1.0 / config.d_true;
      mixture.push_back(std::move(axis));
    }
  }
  double weight_total = 0.0;
  for (const MixtureComponent& c : mixture) {
    if (c.direction.size() != config.d_true)
      throw InvalidConfig("mixture direction dimension must equal d_true");
    if (c.direction.minCoeff() < 0.0)
      throw InvalidConfig("mixture directions must be non-negative");
    if (std::abs(c.direction.norm() - 1.0) > 1e-9)
      throw InvalidConfig("mixture directions must have unit norm");
    if (c.weight <= 0.0) throw InvalidConfig("mixture weights must be positive");
    weight_total += c.weight;
  }
  if (std::abs(weight_total - 1.0) > 1e-9)
    throw InvalidConfig("mixture weights must sum to 1");

  Rng rng(config.seed);
  SyntheticData out;
  out.planted_embeddings.resize(config.n_items, config.d_true);
  for (int i = 0; i < config.n_items; ++i)
    for (int l = 0; l < config.d_true; ++l) out.planted_embeddings(i, l) = rng.uniform01();

  std::vector<double> weights;
  for (const MixtureComponent& c : mixture) weights.push_back(c.weight);
  out.planted_criteria.resize(config.n_evaluators, config.d_true);
  for (int k = 0; k < config.n_evaluators; ++k)
    out.planted_criteria.row(k) = mixture[rng.pick_weighted(weights)].direction;

  out.dataset = labels_from_geometry(out.planted_embeddings, out.planted_criteria,
                                     config.n_labels, config.noise, rng);
  return out;
}

Dataset subsample_evaluators(const Dataset& data, int q, std::uint64_t seed) {
  validate_dataset(data);
  if (q < 1) throw InvalidConfig("must keep at least one evaluator");
  if (q > data.n_evaluators)
    throw SampleTooLarge("cannot sample " + std::to_string(q) + " of " +
                         std::to_string(data.n_evaluators) + " evaluators");

  Rng rng(seed);
  const std::vector<int> chosen = rng.sample_without_replacement(data.n_evaluators, q);
  std::vector<int> remap(data.n_evaluators, -1);
  for (int k = 0; k < q; ++k) remap[chosen[k]] = k;

  Dataset out;
  out.n_items = data.n_items;
  out.n_evaluators = q;
  out.item_ids = data.item_ids;
  out.item_labels = data.item_labels;
  out.evaluator_ids.reserve(q);
  for (int k : chosen) out.evaluator_ids.push_back(data.evaluator_ids[k]);
  for (const Comparison& c : data.comparisons) {
    if (remap[c.evaluator] >= 0)
      out.comparisons.push_back({remap[c.evaluator], c.winner, c.loser});
  }
  return out;
}

Dataset subsample_labels(const Dataset& data, long r, std::uint64_t seed) {
  validate_dataset(data);
  if (r < 1) throw InvalidConfig("must keep at least one label");
  const long c = data.total_comparisons();
  if (r > c)
    throw SampleTooLarge("cannot sample " + std::to_string(r) + " of " +
                         std::to_string(c) + " labels");

  Rng rng(seed);
  const std::vector<int> chosen =
      rng.sample_without_replacement(static_cast<int>(c), static_cast<int>(r));
  Dataset out;
  out.n_items = data.n_items;
  out.n_evaluators = data.n_evaluators;
  out.item_ids = data.item_ids;
  out.item_labels = data.item_labels;
  out.evaluator_ids = data.evaluator_ids;
  out.comparisons.reserve(r);
  for (int idx : chosen) out.comparisons.push_back(data.comparisons[idx]);
  return out;
}

}  // namespace priomap
