#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "priomap/synth.hpp"
#include "test_util.hpp"

using namespace priomap;

TEST_CASE("generate_synthetic is deterministic in the seed") {
  SynthConfig config;
  config.n_items = 20;
  config.n_evaluators = 10;
  config.n_labels = 500;
  config.noise = 0.1;
  config.seed = 77;
  const SyntheticData a = generate_synthetic(config);
  const SyntheticData b = generate_synthetic(config);
  CHECK(a.dataset == b.dataset);
  CHECK(testutil::same_matrix(a.planted_embeddings, b.planted_embeddings));
  CHECK(testutil::same_matrix(a.planted_criteria, b.planted_criteria));

  config.seed = 78;
  const SyntheticData c = generate_synthetic(config);
  CHECK_FALSE(a.dataset == c.dataset);
}

TEST_CASE("generated data passes validation and respects the config") {
  SynthConfig config;
  config.n_items = 15;
  config.n_evaluators = 7;
  config.n_labels = 300;
  config.d_true = 3;
  config.seed = 5;
  const SyntheticData gen = generate_synthetic(config);
  CHECK_NOTHROW(validate_dataset(gen.dataset));
  CHECK(gen.dataset.n_items == 15);
  CHECK(gen.dataset.n_evaluators == 7);
  CHECK(gen.dataset.total_comparisons() == 300);
  CHECK(gen.planted_embeddings.rows() == 15);
  CHECK(gen.planted_embeddings.cols() == 3);
  CHECK(gen.planted_embeddings.minCoeff() >= 0.0);
  CHECK(gen.planted_embeddings.maxCoeff() < 1.0);
  // Default mixture assigns each evaluator a coordinate axis.
  for (int k = 0; k < 7; ++k) {
    CHECK(gen.planted_criteria.row(k).norm() == doctest::Approx(1.0));
    CHECK(gen.planted_criteria.row(k).maxCoeff() == 1.0);
  }
  CHECK(gen.dataset.item_ids[0] == "0");
  CHECK(gen.dataset.item_ids[14] == "14");
}

TEST_CASE("noiseless labels follow the planted criteria exactly") {
  SynthConfig config;
  config.n_items = 12;
  config.n_evaluators = 5;
  config.n_labels = 2000;
  config.noise = 0.0;
  config.seed = 21;
  MixtureComponent axis0;
  axis0.direction = Eigen::Vector2d(1.0, 0.0);
  axis0.weight = 1.0;
  config.evaluator_mixture = {axis0};

  const SyntheticData gen = generate_synthetic(config);
  for (const Comparison& c : gen.dataset.comparisons) {
    CHECK(gen.planted_embeddings(c.winner, 0) > gen.planted_embeddings(c.loser, 0));
  }
}

TEST_CASE("label noise flips close to the requested fraction") {
  SynthConfig config;
  config.n_items = 30;
  config.n_evaluators = 10;
  config.n_labels = 20000;
  config.noise = 0.3;
  config.seed = 2;
  const SyntheticData gen = generate_synthetic(config);

  long flipped = 0;
  for (const Comparison& c : gen.dataset.comparisons) {
    const double z = gen.planted_criteria.row(c.evaluator)
                         .dot(gen.planted_embeddings.row(c.winner) -
                              gen.planted_embeddings.row(c.loser));
    if (z < 0.0) ++flipped;
  }
  const double rate = static_cast<double>(flipped) / 20000.0;
  CHECK(std::abs(rate - 0.3) < 0.015);
}

TEST_CASE("an empty label budget is generable but not trainable") {
  const Eigen::MatrixXd items = Eigen::MatrixXd::Random(4, 2).cwiseAbs();
  const Eigen::MatrixXd criteria = Eigen::MatrixXd::Identity(2, 2);
  const Dataset data = generate_labels(items, criteria, 0, 0.0, 1);
  CHECK(data.total_comparisons() == 0);
  CHECK_THROWS_AS(validate_dataset(data), EmptyDataset);
}

TEST_CASE("generate_labels rejects bad geometry") {
  const Eigen::MatrixXd items = Eigen::MatrixXd::Random(4, 2).cwiseAbs();
  const Eigen::MatrixXd criteria = Eigen::MatrixXd::Identity(2, 2);
  CHECK_THROWS_AS(generate_labels(items.topRows(1), criteria, 10, 0.0, 1), DegenerateInput);
  CHECK_THROWS_AS(generate_labels(items, criteria.topRows(0), 10, 0.0, 1), DegenerateInput);
  CHECK_THROWS_AS(generate_labels(items, Eigen::MatrixXd::Identity(3, 3), 10, 0.0, 1),
                  ShapeMismatch);
  CHECK_THROWS_AS(generate_labels(items, criteria, -1, 0.0, 1), InvalidConfig);
  CHECK_THROWS_AS(generate_labels(items, criteria, 10, 0.5, 1), InvalidConfig);
  CHECK_THROWS_AS(generate_labels(items, criteria, 10, -0.1, 1), InvalidConfig);
}

TEST_CASE("mixture validation") {
  SynthConfig config;
  config.n_items = 5;
  config.n_evaluators = 3;
  config.n_labels = 10;

  MixtureComponent ok;
  ok.direction = Eigen::Vector2d(1.0, 0.0);
  ok.weight = 1.0;

  MixtureComponent wrong_dim = ok;
  wrong_dim.direction = Eigen::Vector3d(1.0, 0.0, 0.0);
  config.evaluator_mixture = {wrong_dim};
  CHECK_THROWS_AS(generate_synthetic(config), InvalidConfig);

  MixtureComponent negative = ok;
  negative.direction = Eigen::Vector2d(2.0, -1.0).normalized();
  config.evaluator_mixture = {negative};
  CHECK_THROWS_AS(generate_synthetic(config), InvalidConfig);

  MixtureComponent not_unit = ok;
  not_unit.direction = Eigen::Vector2d(1.0, 1.0);
  config.evaluator_mixture = {not_unit};
  CHECK_THROWS_AS(generate_synthetic(config), InvalidConfig);

  MixtureComponent half = ok;
  half.weight = 0.5;
  config.evaluator_mixture = {half};
  CHECK_THROWS_AS(generate_synthetic(config), InvalidConfig);

  MixtureComponent diag;
  diag.direction = Eigen::Vector2d(1.0, 1.0).normalized();
  diag.weight = 0.5;
  config.evaluator_mixture = {half, diag};
  CHECK_NOTHROW(generate_synthetic(config));
}

TEST_CASE("subsample_evaluators keeps a dense relabeled subset") {
  SynthConfig config;
  config.n_items = 10;
  config.n_evaluators = 20;
  config.n_labels = 1000;
  config.seed = 44;
  const SyntheticData gen = generate_synthetic(config);

  const Dataset sub = subsample_evaluators(gen.dataset, 6, 123);
  CHECK(sub.n_evaluators == 6);
  CHECK(sub.n_items == 10);
  CHECK(sub.item_ids == gen.dataset.item_ids);
  CHECK_NOTHROW(validate_dataset(sub));

  // Every kept evaluator id must come from the original pool, without repeats.
  std::set<std::string> kept(sub.evaluator_ids.begin(), sub.evaluator_ids.end());
  CHECK(kept.size() == 6);
  for (const std::string& id : sub.evaluator_ids)
    CHECK(std::find(gen.dataset.evaluator_ids.begin(), gen.dataset.evaluator_ids.end(),
                    id) != gen.dataset.evaluator_ids.end());

  // Labels survive exactly when their evaluator was kept, in original order.
  std::vector<Comparison> expected;
  for (const Comparison& c : gen.dataset.comparisons) {
    const std::string& id = gen.dataset.evaluator_ids[c.evaluator];
    const auto it = std::find(sub.evaluator_ids.begin(), sub.evaluator_ids.end(), id);
    if (it == sub.evaluator_ids.end()) continue;
    const int remapped = static_cast<int>(it - sub.evaluator_ids.begin());
    expected.push_back({remapped, c.winner, c.loser});
  }
  CHECK(sub.comparisons == expected);

  CHECK(subsample_evaluators(gen.dataset, 20, 9) == gen.dataset);
  CHECK_THROWS_AS(subsample_evaluators(gen.dataset, 21, 9), SampleTooLarge);
  CHECK_THROWS_AS(subsample_evaluators(gen.dataset, 0, 9), InvalidConfig);

  const Dataset again = subsample_evaluators(gen.dataset, 6, 123);
  CHECK(sub == again);
  const Dataset other = subsample_evaluators(gen.dataset, 6, 124);
  CHECK_FALSE(sub == other);
}

TEST_CASE("subsample_labels keeps the roster and a label subset") {
  SynthConfig config;
  config.n_items = 8;
  config.n_evaluators = 5;
  config.n_labels = 400;
  config.seed = 10;
  const SyntheticData gen = generate_synthetic(config);

  const Dataset sub = subsample_labels(gen.dataset, 50, 7);
  CHECK(sub.total_comparisons() == 50);
  CHECK(sub.n_items == 8);
  CHECK(sub.n_evaluators == 5);
  CHECK(sub.item_ids == gen.dataset.item_ids);
  CHECK(sub.evaluator_ids == gen.dataset.evaluator_ids);
  CHECK_NOTHROW(validate_dataset(sub));

  // Chosen labels appear in their original relative order.
  size_t cursor = 0;
  for (const Comparison& c : sub.comparisons) {
    while (cursor < gen.dataset.comparisons.size() &&
           !(gen.dataset.comparisons[cursor] == c))
      ++cursor;
    REQUIRE(cursor < gen.dataset.comparisons.size());
    ++cursor;
  }

  CHECK(subsample_labels(gen.dataset, 400, 3) == gen.dataset);
  const Dataset one = subsample_labels(gen.dataset, 1, 3);
  CHECK(one.total_comparisons() == 1);
  CHECK_THROWS_AS(subsample_labels(gen.dataset, 401, 3), SampleTooLarge);
  CHECK_THROWS_AS(subsample_labels(gen.dataset, 0, 3), InvalidConfig);

  CHECK(subsample_labels(gen.dataset, 50, 7) == sub);
  CHECK_FALSE(subsample_labels(gen.dataset, 50, 8) == sub);
}
