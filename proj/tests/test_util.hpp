#pragma once

#include <Eigen/Dense>
#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "priomap/core.hpp"
#include "priomap/losses.hpp"
#include "priomap/model.hpp"
#include "priomap/rng.hpp"

namespace testutil {

/// Kendall rank correlation between two score vectors (no tie handling;
/// callers use continuous scores).
inline double kendall_tau(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const int n = static_cast<int>(a.size());
  int concordant = 0, discordant = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double prod = (a(i) - a(j)) * (b(i) - b(j));
      if (prod > 0) ++concordant;
      else if (prod < 0) ++discordant;
    }
  }
  return double(concordant - discordant) / (0.5 * n * (n - 1));
}

/// Dataset straight from (evaluator, winner, loser) index triples.
inline priomap::Dataset dataset_from_triples(
    int n_items, int n_evaluators, const std::vector<std::array<int, 3>>& triples) {
  priomap::Dataset data;
  data.n_items = n_items;
  data.n_evaluators = n_evaluators;
  for (int i = 0; i < n_items; ++i) data.item_ids.push_back(std::to_string(i));
  for (int k = 0; k < n_evaluators; ++k) data.evaluator_ids.push_back(std::to_string(k));
  for (const auto& [k, w, l] : triples) data.comparisons.push_back({k, w, l});
  return data;
}

/// Random feasible map: non-negative embeddings, unit non-negative rows.
inline priomap::PriorityMap random_map(int n, int m, int d, priomap::Rng& rng) {
  priomap::PriorityMap map;
  map.d = d;
  map.alpha = 0.1;
  map.embeddings.resize(n, d);
  map.best_viewpoints.resize(n, d);
  map.evaluator_criteria.resize(m, d);
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < d; ++l) map.embeddings(i, l) = rng.uniform(0.0, 2.0);
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < d; ++l) map.best_viewpoints(i, l) = rng.uniform(0.05, 1.0);
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < d; ++l) map.evaluator_criteria(k, l) = rng.uniform(0.05, 1.0);
  map.best_viewpoints = priomap::normalize_rows(map.best_viewpoints);
  map.evaluator_criteria = priomap::normalize_rows(map.evaluator_criteria);
  for (int i = 0; i < n; ++i) map.item_ids.push_back(std::to_string(i));
  for (int k = 0; k < m; ++k) map.evaluator_ids.push_back(std::to_string(k));
  return map;
}

/// Exact (bitwise) matrix equality, shape included.
inline bool same_matrix(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         (a.array() == b.array()).all();
}

/// Fresh scratch directory under the system temp root.
inline std::filesystem::path temp_dir(const std::string& name) {
  static int counter = 0;
  const auto dir = std::filesystem::temp_directory_path() /
                   ("priomap_test_" + name + "_" + std::to_string(counter++));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace testutil
