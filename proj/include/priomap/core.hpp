#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "priomap/errors.hpp"

namespace priomap {

/// One comparison row as read from an input source, ids still unresolved.
struct RawComparison {
  std::string evaluator;
  std::string winner;
  std::string loser;
};

/// One preference label: evaluator `evaluator` prefers item `winner` over
/// item `loser`. Indices are dense, assigned by validate_dataset.
struct Comparison {
  int evaluator = 0;
  int winner = 0;
  int loser = 0;

  friend bool operator==(const Comparison&, const Comparison&) = default;
};

/// A validated comparison dataset. Immutable after construction; safe to
/// share read-only across threads.
struct Dataset {
  int n_items = 0;
  int n_evaluators = 0;
  std::vector<Comparison> comparisons;

  /// Dense index -> id as it appeared in the input. Kept so results can be
  /// reported in the caller's vocabulary.
  std::vector<std::string> item_ids;
  std::vector<std::string> evaluator_ids;

  /// Optional display label per item; empty when no item file was given.
  std::vector<std::string> item_labels;

  int total_comparisons() const { return static_cast<int>(comparisons.size()); }

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

/// Builds a Dataset from parsed rows. Ids may be arbitrary strings; they are
/// remapped to dense indices in order of first appearance and the mapping is
/// retained. Duplicate rows are kept: repeated labels legitimately carry
/// weight in the consistency loss.
///
/// Throws EmptyDataset, DuplicateSelfComparison.
Dataset validate_dataset(const std::vector<RawComparison>& rows);

/// Same, but items must come from the given roster (id, display label);
/// a comparison naming an id outside the roster throws UnknownId.
Dataset validate_dataset(const std::vector<RawComparison>& rows,
                         const std::vector<std::pair<std::string, std::string>>& item_roster);

/// Re-validates an existing Dataset and returns it unchanged. Idempotent by
/// construction; used after deserialization and by subsampling.
Dataset validate_dataset(const Dataset& dataset);

enum class BatchMode { kFull, kMinibatch };

/// Knobs of the projected subgradient fit. Defaults give a deterministic
/// full-batch run.
struct TrainConfig {
  int d = 2;
  double alpha = 0.1;
  double learning_rate = 0.01;
  int max_iters = 2000;
  std::uint64_t seed = 0;
  double convergence_tol = 1e-7;
  BatchMode batch_mode = BatchMode::kFull;
  int batch_size = 0;  // used only in minibatch mode
};

/// Throws InvalidConfig when a field violates its invariant.
void validate_config(const TrainConfig& config);

}  // namespace priomap
