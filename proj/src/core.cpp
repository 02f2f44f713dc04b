#include "priomap/core.hpp"

#include <unordered_map>

namespace priomap {

namespace {

struct Indexer {
  std::unordered_map<std::string, int> index;
  std::vector<std::string> ids;
  bool frozen = false;  // when true, unseen ids are an error

  int resolve(const std::string& id, const char* what) {
    auto it = index.find(id);
    if (it != index.end()) return it->second;
    if (frozen) throw UnknownId(std::string(what) + " id '" + id + "' is not in the roster");
    const int next = static_cast<int>(ids.size());
    index.emplace(id, next);
    ids.push_back(id);
    return next;
  }
};

Dataset build(const std::vector<RawComparison>& rows, Indexer items,
              std::vector<std::string> labels) {
  if (rows.empty()) throw EmptyDataset("no comparison rows");

  Indexer evaluators;
  Dataset out;
  out.comparisons.reserve(rows.size());
  for (const RawComparison& row : rows) {
    if (row.winner == row.loser)
      throw DuplicateSelfComparison("comparison of item '" + row.winner + "' with itself");
    Comparison cmp;
    cmp.evaluator = evaluators.resolve(row.evaluator, "evaluator");
    cmp.winner = items.resolve(row.winner, "item");
    cmp.loser = items.resolve(row.loser, "item");
    out.comparisons.push_back(cmp);
  }
  out.n_items = static_cast<int>(items.ids.size());
  out.n_evaluators = static_cast<int>(evaluators.ids.size());
  out.item_ids = std::move(items.ids);
  out.evaluator_ids = std::move(evaluators.ids);
  out.item_labels = std::move(labels);
  return out;
}

}  // namespace

Dataset validate_dataset(const std::vector<RawComparison>& rows) {
  return build(rows, Indexer{}, {});
}

Dataset validate_dataset(const std::vector<RawComparison>& rows,
                         const std::vector<std::pair<std::string, std::string>>& item_roster) {
  Indexer items;
  std::vector<std::string> labels;
  labels.reserve(item_roster.size());
  for (const auto& [id, label] : item_roster) {
    if (items.index.count(id)) throw SchemaError("item roster repeats id '" + id + "'");
    items.index.emplace(id, static_cast<int>(items.ids.size()));
    items.ids.push_back(id);
    labels.push_back(label);
  }
  items.frozen = true;
  return build(rows, std::move(items), std::move(labels));
}

Dataset validate_dataset(const Dataset& dataset) {
  if (dataset.comparisons.empty()) throw EmptyDataset("dataset has no comparisons");
  if (dataset.n_items <= 0 || dataset.n_evaluators <= 0)
    throw EmptyDataset("dataset has no items or no evaluators");
  if (static_cast<int>(dataset.item_ids.size()) != dataset.n_items ||
      static_cast<int>(dataset.evaluator_ids.size()) != dataset.n_evaluators)
    throw SchemaError("dataset id tables do not match the declared counts");
  if (!dataset.item_labels.empty() &&
      static_cast<int>(dataset.item_labels.size()) != dataset.n_items)
    throw SchemaError("dataset label table does not match the item count");
  for (const Comparison& cmp : dataset.comparisons) {
    if (cmp.evaluator < 0 || cmp.evaluator >= dataset.n_evaluators)
      throw UnknownId("evaluator index out of range");
    if (cmp.winner < 0 || cmp.winner >= dataset.n_items ||
        cmp.loser < 0 || cmp.loser >= dataset.n_items)
      throw UnknownId("item index out of range");
    if (cmp.winner == cmp.loser)
      throw DuplicateSelfComparison("comparison of item '" +
                                    dataset.item_ids[cmp.winner] + "' with itself");
  }
  return dataset;
}

void validate_config(const TrainConfig& config) {
  if (config.d < 1) throw InvalidConfig("d must be at least 1");
  if (config.alpha < 0) throw InvalidConfig("alpha must be non-negative");
  if (!(config.learning_rate > 0)) throw InvalidConfig("learning_rate must be positive");
  if (config.max_iters < 0) throw InvalidConfig("max_iters must be non-negative");
  if (!(config.convergence_tol >= 0)) throw InvalidConfig("convergence_tol must be non-negative");
  if (config.batch_mode == BatchMode::kMinibatch && config.batch_size < 1)
    throw InvalidConfig("minibatch mode needs batch_size >= 1");
}

}  // namespace priomap
