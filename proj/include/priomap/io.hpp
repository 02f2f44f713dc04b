#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "priomap/core.hpp"
#include "priomap/errors.hpp"
#include "priomap/metrics.hpp"
#include "priomap/model.hpp"
#include "priomap/optimizer.hpp"

namespace priomap {

/// RFC-4180 parsing: quoted fields, doubled quotes, embedded separators and
/// newlines; accepts both LF and CRLF records. Returns one row per record.
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

/// Quotes a field only when it contains a separator, quote, or newline.
std::string csv_escape(const std::string& field);

/// Shortest decimal form that parses back to the identical double.
std::string format_double(double value);
double parse_double(const std::string& text, const std::string& where);
long parse_long(const std::string& text, const std::string& where);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// --- comparisons (`evaluator_id,winner_id,loser_id`) -----------------------
std::vector<RawComparison> read_comparisons_csv(const std::string& path);
void write_comparisons_csv(const std::string& path, const Dataset& data);

// --- item roster (`item_id,label`) ------------------------------------------
std::vector<std::pair<std::string, std::string>> read_items_csv(const std::string& path);

// --- fitted model JSON -------------------------------------------------------
// {"d","alpha","x","v","w","item_ids","evaluator_ids"}; parse(serialize(m))
// reproduces m bit-exactly for finite values.
std::string serialize_model(const PriorityMap& map);
PriorityMap parse_model(const std::string& text);
PriorityMap read_model_file(const std::string& path);
void write_model_file(const std::string& path, const PriorityMap& map);

// --- training log (`epoch,l_c,l_f,objective`) -------------------------------
void write_train_log_csv(const std::string& path,
                         const std::vector<LossBreakdown>& history);

// --- frontier report (`item_id,margin,is_frontier,certificate_*`) -----------
void write_frontier_csv(const std::string& path,
                        const std::vector<FrontierResult>& frontier,
                        const std::vector<std::string>& item_ids);
std::vector<FrontierResult> read_frontier_csv(const std::string& path,
                                              const std::vector<std::string>& item_ids);

// --- ground truth (`item_id,viewpoint_id,grade`) ----------------------------
// Viewpoints are ordered by first appearance; absent cells default to 0.
GroundTruth read_truth_csv(const std::string& path,
                           const std::vector<std::string>& item_ids);
void write_truth_csv(const std::string& path, const GroundTruth& truth,
                     const std::vector<std::string>& item_ids);

// --- evaluation report (`method,viewpoint_id,k,ndcg` + mean rows) -----------
void write_report_csv(const std::string& path, const EvalReport& report,
                      const std::vector<std::string>& viewpoint_labels);

// --- baseline dump JSON ------------------------------------------------------
struct BaselineDump {
  std::string model;  // "bt" or "crowdbt"
  Eigen::VectorXd scores;
  std::optional<Eigen::VectorXd> reliabilities;
};
std::string serialize_baseline(const BaselineDump& dump);
BaselineDump parse_baseline(const std::string& text);
BaselineDump read_baseline_file(const std::string& path);
void write_baseline_file(const std::string& path, const BaselineDump& dump);

// --- planted ground truth from `synth` ---------------------------------------
std::string serialize_planted(const Eigen::MatrixXd& embeddings,
                              const Eigen::MatrixXd& criteria);

}  // namespace priomap
