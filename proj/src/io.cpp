#include "priomap/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"

namespace priomap {

using nlohmann::json;

// ---------------------------------------------------------------------------
// primitives

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;

  const auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
  };
  const auto end_record = [&] {
    end_field();
    // Tolerate blank lines (including a trailing newline).
    if (!(row.size() == 1 && row[0].empty())) rows.push_back(std::move(row));
    row.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\n') {
      end_record();
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  if (in_quotes) throw SchemaError("unterminated quoted CSV field");
  if (!field.empty() || !row.empty()) end_record();
  return rows;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text, const std::string& where) {
  double value{};
  const char* first = text.data();
  const char* last = first + text.size();
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last)
    throw SchemaError(where + ": not a number: '" + text + "'");
  return value;
}

long parse_long(const std::string& text, const std::string& where) {
  long value{};
  const char* first = text.data();
  const char* last = first + text.size();
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last)
    throw SchemaError(where + ": not an integer: '" + text + "'");
  return value;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("failed reading " + path);
  std::string text = buffer.str();
  if (text.rfind("\xEF\xBB\xBF", 0) == 0) text.erase(0, 3);
  return text;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing " + path);
}

namespace {

void expect_header(const std::vector<std::vector<std::string>>& rows,
                   const std::vector<std::string>& want, const std::string& path) {
  if (rows.empty()) throw SchemaError(path + ": missing header row");
  if (rows[0] != want) {
    std::string msg = path + ": expected header ";
    for (std::size_t i = 0; i < want.size(); ++i)
      msg += (i ? "," : "") + want[i];
    throw SchemaError(msg);
  }
}

void expect_width(const std::vector<std::string>& row, std::size_t want,
                  std::size_t line, const std::string& path) {
  if (row.size() != want)
    throw SchemaError(path + ": row " + std::to_string(line) + " has " +
                      std::to_string(row.size()) + " fields, expected " +
                      std::to_string(want));
}

std::unordered_map<std::string, int> index_ids(const std::vector<std::string>& ids,
                                               const std::string& what) {
  std::unordered_map<std::string, int> index;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!index.emplace(ids[i], static_cast<int>(i)).second)
      throw SchemaError(what + ": duplicate id '" + ids[i] + "'");
  }
  return index;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path + ": expected a number");
  return j.get<double>();
}

Eigen::MatrixXd matrix_from_json(const json& j, const std::string& path,
                                 Eigen::Index expect_rows, Eigen::Index expect_cols) {
  if (!j.is_array()) throw SchemaError(path + ": expected an array of rows");
  if (expect_rows >= 0 && Eigen::Index(j.size()) != expect_rows)
    throw SchemaError(path + ": expected " + std::to_string(expect_rows) + " rows");
  const Eigen::Index rows = j.size();
  Eigen::Index cols = expect_cols;
  if (cols < 0) cols = rows > 0 && j[0].is_array() ? Eigen::Index(j[0].size()) : 0;
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j[i];
    const std::string row_path = path + "[" + std::to_string(i) + "]";
    if (!row.is_array() || Eigen::Index(row.size()) != cols)
      throw SchemaError(row_path + ": expected " + std::to_string(cols) + " entries");
    for (Eigen::Index l = 0; l < cols; ++l)
      m(i, l) = number_at(row[l], row_path + "[" + std::to_string(l) + "]");
  }
  return m;
}

Eigen::VectorXd vector_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path + ": expected an array");
  Eigen::VectorXd v(j.size());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v(i) = number_at(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

std::vector<std::string> strings_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path + ": expected an array");
  std::vector<std::string> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string())
      throw SchemaError(path + "[" + std::to_string(i) + "]: expected a string");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

const json& require(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw SchemaError(std::string("missing field: ") + key);
  return *it;
}

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw SchemaError("malformed JSON document");
  return j;
}

}  // namespace

// ---------------------------------------------------------------------------
// comparisons and item roster

std::vector<RawComparison> read_comparisons_csv(const std::string& path) {
  const auto rows = parse_csv(read_text_file(path));
  expect_header(rows, {"evaluator_id", "winner_id", "loser_id"}, path);
  std::vector<RawComparison> out;
  out.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    expect_width(rows[r], 3, r + 1, path);
    out.push_back({rows[r][0], rows[r][1], rows[r][2]});
  }
  return out;
}

void write_comparisons_csv(const std::string& path, const Dataset& data) {
  std::string text = "evaluator_id,winner_id,loser_id\n";
  for (const Comparison& c : data.comparisons) {
    text += csv_escape(data.evaluator_ids[c.evaluator]);
    text += ',';
    text += csv_escape(data.item_ids[c.winner]);
    text += ',';
    text += csv_escape(data.item_ids[c.loser]);
    text += '\n';
  }
  write_text_file(path, text);
}

std::vector<std::pair<std::string, std::string>> read_items_csv(const std::string& path) {
  const auto rows = parse_csv(read_text_file(path));
  expect_header(rows, {"item_id", "label"}, path);
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    expect_width(rows[r], 2, r + 1, path);
    out.emplace_back(rows[r][0], rows[r][1]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// model JSON

std::string serialize_model(const PriorityMap& map) {
  json j;
  j["d"] = map.d;
  j["alpha"] = map.alpha;
  j["x"] = matrix_to_json(map.embeddings);
  j["v"] = matrix_to_json(map.best_viewpoints);
  j["w"] = matrix_to_json(map.evaluator_criteria);
  j["item_ids"] = map.item_ids;
  j["evaluator_ids"] = map.evaluator_ids;
  return j.dump(2) + "\n";
}

PriorityMap parse_model(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw SchemaError("model: expected a JSON object");

  PriorityMap map;
  const json& d = require(j, "d");
  if (!d.is_number_integer() || d.get<long>() < 1)
    throw SchemaError("d: expected a positive integer");
  map.d = d.get<int>();
  map.alpha = number_at(require(j, "alpha"), "alpha");
  map.item_ids = strings_from_json(require(j, "item_ids"), "item_ids");
  map.evaluator_ids = strings_from_json(require(j, "evaluator_ids"), "evaluator_ids");
  if (map.item_ids.empty()) throw SchemaError("item_ids: must be non-empty");
  index_ids(map.item_ids, "item_ids");
  index_ids(map.evaluator_ids, "evaluator_ids");

  const auto n = Eigen::Index(map.item_ids.size());
  const auto m = Eigen::Index(map.evaluator_ids.size());
  map.embeddings = matrix_from_json(require(j, "x"), "x", n, map.d);
  map.best_viewpoints = matrix_from_json(require(j, "v"), "v", n, map.d);
  map.evaluator_criteria = matrix_from_json(require(j, "w"), "w", m, map.d);
  if (!std::isfinite(map.alpha) || map.alpha < 0.0)
    throw SchemaError("alpha: expected a finite non-negative number");
  check_map(map, 1e-6);
  return map;
}

PriorityMap read_model_file(const std::string& path) {
  return parse_model(read_text_file(path));
}

void write_model_file(const std::string& path, const PriorityMap& map) {
  write_text_file(path, serialize_model(map));
}

// ---------------------------------------------------------------------------
// CSV reports

void write_train_log_csv(const std::string& path,
                         const std::vector<LossBreakdown>& history) {
  std::string text = "epoch,l_c,l_f,objective\n";
  for (std::size_t t = 0; t < history.size(); ++t) {
    text += std::to_string(t);
    text += ',';
    text += format_double(history[t].consistency);
    text += ',';
    text += format_double(history[t].frontier);
    text += ',';
    text += format_double(history[t].objective);
    text += '\n';
  }
  write_text_file(path, text);
}

void write_frontier_csv(const std::string& path,
                        const std::vector<FrontierResult>& frontier,
                        const std::vector<std::string>& item_ids) {
  if (frontier.empty()) throw DegenerateInput("no frontier results to write");
  const auto d = frontier.front().certificate.size();
  std::string text = "item_id,margin,is_frontier";
  for (Eigen::Index l = 0; l < d; ++l) text += ",certificate_" + std::to_string(l);
  text += '\n';
  for (const FrontierResult& f : frontier) {
    text += csv_escape(item_ids.at(f.item));
    text += ',';
    text += format_double(f.margin);
    text += ',';
    text += f.is_frontier ? "true" : "false";
    for (Eigen::Index l = 0; l < d; ++l) {
      text += ',';
      text += format_double(f.certificate(l));
    }
    text += '\n';
  }
  write_text_file(path, text);
}

std::vector<FrontierResult> read_frontier_csv(const std::string& path,
                                              const std::vector<std::string>& item_ids) {
  const auto rows = parse_csv(read_text_file(path));
  if (rows.empty()) throw SchemaError(path + ": missing header row");
  const auto& header = rows[0];
  if (header.size() < 4 || header[0] != "item_id" || header[1] != "margin" ||
      header[2] != "is_frontier")
    throw SchemaError(path + ": expected header item_id,margin,is_frontier,certificate_*");
  const int d = static_cast<int>(header.size()) - 3;
  for (int l = 0; l < d; ++l) {
    if (header[3 + l] != "certificate_" + std::to_string(l))
      throw SchemaError(path + ": certificate columns must be certificate_0..certificate_" +
                        std::to_string(d - 1));
  }

  const auto index = index_ids(item_ids, path);
  std::vector<FrontierResult> out;
  std::unordered_set<int> seen;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    expect_width(rows[r], header.size(), r + 1, path);
    const auto it = index.find(rows[r][0]);
    if (it == index.end())
      throw UnknownId(path + ": unknown item id '" + rows[r][0] + "'");
    FrontierResult f;
    f.item = it->second;
    if (!seen.insert(f.item).second)
      throw SchemaError(path + ": duplicate row for item '" + rows[r][0] + "'");
    f.margin = parse_double(rows[r][1], path + ": margin");
    if (rows[r][2] == "true") f.is_frontier = true;
    else if (rows[r][2] == "false") f.is_frontier = false;
    else throw SchemaError(path + ": is_frontier must be true or false");
    f.certificate.resize(d);
    for (int l = 0; l < d; ++l)
      f.certificate(l) = parse_double(rows[r][3 + l], path + ": certificate");
    out.push_back(std::move(f));
  }
  if (out.size() != item_ids.size())
    throw SchemaError(path + ": expected one row per item");
  return out;
}

GroundTruth read_truth_csv(const std::string& path,
                           const std::vector<std::string>& item_ids) {
  const auto rows = parse_csv(read_text_file(path));
  expect_header(rows, {"item_id", "viewpoint_id", "grade"}, path);
  const auto index = index_ids(item_ids, path);

  GroundTruth truth;
  std::unordered_map<std::string, int> viewpoints;
  std::vector<std::vector<std::pair<int, double>>> cells;  // per viewpoint
  for (std::size_t r = 1; r < rows.size(); ++r) {
    expect_width(rows[r], 3, r + 1, path);
    const auto it = index.find(rows[r][0]);
    if (it == index.end())
      throw UnknownId(path + ": unknown item id '" + rows[r][0] + "'");
    const auto [vit, fresh] =
        viewpoints.emplace(rows[r][1], static_cast<int>(viewpoints.size()));
    if (fresh) {
      truth.viewpoint_labels.push_back(rows[r][1]);
      cells.emplace_back();
    }
    cells[vit->second].emplace_back(it->second,
                                    parse_double(rows[r][2], path + ": grade"));
  }
  if (viewpoints.empty()) throw SchemaError(path + ": no grade rows");

  truth.priorities = Eigen::MatrixXd::Zero(Eigen::Index(item_ids.size()),
                                           Eigen::Index(cells.size()));
  std::vector<std::unordered_set<int>> filled(cells.size());
  for (std::size_t j = 0; j < cells.size(); ++j) {
    for (const auto& [i, grade] : cells[j]) {
      if (!filled[j].insert(i).second)
        throw SchemaError(path + ": duplicate grade for item '" + item_ids[i] +
                          "', viewpoint '" + truth.viewpoint_labels[j] + "'");
      truth.priorities(i, Eigen::Index(j)) = grade;
    }
  }
  return truth;
}

void write_truth_csv(const std::string& path, const GroundTruth& truth,
                     const std::vector<std::string>& item_ids) {
  if (Eigen::Index(item_ids.size()) != truth.priorities.rows())
    throw ShapeMismatch("item ids must match the ground-truth rows");
  std::string text = "item_id,viewpoint_id,grade\n";
  for (Eigen::Index i = 0; i < truth.priorities.rows(); ++i) {
    for (Eigen::Index j = 0; j < truth.priorities.cols(); ++j) {
      text += csv_escape(item_ids[i]);
      text += ',';
      text += csv_escape(truth.viewpoint_labels.at(j));
      text += ',';
      text += format_double(truth.priorities(i, j));
      text += '\n';
    }
  }
  write_text_file(path, text);
}

void write_report_csv(const std::string& path, const EvalReport& report,
                      const std::vector<std::string>& viewpoint_labels) {
  std::string text = "method,viewpoint_id,k,ndcg\n";
  for (const EvalCell& cell : report.cells) {
    text += csv_escape(cell.method);
    text += ',';
    text += csv_escape(viewpoint_labels.at(cell.viewpoint));
    text += ',';
    text += std::to_string(cell.k);
    text += ',';
    text += format_double(cell.ndcg);
    text += '\n';
  }
  for (const EvalSummary& s : report.summary) {
    text += csv_escape(s.method);
    text += ",mean,";
    text += std::to_string(s.k);
    text += ',';
    text += format_double(s.mean_ndcg);
    text += '\n';
  }
  write_text_file(path, text);
}

// ---------------------------------------------------------------------------
// baseline JSON

std::string serialize_baseline(const BaselineDump& dump) {
  if (dump.model != "bt" && dump.model != "crowdbt")
    throw SchemaError("model: expected 'bt' or 'crowdbt'");
  json j;
  j["model"] = dump.model;
  json scores = json::array();
  for (Eigen::Index i = 0; i < dump.scores.size(); ++i) scores.push_back(dump.scores(i));
  j["scores"] = std::move(scores);
  if (dump.reliabilities) {
    json etas = json::array();
    for (Eigen::Index k = 0; k < dump.reliabilities->size(); ++k)
      etas.push_back((*dump.reliabilities)(k));
    j["reliabilities"] = std::move(etas);
  }
  return j.dump(2) + "\n";
}

BaselineDump parse_baseline(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw SchemaError("baseline: expected a JSON object");
  BaselineDump dump;
  const json& model = require(j, "model");
  if (!model.is_string()) throw SchemaError("model: expected a string");
  dump.model = model.get<std::string>();
  if (dump.model != "bt" && dump.model != "crowdbt")
    throw SchemaError("model: expected 'bt' or 'crowdbt'");
  dump.scores = vector_from_json(require(j, "scores"), "scores");
  if (!dump.scores.allFinite()) throw SchemaError("scores: non-finite entry");
  if (j.contains("reliabilities")) {
    if (dump.model == "bt")
      throw SchemaError("reliabilities: unexpected for model 'bt'");
    Eigen::VectorXd etas = vector_from_json(j.at("reliabilities"), "reliabilities");
    for (Eigen::Index k = 0; k < etas.size(); ++k) {
      if (!(etas(k) >= 0.0 && etas(k) <= 1.0))
        throw SchemaError("reliabilities[" + std::to_string(k) + "]: outside [0, 1]");
    }
    dump.reliabilities = std::move(etas);
  } else if (dump.model == "crowdbt") {
    throw SchemaError("missing field: reliabilities");
  }
  return dump;
}

BaselineDump read_baseline_file(const std::string& path) {
  return parse_baseline(read_text_file(path));
}

void write_baseline_file(const std::string& path, const BaselineDump& dump) {
  write_text_file(path, serialize_baseline(dump));
}

std::string serialize_planted(const Eigen::MatrixXd& embeddings,
                              const Eigen::MatrixXd& criteria) {
  json j;
  j["x"] = matrix_to_json(embeddings);
  j["w"] = matrix_to_json(criteria);
  return j.dump(2) + "\n";
}

}  // namespace priomap
