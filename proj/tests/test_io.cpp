#include <cmath>
#include <filesystem>
#include <limits>

#include "doctest.h"
#include "json.hpp"
#include "priomap/io.hpp"
#include "priomap/rng.hpp"
#include "test_util.hpp"

using namespace priomap;
namespace fs = std::filesystem;

TEST_CASE("parse_csv handles the quoting grammar") {
  const auto rows = parse_csv("a,b,c\n1,2,3\n");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == std::vector<std::string>{"a", "b", "c"});
  CHECK(rows[1] == std::vector<std::string>{"1", "2", "3"});

  const auto quoted = parse_csv("\"a,b\",\"say \"\"hi\"\"\",\"two\nlines\"\n");
  REQUIRE(quoted.size() == 1);
  CHECK(quoted[0][0] == "a,b");
  CHECK(quoted[0][1] == "say \"hi\"");
  CHECK(quoted[0][2] == "two\nlines");

  const auto crlf = parse_csv("x,y\r\n1,2\r\n");
  REQUIRE(crlf.size() == 2);
  CHECK(crlf[1] == std::vector<std::string>{"1", "2"});

  const auto sparse = parse_csv("a,b\n\n\nc,d\n");
  REQUIRE(sparse.size() == 2);
  CHECK(sparse[1] == std::vector<std::string>{"c", "d"});

  // A record may end at EOF without a newline; empty trailing fields survive.
  const auto tail = parse_csv("a,\nb,");
  REQUIRE(tail.size() == 2);
  CHECK(tail[0] == std::vector<std::string>{"a", ""});
  CHECK(tail[1] == std::vector<std::string>{"b", ""});

  CHECK_THROWS_AS(parse_csv("\"oops\n"), SchemaError);
}

TEST_CASE("csv_escape quotes only when needed") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_escape("two\nlines") == "\"two\nlines\"");
  const auto roundtrip = parse_csv(csv_escape("a,\"b\"\nc") + "\n");
  CHECK(roundtrip[0][0] == "a,\"b\"\nc");
}

TEST_CASE("doubles survive text round trips bit-exactly") {
  Rng rng(19);
  for (int t = 0; t < 200; ++t) {
    const double v = std::ldexp(rng.uniform(-1.0, 1.0), rng.index(600) - 300);
    CHECK(parse_double(format_double(v), "t") == v);
  }
  CHECK(parse_double(format_double(0.1), "t") == 0.1);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(parse_double(format_double(inf), "t") == inf);
  CHECK(parse_double(format_double(-inf), "t") == -inf);

  CHECK_THROWS_AS(parse_double("abc", "t"), SchemaError);
  CHECK_THROWS_AS(parse_double("1.5x", "t"), SchemaError);
  CHECK_THROWS_AS(parse_double("", "t"), SchemaError);
  CHECK(parse_long("-42", "t") == -42);
  CHECK_THROWS_AS(parse_long("4.2", "t"), SchemaError);
}

TEST_CASE("text files round trip and strip a BOM") {
  const auto dir = testutil::temp_dir("textio");
  const auto path = (dir / "note.txt").string();
  write_text_file(path, "hello\nworld\n");
  CHECK(read_text_file(path) == "hello\nworld\n");

  write_text_file(path, "\xEF\xBB\xBFitem_id,label\n");
  CHECK(read_text_file(path) == "item_id,label\n");

  CHECK_THROWS_AS(read_text_file((dir / "missing.csv").string()), IoError);
}

TEST_CASE("comparisons CSV round trips awkward ids") {
  Dataset data;
  data.n_items = 3;
  data.n_evaluators = 2;
  data.item_ids = {"plain", "with,comma", "with \"quote\""};
  data.evaluator_ids = {"alice", "bob,jr"};
  data.comparisons = {{0, 0, 1}, {1, 2, 0}, {0, 1, 2}};

  const auto dir = testutil::temp_dir("cmpcsv");
  const auto path = (dir / "labels.csv").string();
  write_comparisons_csv(path, data);
  const Dataset back = validate_dataset(read_comparisons_csv(path));
  CHECK(back == data);

  write_text_file(path, "evaluator,winner,loser\na,b,c\n");
  CHECK_THROWS_AS(read_comparisons_csv(path), SchemaError);
  write_text_file(path, "evaluator_id,winner_id,loser_id\na,b\n");
  CHECK_THROWS_AS(read_comparisons_csv(path), SchemaError);
}

TEST_CASE("items CSV supplies roster order and labels") {
  const auto dir = testutil::temp_dir("itemcsv");
  const auto path = (dir / "items.csv").string();
  write_text_file(path, "item_id,label\nb,Item B\na,\"A, the first\"\n");
  const auto roster = read_items_csv(path);
  REQUIRE(roster.size() == 2);
  CHECK(roster[0] == std::pair<std::string, std::string>("b", "Item B"));
  CHECK(roster[1].second == "A, the first");

  write_text_file(path, "id,label\nb,B\n");
  CHECK_THROWS_AS(read_items_csv(path), SchemaError);
}

TEST_CASE("model JSON round trips bit-exactly") {
  Rng rng(23);
  const PriorityMap map = testutil::random_map(7, 4, 3, rng);
  const std::string text = serialize_model(map);
  const PriorityMap back = parse_model(text);
  CHECK(back.d == map.d);
  CHECK(back.alpha == map.alpha);
  CHECK(testutil::same_matrix(back.embeddings, map.embeddings));
  CHECK(testutil::same_matrix(back.best_viewpoints, map.best_viewpoints));
  CHECK(testutil::same_matrix(back.evaluator_criteria, map.evaluator_criteria));
  CHECK(back.item_ids == map.item_ids);
  CHECK(back.evaluator_ids == map.evaluator_ids);
  CHECK(serialize_model(back) == text);

  const auto dir = testutil::temp_dir("modeljson");
  const auto path = (dir / "model.json").string();
  write_model_file(path, map);
  CHECK(serialize_model(read_model_file(path)) == text);
}

TEST_CASE("parse_model rejects structurally broken documents") {
  Rng rng(29);
  const PriorityMap map = testutil::random_map(4, 2, 2, rng);
  const std::string text = serialize_model(map);

  CHECK_THROWS_AS(parse_model("not json at all"), SchemaError);
  CHECK_THROWS_AS(parse_model("[1,2,3]"), SchemaError);

  using nlohmann::json;
  const json base = json::parse(text);

  json missing = base;
  missing.erase("v");
  CHECK_THROWS_AS(parse_model(missing.dump()), SchemaError);

  json bad_d = base;
  bad_d["d"] = 0;
  CHECK_THROWS_AS(parse_model(bad_d.dump()), SchemaError);

  json negative_x = base;
  negative_x["x"][1][0] = -0.25;
  CHECK_THROWS_AS(parse_model(negative_x.dump()), SchemaError);

  json skewed_v = base;
  skewed_v["v"][0] = {0.9, 0.9};
  CHECK_THROWS_AS(parse_model(skewed_v.dump()), SchemaError);

  json ragged = base;
  ragged["x"][2] = {1.0};
  CHECK_THROWS_AS(parse_model(ragged.dump()), SchemaError);

  json dupes = base;
  dupes["item_ids"][1] = dupes["item_ids"][0];
  CHECK_THROWS_AS(parse_model(dupes.dump()), SchemaError);

  json text_entry = base;
  text_entry["x"][0][0] = "zero";
  CHECK_THROWS_AS(parse_model(text_entry.dump()), SchemaError);

  json bad_alpha = base;
  bad_alpha["alpha"] = -0.5;
  CHECK_THROWS_AS(parse_model(bad_alpha.dump()), SchemaError);

  // A mild norm error is accepted by the relaxed file tolerance.
  json mild = base;
  mild["v"][0] = {1.0000001, 0.0};
  CHECK_NOTHROW(parse_model(mild.dump()));
}

TEST_CASE("frontier CSV round trips") {
  std::vector<FrontierResult> frontier(3);
  frontier[0] = {0, 0.25, Eigen::Vector2d(1.0, 0.0), true};
  frontier[1] = {1, -0.1, Eigen::Vector2d(0.4, 0.4), false};
  frontier[2] = {2, std::numeric_limits<double>::infinity(),
                 Eigen::Vector2d(std::sqrt(0.5), std::sqrt(0.5)), true};
  const std::vector<std::string> ids = {"a", "b,c", "d"};

  const auto dir = testutil::temp_dir("frontcsv");
  const auto path = (dir / "frontier.csv").string();
  write_frontier_csv(path, frontier, ids);
  const auto back = read_frontier_csv(path, ids);
  REQUIRE(back.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(back[i].item == frontier[i].item);
    CHECK(back[i].margin == frontier[i].margin);
    CHECK(back[i].is_frontier == frontier[i].is_frontier);
    CHECK(testutil::same_matrix(back[i].certificate, frontier[i].certificate));
  }

  CHECK_THROWS_AS(write_frontier_csv(path, {}, ids), DegenerateInput);

  const std::string header = "item_id,margin,is_frontier,certificate_0,certificate_1\n";
  write_text_file(path, header + "z,0,true,1,0\n");
  CHECK_THROWS_AS(read_frontier_csv(path, ids), UnknownId);
  write_text_file(path, header + "a,0,true,1,0\na,0,true,1,0\nb,0,true,1,0\n");
  CHECK_THROWS_AS(read_frontier_csv(path, ids), SchemaError);
  write_text_file(path, header + "a,0,true,1,0\n");
  CHECK_THROWS_AS(read_frontier_csv(path, ids), SchemaError);
  write_text_file(path, header + "a,0,yes,1,0\n\"b,c\",0,true,1,0\nd,0,true,1,0\n");
  CHECK_THROWS_AS(read_frontier_csv(path, ids), SchemaError);
  write_text_file(path, "item_id,margin,flag,certificate_0,certificate_1\n");
  CHECK_THROWS_AS(read_frontier_csv(path, ids), SchemaError);
}

TEST_CASE("truth CSV orders viewpoints by first appearance") {
  const std::vector<std::string> ids = {"a", "b", "c"};
  const auto dir = testutil::temp_dir("truthcsv");
  const auto path = (dir / "truth.csv").string();
  write_text_file(path,
                  "item_id,viewpoint_id,grade\n"
                  "b,speed,2\n"
                  "a,cost,5\n"
                  "a,speed,1\n"
                  "c,cost,0.5\n");
  const GroundTruth truth = read_truth_csv(path, ids);
  REQUIRE(truth.viewpoint_labels == std::vector<std::string>{"speed", "cost"});
  CHECK(truth.priorities(0, 0) == 1.0);
  CHECK(truth.priorities(1, 0) == 2.0);
  CHECK(truth.priorities(2, 0) == 0.0);  // absent cell defaults to zero
  CHECK(truth.priorities(0, 1) == 5.0);
  CHECK(truth.priorities(2, 1) == 0.5);

  const auto out = (dir / "back.csv").string();
  write_truth_csv(out, truth, ids);
  const GroundTruth back = read_truth_csv(out, ids);
  CHECK(back.viewpoint_labels == truth.viewpoint_labels);
  CHECK(testutil::same_matrix(back.priorities, truth.priorities));

  write_text_file(path, "item_id,viewpoint_id,grade\na,v,1\na,v,2\n");
  CHECK_THROWS_AS(read_truth_csv(path, ids), SchemaError);
  write_text_file(path, "item_id,viewpoint_id,grade\nz,v,1\n");
  CHECK_THROWS_AS(read_truth_csv(path, ids), UnknownId);
  write_text_file(path, "item_id,viewpoint_id,grade\n");
  CHECK_THROWS_AS(read_truth_csv(path, ids), SchemaError);
}

TEST_CASE("report CSV carries cells and mean rows") {
  EvalReport report;
  report.cells.push_back({"priomap", 0, 5, 0.9});
  report.cells.push_back({"priomap", 1, 5, 0.7});
  report.summary.push_back({"priomap", 5, 0.8});

  const auto dir = testutil::temp_dir("reportcsv");
  const auto path = (dir / "report.csv").string();
  write_report_csv(path, report, {"speed", "cost"});
  const auto rows = parse_csv(read_text_file(path));
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == std::vector<std::string>{"method", "viewpoint_id", "k", "ndcg"});
  CHECK(rows[1] == std::vector<std::string>{"priomap", "speed", "5", "0.9"});
  CHECK(rows[2] == std::vector<std::string>{"priomap", "cost", "5", "0.7"});
  CHECK(rows[3] == std::vector<std::string>{"priomap", "mean", "5", "0.8"});
}

TEST_CASE("train log CSV lists one row per epoch") {
  std::vector<LossBreakdown> history(3);
  history[0] = {2.0, 1.0, 2.1};
  history[1] = {1.0, 0.5, 1.05};
  history[2] = {0.5, 0.25, 0.525};

  const auto dir = testutil::temp_dir("trainlog");
  const auto path = (dir / "log.csv").string();
  write_train_log_csv(path, history);
  const auto rows = parse_csv(read_text_file(path));
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == std::vector<std::string>{"epoch", "l_c", "l_f", "objective"});
  CHECK(rows[2][0] == "1");
  CHECK(parse_double(rows[2][1], "t") == 1.0);
  CHECK(parse_double(rows[3][3], "t") == 0.525);
}

TEST_CASE("baseline JSON round trips") {
  BaselineDump bt;
  bt.model = "bt";
  bt.scores = Eigen::Vector3d(0.5, -0.25, -0.25);
  const BaselineDump bt_back = parse_baseline(serialize_baseline(bt));
  CHECK(bt_back.model == "bt");
  CHECK(testutil::same_matrix(bt_back.scores, bt.scores));
  CHECK_FALSE(bt_back.reliabilities.has_value());

  BaselineDump crowd;
  crowd.model = "crowdbt";
  crowd.scores = Eigen::Vector2d(1.0, -1.0);
  crowd.reliabilities = Eigen::Vector2d(0.9, 0.55);
  const BaselineDump crowd_back = parse_baseline(serialize_baseline(crowd));
  REQUIRE(crowd_back.reliabilities.has_value());
  CHECK(testutil::same_matrix(*crowd_back.reliabilities, *crowd.reliabilities));

  const auto dir = testutil::temp_dir("basejson");
  const auto path = (dir / "baseline.json").string();
  write_baseline_file(path, crowd);
  CHECK(serialize_baseline(read_baseline_file(path)) == serialize_baseline(crowd));

  BaselineDump bogus = bt;
  bogus.model = "elo";
  CHECK_THROWS_AS(serialize_baseline(bogus), SchemaError);

  BaselineDump bt_with_eta = bt;
  bt_with_eta.reliabilities = Eigen::Vector2d(0.5, 0.5);
  CHECK_THROWS_AS(parse_baseline(serialize_baseline(bt_with_eta)), SchemaError);

  BaselineDump bare_crowd = crowd;
  bare_crowd.reliabilities.reset();
  CHECK_THROWS_AS(parse_baseline(serialize_baseline(bare_crowd)), SchemaError);

  BaselineDump wild = crowd;
  wild.reliabilities = Eigen::Vector2d(0.5, 1.5);
  CHECK_THROWS_AS(parse_baseline(serialize_baseline(wild)), SchemaError);

  CHECK_THROWS_AS(parse_baseline("{\"model\":\"bt\",\"scores\":[1,\"a\"]}"), SchemaError);
  CHECK_THROWS_AS(parse_baseline("{\"scores\":[1]}"), SchemaError);
}

TEST_CASE("planted dump exposes both matrices") {
  const Eigen::MatrixXd x = Eigen::MatrixXd::Identity(2, 2);
  const Eigen::MatrixXd w = Eigen::MatrixXd::Ones(1, 2);
  const std::string text = serialize_planted(x, w);
  const auto j = nlohmann::json::parse(text);
  CHECK(j.at("x").size() == 2);
  CHECK(j.at("w").size() == 1);
  CHECK(j.at("x")[0][0] == 1.0);
}
