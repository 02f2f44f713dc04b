#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "priomap/baselines.hpp"
#include "priomap/core.hpp"
#include "priomap/frontier.hpp"
#include "priomap/io.hpp"
#include "priomap/metrics.hpp"
#include "priomap/optimizer.hpp"
#include "priomap/svg.hpp"
#include "priomap/synth.hpp"

namespace {

using namespace priomap;

Dataset load_dataset(const std::string& input, const std::string& items) {
  const std::vector<RawComparison> rows = read_comparisons_csv(input);
  if (items.empty()) return validate_dataset(rows);
  return validate_dataset(rows, read_items_csv(items));
}

struct FitArgs {
  std::string input, items, out, log;
  int dim = 2;
  double alpha = 0.1;
  int iters = 2000;
  double lr = 0.01;
  std::uint64_t seed = 0;
  double tol = 1e-7;
  int batch = 0;
};

int run_fit(const FitArgs& a) {
  const Dataset data = load_dataset(a.input, a.items);
  TrainConfig config;
  config.d = a.dim;
  config.alpha = a.alpha;
  config.max_iters = a.iters;
  config.learning_rate = a.lr;
  config.seed = a.seed;
  config.convergence_tol = a.tol;
  if (a.batch > 0) {
    config.batch_mode = BatchMode::kMinibatch;
    config.batch_size = a.batch;
  }
  const FitResult result = fit(data, config);
  write_model_file(a.out, result.map);
  if (!a.log.empty()) write_train_log_csv(a.log, result.history);
  const LossBreakdown last = result.history.back();
  std::cout << "fit: n=" << data.n_items << " m=" << data.n_evaluators
            << " c=" << data.total_comparisons() << " d=" << config.d
            << " epochs=" << result.history.size() - 1
            << " objective=" << format_double(last.objective) << "\n";
  return 0;
}

struct FrontierArgs {
  std::string model, out;
  double tol = 1e-9;
};

int run_frontier(const FrontierArgs& a) {
  const PriorityMap map = read_model_file(a.model);
  FrontierConfig config;
  config.frontier_tolerance = a.tol;
  const std::vector<FrontierResult> results = detect_frontier(map.embeddings, config);
  write_frontier_csv(a.out, results, map.item_ids);
  int flagged = 0;
  for (const FrontierResult& f : results) flagged += f.is_frontier;
  std::cout << "frontier: " << flagged << " of " << results.size()
            << " items on the frontier\n";
  return 0;
}

struct RankArgs {
  std::string model;
  int top = 10;
};

int run_rank(const RankArgs& a) {
  const PriorityMap map = read_model_file(a.model);
  const std::vector<int> order = rank_by_frontier_score(map);
  const Eigen::VectorXd scores = frontier_scores(map);
  int top = a.top;
  if (top <= 0 || top > static_cast<int>(order.size()))
    top = static_cast<int>(order.size());
  std::cout << "rank,item_id,score\n";
  for (int r = 0; r < top; ++r) {
    const int i = order[r];
    std::cout << r + 1 << ',' << csv_escape(map.item_ids[i]) << ','
              << format_double(scores(i)) << "\n";
  }
  return 0;
}

struct BaselineArgs {
  std::string method, input, items, out;
  double lambda = 0.01;
  int iters = 2000;
  double lr = 1.0;
};

int run_baseline(const BaselineArgs& a) {
  const Dataset data = load_dataset(a.input, a.items);
  TrainConfig config = baseline_defaults();
  config.max_iters = a.iters;
  config.learning_rate = a.lr;
  BaselineDump dump;
  if (a.method == "bt") {
    const BtModel model = fit_bt(data, a.lambda, config);
    dump.model = "bt";
    dump.scores = model.scores;
  } else {
    const CrowdBtModel model = fit_crowdbt(data, a.lambda, config);
    dump.model = "crowdbt";
    dump.scores = model.scores;
    dump.reliabilities = model.reliabilities;
  }
  write_baseline_file(a.out, dump);
  std::cout << "baseline: " << dump.model << " fitted on n=" << data.n_items
            << " c=" << data.total_comparisons() << "\n";
  return 0;
}

struct EvalArgs {
  std::string model, truth, out;
  std::vector<std::string> baselines;
  std::vector<int> ks{5, 10};
};

int run_eval(const EvalArgs& a) {
  const PriorityMap map = read_model_file(a.model);
  const GroundTruth truth = read_truth_csv(a.truth, map.item_ids);

  std::vector<std::pair<std::string, MethodInput>> methods;
  methods.emplace_back("priomap", map.embeddings);
  for (const std::string& path : a.baselines) {
    const BaselineDump dump = read_baseline_file(path);
    if (dump.scores.size() != map.n_items())
      throw ShapeMismatch(path + ": baseline scores do not match the model items");
    std::string name = dump.model;
    for (const auto& [existing, unused] : methods) {
      if (existing == name) {
        name += "#2";
        break;
      }
    }
    methods.emplace_back(name, Eigen::VectorXd(dump.scores));
  }

  const EvalReport report = evaluate_methods(methods, truth, a.ks);
  write_report_csv(a.out, report, truth.viewpoint_labels);
  for (const EvalSummary& s : report.summary) {
    std::cout << "eval: " << s.method << " mean nDCG@" << s.k << " = "
              << format_double(s.mean_ndcg) << "\n";
  }
  return 0;
}

struct SynthArgs {
  std::string out, truth_out, truth_csv;
  int items = 80;
  int evaluators = 200;
  long labels = 64000;
  int dim = 2;
  double noise = 0.0;
  std::uint64_t seed = 0;
};

int run_synth(const SynthArgs& a) {
  SynthConfig config;
  config.n_items = a.items;
  config.n_evaluators = a.evaluators;
  config.n_labels = a.labels;
  config.d_true = a.dim;
  config.noise = a.noise;
  config.seed = a.seed;
  const SyntheticData synth = generate_synthetic(config);
  write_comparisons_csv(a.out, synth.dataset);
  if (!a.truth_out.empty())
    write_text_file(a.truth_out,
                    serialize_planted(synth.planted_embeddings, synth.planted_criteria));
  if (!a.truth_csv.empty()) {
    // Planted coordinates double as per-axis ground-truth grades.
    GroundTruth truth;
    truth.priorities = synth.planted_embeddings;
    for (int l = 0; l < a.dim; ++l)
      truth.viewpoint_labels.push_back("axis" + std::to_string(l));
    write_truth_csv(a.truth_csv, truth, synth.dataset.item_ids);
  }
  std::cout << "synth: n=" << a.items << " m=" << a.evaluators << " c=" << a.labels
            << " noise=" << format_double(a.noise) << " -> " << a.out << "\n";
  return 0;
}

struct SubsampleArgs {
  std::string input, out;
  int evaluators = 0;
  long labels = 0;
  std::uint64_t seed = 0;
};

int run_subsample(const SubsampleArgs& a) {
  const std::vector<RawComparison> rows = read_comparisons_csv(a.input);
  const Dataset data = validate_dataset(rows);
  Dataset sub;
  if (a.evaluators > 0) {
    sub = subsample_evaluators(data, a.evaluators, a.seed);
  } else {
    sub = subsample_labels(data, a.labels, a.seed);
  }
  write_comparisons_csv(a.out, sub);
  std::cout << "subsample: m=" << sub.n_evaluators << " c=" << sub.total_comparisons()
            << " -> " << a.out << "\n";
  return 0;
}

struct PlotArgs {
  std::string model, frontier, out;
  bool labels = false;
  int width = 640;
  int height = 640;
};

int run_plot(const PlotArgs& a) {
  const PriorityMap map = read_model_file(a.model);
  std::vector<FrontierResult> results;
  if (a.frontier.empty()) {
    results = detect_frontier(map.embeddings);
  } else {
    results = read_frontier_csv(a.frontier, map.item_ids);
  }
  SvgOptions options;
  options.show_labels = a.labels;
  options.width = a.width;
  options.height = a.height;
  write_text_file(a.out, render_priority_map_svg(map, results, options));
  std::cout << "plot: wrote " << a.out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"priomap: multi-criteria priority maps from pairwise comparisons"};
  app.require_subcommand(1);

  FitArgs fit_args;
  CLI::App* fit_cmd = app.add_subcommand("fit", "Fit a priority map");
  fit_cmd->add_option("--input", fit_args.input, "Comparison CSV")->required();
  fit_cmd->add_option("--items", fit_args.items, "Item roster CSV (id,label)");
  fit_cmd->add_option("--dim", fit_args.dim, "Embedding dimension");
  fit_cmd->add_option("--alpha", fit_args.alpha, "Dominance-loss weight");
  fit_cmd->add_option("--iters", fit_args.iters, "Maximum epochs");
  fit_cmd->add_option("--lr", fit_args.lr, "Learning rate");
  fit_cmd->add_option("--seed", fit_args.seed, "RNG seed");
  fit_cmd->add_option("--tol", fit_args.tol, "Convergence tolerance");
  fit_cmd->add_option("--batch-size", fit_args.batch, "Minibatch size (0 = full batch)");
  fit_cmd->add_option("--out", fit_args.out, "Model JSON output")->required();
  fit_cmd->add_option("--log", fit_args.log, "Training-log CSV output");

  FrontierArgs frontier_args;
  CLI::App* frontier_cmd = app.add_subcommand("frontier", "Detect frontier items");
  frontier_cmd->add_option("--model", frontier_args.model, "Model JSON")->required();
  frontier_cmd->add_option("--tol", frontier_args.tol, "Frontier margin tolerance");
  frontier_cmd->add_option("--out", frontier_args.out, "Frontier CSV output")->required();

  RankArgs rank_args;
  CLI::App* rank_cmd = app.add_subcommand("rank", "Rank items by frontier score");
  rank_cmd->add_option("--model", rank_args.model, "Model JSON")->required();
  rank_cmd->add_option("--top", rank_args.top, "Rows to print (0 = all)");

  BaselineArgs baseline_args;
  CLI::App* baseline_cmd = app.add_subcommand("baseline", "Fit a scalar baseline");
  baseline_cmd->add_option("--method", baseline_args.method, "bt or crowdbt")
      ->required()
      ->check(CLI::IsMember({"bt", "crowdbt"}));
  baseline_cmd->add_option("--lambda", baseline_args.lambda, "L2 regularization");
  baseline_cmd->add_option("--input", baseline_args.input, "Comparison CSV")->required();
  baseline_cmd->add_option("--items", baseline_args.items, "Item roster CSV");
  baseline_cmd->add_option("--iters", baseline_args.iters, "Gradient steps");
  baseline_cmd->add_option("--lr", baseline_args.lr, "Learning rate");
  baseline_cmd->add_option("--out", baseline_args.out, "Baseline JSON output")->required();

  EvalArgs eval_args;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Score methods against ground truth");
  eval_cmd->add_option("--model", eval_args.model, "Model JSON")->required();
  eval_cmd->add_option("--baselines", eval_args.baselines, "Baseline JSON files")
      ->delimiter(',');
  eval_cmd->add_option("--truth", eval_args.truth, "Ground-truth CSV")->required();
  eval_cmd->add_option("--k", eval_args.ks, "nDCG cutoffs")->delimiter(',');
  eval_cmd->add_option("--out", eval_args.out, "Report CSV output")->required();

  SynthArgs synth_args;
  CLI::App* synth_cmd = app.add_subcommand("synth", "Generate synthetic comparisons");
  synth_cmd->add_option("--items", synth_args.items, "Number of items");
  synth_cmd->add_option("--evaluators", synth_args.evaluators, "Number of evaluators");
  synth_cmd->add_option("--labels", synth_args.labels, "Number of comparisons");
  synth_cmd->add_option("--dim", synth_args.dim, "Planted dimension");
  synth_cmd->add_option("--noise", synth_args.noise, "Label flip probability");
  synth_cmd->add_option("--seed", synth_args.seed, "RNG seed");
  synth_cmd->add_option("--out", synth_args.out, "Comparison CSV output")->required();
  synth_cmd->add_option("--truth-out", synth_args.truth_out, "Planted geometry JSON");
  synth_cmd->add_option("--truth-csv", synth_args.truth_csv,
                        "Per-axis ground-truth grades CSV");

  SubsampleArgs subsample_args;
  CLI::App* subsample_cmd = app.add_subcommand("subsample", "Subsample a dataset");
  subsample_cmd->add_option("--input", subsample_args.input, "Comparison CSV")->required();
  CLI::Option* sub_q =
      subsample_cmd->add_option("--evaluators", subsample_args.evaluators,
                                "Keep q evaluators with all their labels");
  CLI::Option* sub_r =
      subsample_cmd->add_option("--labels", subsample_args.labels, "Keep r labels");
  sub_q->excludes(sub_r);
  subsample_cmd->add_option("--seed", subsample_args.seed, "RNG seed");
  subsample_cmd->add_option("--out", subsample_args.out, "Output CSV")->required();

  PlotArgs plot_args;
  CLI::App* plot_cmd = app.add_subcommand("plot", "Render the priority map as SVG");
  plot_cmd->add_option("--model", plot_args.model, "Model JSON")->required();
  plot_cmd->add_option("--frontier", plot_args.frontier,
                       "Frontier CSV (recomputed when omitted)");
  plot_cmd->add_option("--out", plot_args.out, "SVG output")->required();
  plot_cmd->add_flag("--labels", plot_args.labels, "Draw item labels");
  plot_cmd->add_option("--width", plot_args.width, "Panel width in pixels");
  plot_cmd->add_option("--height", plot_args.height, "Panel height in pixels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (fit_cmd->parsed()) return run_fit(fit_args);
    if (frontier_cmd->parsed()) return run_frontier(frontier_args);
    if (rank_cmd->parsed()) return run_rank(rank_args);
    if (baseline_cmd->parsed()) return run_baseline(baseline_args);
    if (eval_cmd->parsed()) return run_eval(eval_args);
    if (synth_cmd->parsed()) return run_synth(synth_args);
    if (subsample_cmd->parsed()) {
      if (subsample_args.evaluators <= 0 && subsample_args.labels <= 0)
        throw InvalidConfig("pass --evaluators or --labels");
      return run_subsample(subsample_args);
    }
    if (plot_cmd->parsed()) return run_plot(plot_args);
  } catch (const NonFinite& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const SolverFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
