#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "lore/baselines.hpp"
#include "lore/blackbox.hpp"
#include "lore/dataset.hpp"
#include "lore/error.hpp"
#include "lore/explanation.hpp"
#include "lore/harness.hpp"

namespace {

using namespace lore;

struct CommonOpts {
  std::string data_path;
  std::string schema_path;
  std::string blackbox = "builtin:ensemble";
  std::string distance = "neuclid";
  std::string instances = "0";
  std::string output;
  std::string format = "text";
  std::string distribution_split = "test";
  std::uint64_t seed = 42;
  double train_frac = 0.8;
  std::size_t neighborhood_size = 1000;
  int generations = 10;
  double pc = 0.5;
  double pm = 0.2;
  int min_leaf = 2;
  int max_depth = -1;
  std::size_t crn_k = 100;
  bool dump_tree = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--data", opts.data_path, "dataset CSV (RFC-4180, header row)")
      ->required();
  cmd->add_option("--schema", opts.schema_path, "schema sidecar JSON")->required();
  cmd->add_option("--blackbox", opts.blackbox,
                  "builtin:ensemble | cmd:<command> | http:<url>");
  cmd->add_option("--distance", opts.distance, "neuclid | cosine | minmax");
  cmd->add_option("--instances", opts.instances,
                  "test instances to explain: i, i-j, comma list, or 'all'");
  cmd->add_option("--output", opts.output, "output file (default stdout)");
  cmd->add_option("--format", opts.format, "text | structured");
  cmd->add_option("--seed", opts.seed, "master seed");
  cmd->add_option("--train-frac", opts.train_frac, "train split fraction");
  cmd->add_option("--distribution-split", opts.distribution_split,
                  "split feeding the empirical distributions: test | train");
  cmd->add_option("--neighborhood-size", opts.neighborhood_size, "GA population N");
  cmd->add_option("--generations", opts.generations, "GA generations G");
  cmd->add_option("--pc", opts.pc, "crossover probability");
  cmd->add_option("--pm", opts.pm, "mutation probability (per individual)");
  cmd->add_option("--min-leaf", opts.min_leaf, "surrogate min instances per leaf");
  cmd->add_option("--max-depth", opts.max_depth, "surrogate depth cap (-1 = none)");
  cmd->add_option("--crn-k", opts.crn_k, "k for the crn baseline");
  cmd->add_flag("--dump-tree", opts.dump_tree, "append an indented surrogate dump (explain)");
}

struct Session {
  Dataset train;
  Dataset test;
  FeatureSchema schema;  // with empirical distributions
  std::unique_ptr<BlackBox> bb;
  ExplainParams params;
  std::size_t crn_k = 100;
};

Session open_session(const CommonOpts& opts) {
  Session s;
  Dataset full = impute_missing(load_dataset(opts.data_path, opts.schema_path));
  std::tie(s.train, s.test) = train_test_split(full, opts.train_frac, opts.seed);
  const Dataset& reference = opts.distribution_split == "train" ? s.train : s.test;
  s.schema = build_empirical_distributions(reference);
  s.test.schema = s.schema;
  s.bb = make_blackbox(opts.blackbox, s.train, opts.seed);
  s.params.ga = GAParams{opts.neighborhood_size, opts.generations, opts.pc, opts.pm,
                         opts.seed};
  s.params.distance_kind = parse_distance_kind(opts.distance);
  s.params.tree = TreeParams{opts.min_leaf, opts.max_depth, 0, nullptr};
  s.crn_k = opts.crn_k;
  return s;
}

std::vector<std::size_t> select_instances(const std::string& spec, std::size_t n) {
  std::vector<std::size_t> out;
  if (spec == "all") {
    for (std::size_t i = 0; i < n; ++i) out.push_back(i);
    return out;
  }
  std::stringstream ss(spec);
  std::string token;
  while (std::getline(ss, token, ',')) {
    const auto dash = token.find('-');
    try {
      if (dash == std::string::npos) {
        out.push_back(std::stoul(token));
      } else {
        const std::size_t lo = std::stoul(token.substr(0, dash));
        const std::size_t hi = std::stoul(token.substr(dash + 1));
        for (std::size_t i = lo; i <= hi; ++i) out.push_back(i);
      }
    } catch (const std::exception&) {
      throw UsageError("bad --instances token '" + token + "'");
    }
  }
  if (out.empty()) throw UsageError("--instances selected nothing");
  for (auto i : out)
    if (i >= n)
      throw UsageError("instance index " + std::to_string(i) +
                       " out of range (test set has " + std::to_string(n) + ")");
  return out;
}

void emit(const std::string& text, const std::string& output) {
  if (output.empty() || output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(output, std::ios::binary);
  if (!out) throw UsageError("cannot open output file: " + output);
  out << text;
}

int cmd_explain(const CommonOpts& opts) {
  Session s = open_session(opts);
  const auto indices = select_instances(opts.instances, s.test.rows.size());

  std::ostringstream text;
  auto docs = nlohmann::ordered_json::array();
  for (std::size_t idx : indices) {
    const Instance& x = s.test.rows[idx];
    ExplainParams params = s.params;
    params.ga.seed = Rng::derive(opts.seed, idx).raw();
    Neighborhood nbh = build_neighborhood(x, *s.bb, params.ga, s.schema,
                                          params.distance_kind);
    const int x_label = s.bb->predict_one(x);
    DecisionTree tree =
        DecisionTree::build(s.schema, nbh.instances, nbh.labels, params.tree);
    Explanation e = explain_from_tree(x, x_label, nbh, tree, s.schema, params);

    if (opts.format == "structured") {
      auto doc = explanation_to_json(s.schema, e);
      doc["instance_index"] = idx;
      docs.push_back(std::move(doc));
    } else {
      text << "=== instance " << idx << " ===\n" << explanation_to_text(s.schema, e);
      if (opts.dump_tree) text << "--- surrogate ---\n" << tree.dump(s.schema);
    }
  }
  if (opts.format == "structured")
    emit(docs.dump(2) + "\n", opts.output);
  else
    emit(text.str(), opts.output);
  return 0;
}

int cmd_evaluate(const CommonOpts& opts, const std::string& method) {
  Session s = open_session(opts);
  const auto indices = select_instances(opts.instances, s.test.rows.size());
  HarnessConfig config{s.params, parse_generator_kind(method), s.crn_k};
  EvalReport report = evaluate(s.test, indices, *s.bb, s.schema, config);
  std::cout << report_to_table({report});
  if (!opts.output.empty()) emit(report_to_json(report).dump(2) + "\n", opts.output);
  return 0;
}

int cmd_compare(const CommonOpts& opts, const std::vector<std::string>& methods) {
  Session s = open_session(opts);
  const auto indices = select_instances(opts.instances, s.test.rows.size());
  std::vector<GeneratorKind> kinds;
  for (const auto& m : methods) kinds.push_back(parse_generator_kind(m));
  HarnessConfig base{s.params, GeneratorKind::Lore, s.crn_k};
  auto reports = compare(s.test, indices, *s.bb, s.schema, base, kinds);
  std::cout << report_to_table(reports);
  if (!opts.output.empty()) {
    auto doc = nlohmann::ordered_json::array();
    for (const auto& r : reports) doc.push_back(report_to_json(r));
    emit(doc.dump(2) + "\n", opts.output);
  }
  return 0;
}

int cmd_neighborhood(const CommonOpts& opts, const std::string& method) {
  Session s = open_session(opts);
  const auto indices = select_instances(opts.instances, s.test.rows.size());
  if (indices.size() != 1)
    throw UsageError("neighborhood dumps exactly one instance; pass a single index");
  const std::size_t idx = indices.front();
  const Instance& x = s.test.rows[idx];
  const std::uint64_t instance_seed = Rng::derive(opts.seed, idx).raw();

  Neighborhood nbh;
  const auto kind = parse_generator_kind(method);
  GAParams ga = s.params.ga;
  ga.seed = instance_seed;
  switch (kind) {
    case GeneratorKind::Lore:
      nbh = build_neighborhood(x, *s.bb, ga, s.schema, s.params.distance_kind);
      break;
    case GeneratorKind::Crn:
      nbh = gen_crn(x, s.test, *s.bb, s.crn_k, s.schema, s.params.distance_kind);
      break;
    case GeneratorKind::Rnd:
      nbh = gen_rnd(x, s.test, *s.bb, s.schema, ga.population, instance_seed,
                    s.params.distance_kind, s.crn_k);
      break;
    case GeneratorKind::Ros:
      nbh = gen_ros(x, s.test, *s.bb, s.schema, ga.population, instance_seed,
                    s.params.distance_kind, s.crn_k);
      break;
    case GeneratorKind::Global:
      nbh = gen_global(s.test, *s.bb);
      break;
  }

  std::ostringstream csv;
  for (std::size_t i = 0; i < s.schema.arity(); ++i) {
    if (i) csv << ",";
    csv << s.schema.features[i].name;
  }
  csv << "," << s.schema.target_name << "\n";
  for (std::size_t r = 0; r < nbh.instances.size(); ++r) {
    for (std::size_t i = 0; i < s.schema.arity(); ++i) {
      if (i) csv << ",";
      const auto& v = nbh.instances[r][i];
      csv << (s.schema.features[i].kind == FeatureKind::Categorical
                  ? v.cat
                  : format_number(v.num));
    }
    csv << "," << s.schema.labels[static_cast<std::size_t>(nbh.labels[r])] << "\n";
  }
  emit(csv.str(), opts.output);

  const int x_label = s.bb->predict_one(x);
  const auto stats = nbh.stats(s.schema, x, x_label, s.params.distance_kind);
  nlohmann::ordered_json block;
  block["instance_index"] = idx;
  block["method"] = generator_kind_name(kind);
  block["size"] = stats.size;
  block["same_label_count"] = stats.same_label_count;
  block["different_label_count"] = stats.size - stats.same_label_count;
  block["mean_distance_to_x"] = stats.mean_distance_to_x;
  block["truncated"] = nbh.truncated;
  std::ostream& meta = opts.output.empty() ? std::cerr : std::cout;
  meta << block.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"local rule-based explanations for black-box classifiers"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string method = "lore";
  std::vector<std::string> methods{"lore"};

  auto* explain_cmd = app.add_subcommand("explain", "explain selected test instances");
  add_common(explain_cmd, opts);

  auto* evaluate_cmd = app.add_subcommand("evaluate", "score explanations against b");
  add_common(evaluate_cmd, opts);
  evaluate_cmd->add_option("--method", method, "lore | crn | rnd | ros | global");

  auto* compare_cmd = app.add_subcommand("compare", "side-by-side method evaluation");
  add_common(compare_cmd, opts);
  compare_cmd->add_option("--method", methods, "methods to compare, in row order");

  auto* neigh_cmd = app.add_subcommand("neighborhood", "dump a generated neighborhood");
  add_common(neigh_cmd, opts);
  neigh_cmd->add_option("--method", method, "lore | crn | rnd | ros | global");

  try {
    app.parse(argc, argv);
    if (explain_cmd->parsed()) return cmd_explain(opts);
    if (evaluate_cmd->parsed()) return cmd_evaluate(opts, method);
    if (compare_cmd->parsed()) return cmd_compare(opts, methods);
    if (neigh_cmd->parsed()) return cmd_neighborhood(opts, method);
    return 1;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const lore::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const lore::ProtocolError& e) {
    std::cerr << "black-box protocol error: " << e.what() << "\n";
    return 3;
  } catch (const lore::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
