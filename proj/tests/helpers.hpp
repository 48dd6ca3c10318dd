#pragma once

// Shared fixtures: the worked-example loan tree, small schemas, random
// instance / random tree generators, and temp-file plumbing.

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "lore/dataset.hpp"
#include "lore/rng.hpp"
#include "lore/schema.hpp"
#include "lore/tree.hpp"

namespace testutil {

using namespace lore;

// age in [0,100], job in {clerk, other}, income in [0,20000]; deny/grant.
inline FeatureSchema loan_schema() {
  FeatureSchema schema;
  FeatureSpec age;
  age.name = "age";
  age.kind = FeatureKind::Continuous;
  age.min = 0;
  age.max = 100;
  FeatureSpec job;
  job.name = "job";
  job.kind = FeatureKind::Categorical;
  job.values = {"clerk", "other"};
  FeatureSpec income;
  income.name = "income";
  income.kind = FeatureKind::Continuous;
  income.min = 0;
  income.max = 20000;
  schema.features = {age, job, income};
  schema.target_name = "loan";
  schema.labels = {"deny", "grant"};
  return schema;
}

inline Instance loan_instance(double age, const std::string& job, double income) {
  return {Value::number(age), Value::category(job), Value::number(income)};
}

// The worked-example loan tree:
//   age<=25 ? (job: clerk -> income<=900 ? deny : grant
//                   other -> age<=17 ? deny : grant)
//           : (income<=1500 ? (job: clerk -> deny, other -> grant) : grant)
inline DecisionTree loan_tree() {
  auto deny = [] { return TreeNode::make_leaf(0, 5); };
  auto grant = [] { return TreeNode::make_leaf(1, 5); };

  auto income_node = TreeNode::make_continuous(2, 900.0, deny(), grant());
  auto young_age = TreeNode::make_continuous(0, 17.0, deny(), grant());
  std::vector<std::unique_ptr<TreeNode>> young_job_children;
  young_job_children.push_back(std::move(income_node));
  young_job_children.push_back(std::move(young_age));
  auto young = TreeNode::make_categorical(1, {"clerk", "other"},
                                          std::move(young_job_children));

  std::vector<std::unique_ptr<TreeNode>> old_job_children;
  old_job_children.push_back(deny());
  old_job_children.push_back(grant());
  auto old_job = TreeNode::make_categorical(1, {"clerk", "other"},
                                            std::move(old_job_children));
  auto old_income = TreeNode::make_continuous(2, 1500.0, std::move(old_job), grant());

  return DecisionTree(
      TreeNode::make_continuous(0, 25.0, std::move(young), std::move(old_income)));
}

// Mixed 4-feature schema for property tests; all continuous ranges positive.
inline FeatureSchema mixed_schema() {
  FeatureSchema schema;
  FeatureSpec c1;
  c1.name = "color";
  c1.kind = FeatureKind::Categorical;
  c1.values = {"red", "green", "blue"};
  FeatureSpec c2;
  c2.name = "flag";
  c2.kind = FeatureKind::Categorical;
  c2.values = {"yes", "no"};
  FeatureSpec n1;
  n1.name = "a";
  n1.kind = FeatureKind::Continuous;
  n1.min = 0;
  n1.max = 10;
  FeatureSpec n2;
  n2.name = "b";
  n2.kind = FeatureKind::Continuous;
  n2.min = -5;
  n2.max = 5;
  schema.features = {c1, c2, n1, n2};
  schema.target_name = "y";
  schema.labels = {"neg", "pos"};
  return schema;
}

inline Instance random_instance(const FeatureSchema& schema, Rng& rng) {
  Instance x;
  for (const auto& spec : schema.features) {
    if (spec.kind == FeatureKind::Categorical)
      x.push_back(Value::category(spec.values[rng.index(spec.values.size())]));
    else
      x.push_back(Value::number(spec.min + rng.uniform() * spec.range()));
  }
  return x;
}

// Random tree over schema, depth <= max_depth, path-consistent conditions.
struct RandomTreeGen {
  const FeatureSchema& schema;
  Rng& rng;
  int max_depth;

  std::unique_ptr<TreeNode> node(std::vector<double> lo, std::vector<double> hi,
                                 std::vector<bool> used, int depth) {
    const bool force_leaf = depth >= max_depth || rng.uniform() < 0.3 * depth;
    if (force_leaf) return TreeNode::make_leaf(static_cast<int>(rng.index(2)),
                                               1 + static_cast<int>(rng.index(9)));
    // pick a splittable feature
    std::vector<int> candidates;
    for (std::size_t f = 0; f < schema.arity(); ++f) {
      if (schema.features[f].kind == FeatureKind::Categorical) {
        if (!used[f]) candidates.push_back(static_cast<int>(f));
      } else if (hi[f] - lo[f] > 1e-6) {
        candidates.push_back(static_cast<int>(f));
      }
    }
    if (candidates.empty())
      return TreeNode::make_leaf(static_cast<int>(rng.index(2)), 1);
    const int f = candidates[rng.index(candidates.size())];
    const auto fu = static_cast<std::size_t>(f);
    if (schema.features[fu].kind == FeatureKind::Categorical) {
      auto child_used = used;
      child_used[fu] = true;
      std::vector<std::unique_ptr<TreeNode>> children;
      for (std::size_t v = 0; v < schema.features[fu].values.size(); ++v)
        children.push_back(node(lo, hi, child_used, depth + 1));
      return TreeNode::make_categorical(f, schema.features[fu].values,
                                        std::move(children));
    }
    const double t = lo[fu] + (0.2 + 0.6 * rng.uniform()) * (hi[fu] - lo[fu]);
    auto hi_left = hi;
    hi_left[fu] = t;
    auto lo_right = lo;
    lo_right[fu] = t;
    auto left = node(lo, hi_left, used, depth + 1);
    auto right = node(lo_right, hi, used, depth + 1);
    return TreeNode::make_continuous(f, t, std::move(left), std::move(right));
  }

  DecisionTree make() {
    std::vector<double> lo, hi;
    for (const auto& spec : schema.features) {
      lo.push_back(spec.min);
      hi.push_back(spec.max);
    }
    return DecisionTree(
        node(std::move(lo), std::move(hi), std::vector<bool>(schema.arity(), false), 0));
  }
};

// Independent counterfactual oracle: walk a tree collecting per-feature
// interval/category constraints, count x's violations per merged
// condition, and report the nf of every leaf carrying `want_label`,
// left-to-right.
struct OracleWalker {
  struct Constraint {
    bool categorical = false;
    std::string category;
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
    bool lower_closed = false, upper_closed = false;
  };

  const Instance& x;
  int want_label;
  std::vector<int> nfs;

  void walk(const TreeNode* node, std::map<int, Constraint> active) {
    if (node->leaf) {
      if (node->label != want_label) return;
      int nf = 0;
      for (const auto& [feature, c] : active) {
        const auto fu = static_cast<std::size_t>(feature);
        if (c.categorical) {
          nf += x[fu].cat != c.category;
        } else {
          const double v = x[fu].num;
          bool ok = (c.lower_closed ? v >= c.lower : v > c.lower) &&
                    (c.upper_closed ? v <= c.upper : v < c.upper);
          nf += !ok;
        }
      }
      nfs.push_back(nf);
      return;
    }
    if (node->categorical) {
      for (std::size_t i = 0; i < node->children.size(); ++i) {
        auto next = active;
        auto& c = next[node->feature];
        c.categorical = true;
        c.category = node->categories[i];
        walk(node->children[i].get(), std::move(next));
      }
    } else {
      auto left = active;
      auto& cl = left[node->feature];
      if (node->threshold < cl.upper) {
        cl.upper = node->threshold;
        cl.upper_closed = true;
      }
      walk(node->children[0].get(), std::move(left));
      auto right = active;
      auto& cr = right[node->feature];
      if (node->threshold > cr.lower ||
          (node->threshold == cr.lower && cr.lower_closed)) {
        cr.lower = node->threshold;
        cr.lower_closed = false;
      }
      walk(node->children[1].get(), std::move(right));
    }
  }
};

// Writes content to a fresh temp file and removes it on destruction.
class TempFile {
 public:
  explicit TempFile(const std::string& content, const std::string& suffix = ".tmp") {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("lore_test_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++) + suffix);
    std::ofstream out(path_, std::ios::binary);
    out << content;
  }
  ~TempFile() { std::filesystem::remove(path_); }
  std::string path() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

inline std::string mixed_schema_json() {
  return R"({
    "features": [
      {"name": "color", "kind": "categorical", "values": ["red", "green", "blue"]},
      {"name": "flag", "kind": "categorical", "values": ["yes", "no"]},
      {"name": "a", "kind": "continuous", "min": 0, "max": 10},
      {"name": "b", "kind": "continuous", "min": -5, "max": 5}
    ],
    "target": {"name": "y", "labels": ["neg", "pos"]}
  })";
}

}  // namespace testutil
