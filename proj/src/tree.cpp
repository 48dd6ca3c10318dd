#include "lore/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "lore/error.hpp"

namespace lore {

namespace {

constexpr double kMinGain = 1e-12;

void merge_into(Premise& p, const SplitCondition& sc) {
  for (auto& existing : p.conditions) {
    if (existing.feature != sc.feature) continue;
    // continuous conditions intersect into one interval
    if (sc.lower > existing.lower ||
        (sc.lower == existing.lower && !sc.lower_closed && existing.lower_closed)) {
      existing.lower = sc.lower;
      existing.lower_closed = sc.lower_closed;
    }
    if (sc.upper < existing.upper ||
        (sc.upper == existing.upper && !sc.upper_closed && existing.upper_closed)) {
      existing.upper = sc.upper;
      existing.upper_closed = sc.upper_closed;
    }
    return;
  }
  p.conditions.push_back(sc);
}

struct SplitChoice {
  bool found = false;
  double ratio = 0.0;
  int feature = -1;
  bool categorical = false;
  double threshold = 0.0;
};

struct Builder {
  const FeatureSchema& schema;
  const std::vector<Instance>& rows;
  const std::vector<int>& labels;
  const TreeParams& params;

  double node_entropy(const std::vector<std::size_t>& idx) const {
    int c0 = 0, c1 = 0;
    for (auto i : idx) (labels[i] == 0 ? c0 : c1)++;
    return binary_entropy(c0, c1);
  }

  // Gain ratio of a categorical multiway split; negative when inadmissible.
  double categorical_ratio(const std::vector<std::size_t>& idx, int feature,
                           double h_parent) const {
    const auto& spec = schema.features[static_cast<std::size_t>(feature)];
    std::vector<int> c0(spec.values.size(), 0), c1(spec.values.size(), 0);
    for (auto i : idx) {
      int vi = spec.value_index(rows[i][static_cast<std::size_t>(feature)].cat);
      (labels[i] == 0 ? c0[static_cast<std::size_t>(vi)] : c1[static_cast<std::size_t>(vi)])++;
    }
    const double n = static_cast<double>(idx.size());
    int branches = 0, viable = 0;
    double h_children = 0.0, split_info = 0.0;
    for (std::size_t v = 0; v < spec.values.size(); ++v) {
      const int cnt = c0[v] + c1[v];
      if (cnt == 0) continue;
      ++branches;
      if (cnt >= params.min_leaf) ++viable;
      const double w = cnt / n;
      h_children += w * binary_entropy(c0[v], c1[v]);
      split_info -= w * std::log2(w);
    }
    if (branches < 2 || viable < 2 || split_info <= 0.0) return -1.0;
    const double gain = h_parent - h_children;
    if (gain <= kMinGain) return -1.0;
    return gain / split_info;
  }

  // Best threshold split on a continuous feature.
  void continuous_best(const std::vector<std::size_t>& idx, int feature, double h_parent,
                       double& best_ratio, double& best_threshold) const {
    best_ratio = -1.0;
    std::vector<std::pair<double, int>> vals;
    vals.reserve(idx.size());
    for (auto i : idx)
      vals.emplace_back(rows[i][static_cast<std::size_t>(feature)].num, labels[i]);
    std::sort(vals.begin(), vals.end());

    const double n = static_cast<double>(vals.size());
    int left0 = 0, left1 = 0, total1 = 0;
    for (const auto& [v, y] : vals) total1 += y;
    const int total0 = static_cast<int>(vals.size()) - total1;

    std::size_t i = 0;
    while (i < vals.size()) {
      // run of equal values
      std::size_t j = i;
      int run0 = 0, run1 = 0;
      while (j < vals.size() && vals[j].first == vals[i].first) {
        (vals[j].second == 0 ? run0 : run1)++;
        ++j;
      }
      left0 += run0;
      left1 += run1;
      if (j == vals.size()) break;

      // candidate only where adjacent value groups have differing class profiles
      std::size_t k = j;
      int next0 = 0, next1 = 0;
      while (k < vals.size() && vals[k].first == vals[j].first) {
        (vals[k].second == 0 ? next0 : next1)++;
        ++k;
      }
      const bool run_pure0 = run1 == 0, run_pure1 = run0 == 0;
      const bool next_pure0 = next1 == 0, next_pure1 = next0 == 0;
      const bool same_pure = (run_pure0 && next_pure0) || (run_pure1 && next_pure1);
      const int left_n = left0 + left1;
      const int right_n = static_cast<int>(vals.size()) - left_n;
      if (!same_pure && left_n >= params.min_leaf && right_n >= params.min_leaf) {
        const double wl = left_n / n, wr = right_n / n;
        const double h_children = wl * binary_entropy(left0, left1) +
                                  wr * binary_entropy(total0 - left0, total1 - left1);
        const double gain = h_parent - h_children;
        if (gain > kMinGain) {
          const double split_info = -(wl * std::log2(wl) + wr * std::log2(wr));
          const double ratio = gain / split_info;
          if (ratio > best_ratio) {
            best_ratio = ratio;
            best_threshold = (vals[i].first + vals[j].first) / 2.0;
          }
        }
      }
      i = j;
    }
  }

  SplitChoice choose_split(const std::vector<std::size_t>& idx,
                          const std::vector<bool>& consumed) const {
    std::vector<int> candidates;
    for (std::size_t f = 0; f < schema.arity(); ++f) {
      if (schema.features[f].kind == FeatureKind::Categorical && consumed[f]) continue;
      candidates.push_back(static_cast<int>(f));
    }
    if (params.feature_subsample > 0 && params.rng != nullptr &&
        candidates.size() > static_cast<std::size_t>(params.feature_subsample)) {
      for (std::size_t i = candidates.size(); i > 1; --i)
        std::swap(candidates[i - 1], candidates[params.rng->index(i)]);
      candidates.resize(static_cast<std::size_t>(params.feature_subsample));
      std::sort(candidates.begin(), candidates.end());
    }

    const double h_parent = node_entropy(idx);
    SplitChoice best;
    for (int f : candidates) {
      const auto& spec = schema.features[static_cast<std::size_t>(f)];
      // ties resolved toward the lowest feature index
      if (spec.kind == FeatureKind::Categorical) {
        const double ratio = categorical_ratio(idx, f, h_parent);
        if (ratio > 0.0 && (!best.found || ratio > best.ratio + kMinGain))
          best = {true, ratio, f, true, 0.0};
      } else {
        double ratio, threshold;
        continuous_best(idx, f, h_parent, ratio, threshold);
        if (ratio > 0.0 && (!best.found || ratio > best.ratio + kMinGain))
          best = {true, ratio, f, false, threshold};
      }
    }
    return best;
  }

  std::unique_ptr<TreeNode> grow(std::vector<std::size_t> idx, std::vector<bool> consumed,
                                 int depth) {
    int c0 = 0, c1 = 0;
    for (auto i : idx) (labels[i] == 0 ? c0 : c1)++;
    const int majority = c1 > c0 ? 1 : 0;  // tie -> first label

    const bool depth_capped = params.max_depth >= 0 && depth >= params.max_depth;
    if (c0 == 0 || c1 == 0 || depth_capped ||
        idx.size() < static_cast<std::size_t>(2 * params.min_leaf))
      return TreeNode::make_leaf(majority, static_cast<int>(idx.size()));

    const auto split = choose_split(idx, consumed);
    if (!split.found) return TreeNode::make_leaf(majority, static_cast<int>(idx.size()));

    const auto f = static_cast<std::size_t>(split.feature);
    if (split.categorical) {
      const auto& spec = schema.features[f];
      std::vector<std::vector<std::size_t>> buckets(spec.values.size());
      for (auto i : idx)
        buckets[static_cast<std::size_t>(spec.value_index(rows[i][f].cat))].push_back(i);
      auto child_consumed = consumed;
      child_consumed[f] = true;
      std::vector<std::string> cats;
      std::vector<std::unique_ptr<TreeNode>> children;
      for (std::size_t v = 0; v < spec.values.size(); ++v) {
        if (buckets[v].empty()) continue;
        cats.push_back(spec.values[v]);
        children.push_back(grow(std::move(buckets[v]), child_consumed, depth + 1));
      }
      return TreeNode::make_categorical(split.feature, std::move(cats),
                                        std::move(children));
    }

    std::vector<std::size_t> left, right;
    for (auto i : idx)
      (rows[i][f].num <= split.threshold ? left : right).push_back(i);
    auto le = grow(std::move(left), consumed, depth + 1);
    auto gt = grow(std::move(right), consumed, depth + 1);
    return TreeNode::make_continuous(split.feature, split.threshold, std::move(le),
                                     std::move(gt));
  }
};

const TreeNode* descend(const TreeNode* node, const Instance& x, Premise* premise) {
  while (node != nullptr && !node->leaf) {
    const auto f = static_cast<std::size_t>(node->feature);
    const TreeNode* next = nullptr;
    if (node->categorical) {
      int chosen = -1;
      for (std::size_t c = 0; c < node->categories.size(); ++c) {
        if (x[f].kind == ValueKind::Category && x[f].cat == node->categories[c]) {
          chosen = static_cast<int>(c);
          break;
        }
      }
      if (chosen < 0) {
        // unseen category: follow the highest-support child
        int best_support = -1;
        for (std::size_t c = 0; c < node->children.size(); ++c) {
          if (node->children[c]->support > best_support) {
            best_support = node->children[c]->support;
            chosen = static_cast<int>(c);
          }
        }
      }
      if (premise)
        merge_into(*premise, SplitCondition::equals(
                                 node->feature,
                                 node->categories[static_cast<std::size_t>(chosen)]));
      next = node->children[static_cast<std::size_t>(chosen)].get();
    } else {
      const bool left = x[f].num <= node->threshold;
      if (premise)
        merge_into(*premise,
                   left ? SplitCondition::at_most(node->feature, node->threshold)
                        : SplitCondition::greater_than(node->feature, node->threshold));
      next = node->children[left ? 0 : 1].get();
    }
    node = next;
  }
  return node;
}

void collect_leaves(const TreeNode* node, Premise premise, std::optional<int> filter,
                    std::vector<std::pair<Premise, int>>& out) {
  if (node->leaf) {
    if (!filter || node->label == *filter) out.emplace_back(std::move(premise), node->label);
    return;
  }
  for (std::size_t c = 0; c < node->children.size(); ++c) {
    Premise child_premise = premise;
    if (node->categorical) {
      merge_into(child_premise, SplitCondition::equals(node->feature, node->categories[c]));
    } else {
      merge_into(child_premise,
                 c == 0 ? SplitCondition::at_most(node->feature, node->threshold)
                        : SplitCondition::greater_than(node->feature, node->threshold));
    }
    collect_leaves(node->children[c].get(), std::move(child_premise), filter, out);
  }
}

int node_depth(const TreeNode* node) {
  if (node->leaf) return 0;
  int best = 0;
  for (const auto& child : node->children) best = std::max(best, node_depth(child.get()));
  return best + 1;
}

void dump_node(const TreeNode* node, const FeatureSchema& schema, int indent,
               std::ostringstream& out) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (node->leaf) {
    out << pad << "-> " << schema.labels[static_cast<std::size_t>(node->label)] << " ("
        << node->support << ")\n";
    return;
  }
  const auto& name = schema.features[static_cast<std::size_t>(node->feature)].name;
  for (std::size_t c = 0; c < node->children.size(); ++c) {
    if (node->categorical)
      out << pad << name << " = " << node->categories[c] << "\n";
    else
      out << pad << name << (c == 0 ? " <= " : " > ") << format_number(node->threshold)
          << "\n";
    dump_node(node->children[c].get(), schema, indent + 1, out);
  }
}

}  // namespace

double binary_entropy(int count0, int count1) {
  const int n = count0 + count1;
  if (n == 0 || count0 == 0 || count1 == 0) return 0.0;
  const double p0 = static_cast<double>(count0) / n;
  const double p1 = static_cast<double>(count1) / n;
  return -(p0 * std::log2(p0) + p1 * std::log2(p1));
}

std::unique_ptr<TreeNode> TreeNode::make_leaf(int label, int support) {
  auto node = std::make_unique<TreeNode>();
  node->leaf = true;
  node->label = label;
  node->support = support;
  return node;
}

std::unique_ptr<TreeNode> TreeNode::make_continuous(int feature, double threshold,
                                                    std::unique_ptr<TreeNode> le,
                                                    std::unique_ptr<TreeNode> gt) {
  auto node = std::make_unique<TreeNode>();
  node->leaf = false;
  node->feature = feature;
  node->categorical = false;
  node->threshold = threshold;
  node->support = le->support + gt->support;
  node->children.push_back(std::move(le));
  node->children.push_back(std::move(gt));
  return node;
}

std::unique_ptr<TreeNode> TreeNode::make_categorical(
    int feature, std::vector<std::string> categories,
    std::vector<std::unique_ptr<TreeNode>> children) {
  auto node = std::make_unique<TreeNode>();
  node->leaf = false;
  node->feature = feature;
  node->categorical = true;
  node->categories = std::move(categories);
  node->support = 0;
  for (const auto& child : children) node->support += child->support;
  node->children = std::move(children);
  return node;
}

DecisionTree::DecisionTree(std::unique_ptr<TreeNode> root) : root_(std::move(root)) {}

DecisionTree DecisionTree::build(const FeatureSchema& schema,
                                 const std::vector<Instance>& rows,
                                 const std::vector<int>& labels,
                                 const TreeParams& params) {
  if (rows.empty()) throw DataError("cannot build a tree from an empty set");
  if (rows.size() != labels.size())
    throw DataError("rows / labels size mismatch in tree induction");
  Builder builder{schema, rows, labels, params};
  std::vector<std::size_t> idx(rows.size());
  std::iota(idx.begin(), idx.end(), 0);
  return DecisionTree(builder.grow(std::move(idx),
                                   std::vector<bool>(schema.arity(), false), 0));
}

int DecisionTree::predict(const Instance& x) const {
  return descend(root_.get(), x, nullptr)->label;
}

const TreeNode* DecisionTree::leaf_for(const Instance& x) const {
  return descend(root_.get(), x, nullptr);
}

Premise DecisionTree::path_premise(const Instance& x) const {
  Premise p;
  descend(root_.get(), x, &p);
  return p;
}

std::vector<std::pair<Premise, int>> DecisionTree::enumerate_leaves(
    std::optional<int> label_filter) const {
  std::vector<std::pair<Premise, int>> out;
  collect_leaves(root_.get(), Premise{}, label_filter, out);
  return out;
}

int DecisionTree::depth() const { return node_depth(root_.get()); }

std::string DecisionTree::dump(const FeatureSchema& schema) const {
  std::ostringstream out;
  dump_node(root_.get(), schema, 0, out);
  return out.str();
}

}  // namespace lore
