#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lore/rng.hpp"
#include "lore/rules.hpp"
#include "lore/schema.hpp"
#include "lore/value.hpp"

namespace lore {

struct TreeNode {
  bool leaf = true;
  int label = 0;
  int support = 0;  // training instances routed here (subtree total)

  int feature = -1;
  bool categorical = false;
  double threshold = 0.0;                   // continuous: children = {<= t, > t}
  std::vector<std::string> categories;      // categorical: observed categories
  std::vector<std::unique_ptr<TreeNode>> children;

  static std::unique_ptr<TreeNode> make_leaf(int label, int support);
  static std::unique_ptr<TreeNode> make_continuous(int feature, double threshold,
                                                   std::unique_ptr<TreeNode> le,
                                                   std::unique_ptr<TreeNode> gt);
  static std::unique_ptr<TreeNode> make_categorical(
      int feature, std::vector<std::string> categories,
      std::vector<std::unique_ptr<TreeNode>> children);
};

struct TreeParams {
  int min_leaf = 2;
  int max_depth = -1;          // -1 = no cap
  int feature_subsample = 0;   // 0 = consider all features (ensemble uses ceil(sqrt(m)))
  Rng* rng = nullptr;          // required when feature_subsample > 0
};

// Greedy C4.5-style tree: gain-ratio splits, multiway on categoricals
// (consumed along the path), binary threshold on continuous features.
class DecisionTree {
 public:
  DecisionTree() = default;
  explicit DecisionTree(std::unique_ptr<TreeNode> root);

  static DecisionTree build(const FeatureSchema& schema,
                            const std::vector<Instance>& rows,
                            const std::vector<int>& labels,
                            const TreeParams& params = {});

  int predict(const Instance& x) const;
  const TreeNode* leaf_for(const Instance& x) const;

  // Merged root->leaf conjunction for the leaf reached by x.
  Premise path_premise(const Instance& x) const;

  // All leaves (optionally filtered by label) with merged path premises,
  // in left-to-right order.
  std::vector<std::pair<Premise, int>> enumerate_leaves(
      std::optional<int> label_filter = std::nullopt) const;

  int depth() const;
  const TreeNode* root() const { return root_.get(); }
  std::string dump(const FeatureSchema& schema) const;

 private:
  std::unique_ptr<TreeNode> root_;
};

// Shannon entropy of a binary label multiset, in bits. Exposed for the
// brute-force gain checks in tests.
double binary_entropy(int count0, int count1);

}  // namespace lore
