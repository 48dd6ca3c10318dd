#include "lore/blackbox.hpp"

#include <cmath>

#include "lore/error.hpp"
#include "lore/external.hpp"
#include "lore/rng.hpp"

namespace lore {

BaggedTreeEnsemble::BaggedTreeEnsemble(std::vector<DecisionTree> trees)
    : trees_(std::move(trees)) {
  if (trees_.empty()) throw UsageError("ensemble needs at least one tree");
}

std::unique_ptr<BaggedTreeEnsemble> BaggedTreeEnsemble::train(const Dataset& ds,
                                                             int tree_count,
                                                             std::uint64_t seed) {
  if (ds.rows.empty()) throw DataError("cannot train an ensemble on an empty dataset");
  if (tree_count < 1) throw UsageError("tree_count must be >= 1");
  for (auto label : ds.labels)
    if (label < 0) throw DataError("ensemble training requires labeled rows");

  const std::size_t n = ds.rows.size();
  const int subsample =
      static_cast<int>(std::ceil(std::sqrt(static_cast<double>(ds.schema.arity()))));

  std::vector<DecisionTree> trees;
  trees.reserve(static_cast<std::size_t>(tree_count));
  for (int t = 0; t < tree_count; ++t) {
    Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(t));
    std::vector<Instance> boot_rows;
    std::vector<int> boot_labels;
    boot_rows.reserve(n);
    boot_labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t pick = rng.index(n);
      boot_rows.push_back(ds.rows[pick]);
      boot_labels.push_back(ds.labels[pick]);
    }
    TreeParams params;
    params.min_leaf = 1;
    params.feature_subsample = subsample;
    params.rng = &rng;
    trees.push_back(DecisionTree::build(ds.schema, boot_rows, boot_labels, params));
  }
  return std::make_unique<BaggedTreeEnsemble>(std::move(trees));
}

std::vector<int> BaggedTreeEnsemble::do_predict(const std::vector<Instance>& xs) {
  std::vector<int> out;
  out.reserve(xs.size());
  for (const auto& x : xs) {
    int votes1 = 0;
    for (const auto& tree : trees_) votes1 += tree.predict(x);
    // majority; tie -> first target label
    out.push_back(2 * votes1 > static_cast<int>(trees_.size()) ? 1 : 0);
  }
  return out;
}

std::unique_ptr<BlackBox> make_blackbox(const std::string& source, const Dataset& train,
                                        std::uint64_t seed) {
  if (source == "builtin:ensemble") return BaggedTreeEnsemble::train(train, 100, seed);
  if (source.rfind("cmd:", 0) == 0)
    return connect_external_process(source.substr(4), train.schema);
  if (source.rfind("http:", 0) == 0)
    return connect_external_http(source, train.schema);
  throw UsageError("unknown black-box source '" + source +
                   "' (expected builtin:ensemble, cmd:<command> or http:<url>)");
}

}  // namespace lore
