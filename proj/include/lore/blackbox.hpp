#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "lore/dataset.hpp"
#include "lore/tree.hpp"
#include "lore/value.hpp"

namespace lore {

// Opaque predictor interface. predict() is batch-first: the GA evaluates
// whole populations per generation.
class BlackBox {
 public:
  virtual ~BlackBox() = default;

  std::vector<int> predict(const std::vector<Instance>& xs) {
    auto out = do_predict(xs);
    queries_ += xs.size();
    return out;
  }

  int predict_one(const Instance& x) {
    return predict(std::vector<Instance>{x}).front();
  }

  std::uint64_t query_count() const { return queries_; }

 protected:
  virtual std::vector<int> do_predict(const std::vector<Instance>& xs) = 0;

 private:
  std::atomic<std::uint64_t> queries_{0};
};

// Built-in reference black box: bagged gain-ratio trees with per-node
// random feature subsampling. Majority vote, ties to the first label.
class BaggedTreeEnsemble : public BlackBox {
 public:
  static std::unique_ptr<BaggedTreeEnsemble> train(const Dataset& ds, int tree_count,
                                                   std::uint64_t seed);

  // Direct construction from prebuilt trees (tests use stub trees).
  explicit BaggedTreeEnsemble(std::vector<DecisionTree> trees);

  std::size_t tree_count() const { return trees_.size(); }

 protected:
  std::vector<int> do_predict(const std::vector<Instance>& xs) override;

 private:
  std::vector<DecisionTree> trees_;
};

// `builtin:ensemble` | `cmd:<command>` | `http:<url>`; the builtin form
// trains on `train` with the given seed.
std::unique_ptr<BlackBox> make_blackbox(const std::string& source, const Dataset& train,
                                        std::uint64_t seed);

}  // namespace lore
