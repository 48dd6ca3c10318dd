#pragma once

#include <string>
#include <vector>

#include "lore/blackbox.hpp"
#include "lore/genetic.hpp"
#include "lore/rules.hpp"
#include "lore/tree.hpp"

#include "json.hpp"

namespace lore {

struct ExplanationDiagnostics {
  double fidelity_on_z = 0.0;
  int tree_depth = 0;
  std::size_t premise_size = 0;
  NeighborhoodStats neighborhood;
};

// e = <r, Phi> plus one counterfactual instance per counterfactual rule.
struct Explanation {
  Instance x;
  int blackbox_label = 0;
  Rule rule;
  std::vector<Rule> counterfactual_rules;
  std::vector<int> counterfactual_nf;
  std::vector<Instance> counterfactual_instances;
  ExplanationDiagnostics diagnostics;
};

// Rule for x's root-leaf path; satisfied by x and consistent with the tree.
Rule extract_rule(const DecisionTree& tree, const Instance& x);

// Opposite-label leaf premises minimizing nf w.r.t. x, left-to-right
// tree order. Empty when no opposite-label leaf exists.
std::vector<Rule> extract_counterfactuals(const DecisionTree& tree, const Rule& r,
                                          const Instance& x);

// Minimal modification of x satisfying q's premise: only falsified
// conditions are touched; open bounds are stepped inside the interval by
// 1e-4 * feature range.
Instance counterfactual_instance(const Rule& q, const Instance& x,
                                 const FeatureSchema& schema);

struct ExplainParams {
  GAParams ga;
  DistanceKind distance_kind = DistanceKind::Neuclid;
  TreeParams tree;
};

// Full pipeline: neighborhood -> tree -> rule -> counterfactuals.
Explanation explain(const Instance& x, BlackBox& bb, const FeatureSchema& schema,
                    const ExplainParams& params);

// Same pipeline on an externally supplied neighborhood (baselines reuse it).
Explanation explain_with_neighborhood(const Instance& x, int x_label,
                                      const Neighborhood& nbh,
                                      const FeatureSchema& schema,
                                      const ExplainParams& params);

// Rule/counterfactual extraction against a prebuilt surrogate (the global
// baseline shares one tree across all explained instances).
Explanation explain_from_tree(const Instance& x, int x_label, const Neighborhood& nbh,
                              const DecisionTree& tree, const FeatureSchema& schema,
                              const ExplainParams& params);

nlohmann::ordered_json explanation_to_json(const FeatureSchema& schema,
                                           const Explanation& e);
std::string explanation_to_text(const FeatureSchema& schema, const Explanation& e);

nlohmann::ordered_json instance_to_json(const FeatureSchema& schema, const Instance& x);
nlohmann::ordered_json rule_to_json(const FeatureSchema& schema, const Rule& r);

}  // namespace lore
