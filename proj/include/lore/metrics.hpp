#pragma once

#include <optional>
#include <vector>

#include "lore/blackbox.hpp"
#include "lore/explanation.hpp"
#include "lore/genetic.hpp"
#include "lore/tree.hpp"

namespace lore {

// Binary f1 with label 1 (the second schema label) as positive. When
// positives are absent from both lists and everything agrees, 1.0.
double f1_score(const std::vector<int>& predicted, const std::vector<int>& reference);

int hit(const DecisionTree& c, BlackBox& bb, const Instance& x);

// f1 between tree and cached black-box labels over the whole neighborhood.
double fidelity(const DecisionTree& c, const Neighborhood& z);

// f1 restricted to neighborhood instances covered by r's premise;
// nullopt when nothing is covered.
std::optional<double> l_fidelity(const DecisionTree& c, const Neighborhood& z,
                                 const Rule& r);

// Fraction of counterfactual instances the black box labels with the
// counterfactual outcome; nullopt when Phi is empty.
std::optional<double> c_hit(BlackBox& bb, const Explanation& e);

// f1 over the union of neighborhood instances covered by any rule in Phi.
std::optional<double> cl_fidelity(const DecisionTree& c, const Neighborhood& z,
                                  const std::vector<Rule>& phi);

}  // namespace lore
