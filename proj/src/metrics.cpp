#include "lore/metrics.hpp"

#include "lore/error.hpp"

namespace lore {

double f1_score(const std::vector<int>& predicted, const std::vector<int>& reference) {
  if (predicted.size() != reference.size())
    throw UsageError("f1: predicted and reference lists differ in length");
  if (predicted.empty()) throw UsageError("f1: empty label lists");

  // label 1 (the second schema label) is positive
  std::size_t tp = 0, fp = 0, fn = 0, agree = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (predicted[i] == reference[i]) ++agree;
    if (predicted[i] == 1 && reference[i] == 1) ++tp;
    if (predicted[i] == 1 && reference[i] == 0) ++fp;
    if (predicted[i] == 0 && reference[i] == 1) ++fn;
  }
  if (tp == 0 && fp == 0 && fn == 0)
    return agree == predicted.size() ? 1.0 : 0.0;  // no positives anywhere
  if (tp == 0) return 0.0;
  return 2.0 * static_cast<double>(tp) / static_cast<double>(2 * tp + fp + fn);
}

int hit(const DecisionTree& c, BlackBox& bb, const Instance& x) {
  return c.predict(x) == bb.predict_one(x) ? 1 : 0;
}

double fidelity(const DecisionTree& c, const Neighborhood& z) {
  std::vector<int> predicted;
  predicted.reserve(z.instances.size());
  for (const auto& inst : z.instances) predicted.push_back(c.predict(inst));
  return f1_score(predicted, z.labels);
}

std::optional<double> l_fidelity(const DecisionTree& c, const Neighborhood& z,
                                 const Rule& r) {
  std::vector<int> predicted, reference;
  for (std::size_t i = 0; i < z.instances.size(); ++i) {
    if (!satisfies(z.instances[i], r.premise)) continue;
    predicted.push_back(c.predict(z.instances[i]));
    reference.push_back(z.labels[i]);
  }
  if (predicted.empty()) return std::nullopt;
  return f1_score(predicted, reference);
}

std::optional<double> c_hit(BlackBox& bb, const Explanation& e) {
  if (e.counterfactual_instances.empty()) return std::nullopt;
  const auto labels = bb.predict(e.counterfactual_instances);
  std::size_t agreeing = 0;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == e.counterfactual_rules[i].outcome) ++agreeing;
  return static_cast<double>(agreeing) / static_cast<double>(labels.size());
}

std::optional<double> cl_fidelity(const DecisionTree& c, const Neighborhood& z,
                                  const std::vector<Rule>& phi) {
  std::vector<int> predicted, reference;
  for (std::size_t i = 0; i < z.instances.size(); ++i) {
    bool covered = false;
    for (const auto& q : phi) {
      if (satisfies(z.instances[i], q.premise)) { covered = true; break; }
    }
    if (!covered) continue;
    predicted.push_back(c.predict(z.instances[i]));
    reference.push_back(z.labels[i]);
  }
  if (predicted.empty()) return std::nullopt;
  return f1_score(predicted, reference);
}

}  // namespace lore
