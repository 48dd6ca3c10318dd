#include "lore/explanation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lore/error.hpp"
#include "lore/metrics.hpp"

namespace lore {

Rule extract_rule(const DecisionTree& tree, const Instance& x) {
  Rule r;
  r.premise = tree.path_premise(x);
  r.outcome = tree.predict(x);
  return r;
}

std::vector<Rule> extract_counterfactuals(const DecisionTree& tree, const Rule& r,
                                          const Instance& x) {
  const int opposite = 1 - r.outcome;
  int min_nf = std::numeric_limits<int>::max();
  std::vector<Rule> phi;
  for (auto& [premise, label] : tree.enumerate_leaves(opposite)) {
    const int nf = count_falsified(premise, x);
    if (nf < min_nf) {
      min_nf = nf;
      phi.clear();
    }
    if (nf == min_nf) phi.push_back(Rule{premise, opposite});
  }
  return phi;
}

Instance counterfactual_instance(const Rule& q, const Instance& x,
                                 const FeatureSchema& schema) {
  Instance out = x;
  for (const auto& sc : q.premise.conditions) {
    if (sc.holds(out)) continue;
    const auto f = static_cast<std::size_t>(sc.feature);
    if (sc.categorical) {
      out[f] = Value::category(sc.category);
      continue;
    }
    const double range = schema.features[f].range();
    const double eps = range > 0.0 ? 1e-4 * range : 1e-4;
    const double v = out[f].num;
    // move to the violated bound nearest to x's value
    double lower_gap = std::numeric_limits<double>::infinity();
    double upper_gap = std::numeric_limits<double>::infinity();
    if (std::isfinite(sc.lower) && (sc.lower_closed ? v < sc.lower : v <= sc.lower))
      lower_gap = sc.lower - v;
    if (std::isfinite(sc.upper) && (sc.upper_closed ? v > sc.upper : v >= sc.upper))
      upper_gap = v - sc.upper;
    if (lower_gap <= upper_gap)
      out[f] = Value::number(sc.lower_closed ? sc.lower : sc.lower + eps);
    else
      out[f] = Value::number(sc.upper_closed ? sc.upper : sc.upper - eps);
  }
  if (!satisfies(out, q.premise))
    throw DataError("internal: counterfactual adjustment left the premise unsatisfied");
  return out;
}

Explanation explain_with_neighborhood(const Instance& x, int x_label,
                                      const Neighborhood& nbh,
                                      const FeatureSchema& schema,
                                      const ExplainParams& params) {
  DecisionTree tree = DecisionTree::build(schema, nbh.instances, nbh.labels, params.tree);
  return explain_from_tree(x, x_label, nbh, tree, schema, params);
}

Explanation explain_from_tree(const Instance& x, int x_label, const Neighborhood& nbh,
                              const DecisionTree& tree, const FeatureSchema& schema,
                              const ExplainParams& params) {
  Explanation e;
  e.x = x;
  e.blackbox_label = x_label;
  e.rule = extract_rule(tree, x);
  e.counterfactual_rules = extract_counterfactuals(tree, e.rule, x);
  for (const auto& q : e.counterfactual_rules) {
    e.counterfactual_nf.push_back(count_falsified(q.premise, x));
    e.counterfactual_instances.push_back(counterfactual_instance(q, x, schema));
  }
  e.diagnostics.fidelity_on_z = fidelity(tree, nbh);
  e.diagnostics.tree_depth = tree.depth();
  e.diagnostics.premise_size = e.rule.premise.conditions.size();
  e.diagnostics.neighborhood =
      nbh.stats(schema, x, x_label, params.distance_kind);
  return e;
}

Explanation explain(const Instance& x, BlackBox& bb, const FeatureSchema& schema,
                    const ExplainParams& params) {
  Neighborhood nbh = build_neighborhood(x, bb, params.ga, schema, params.distance_kind);
  const int x_label = bb.predict_one(x);
  return explain_with_neighborhood(x, x_label, nbh, schema, params);
}

nlohmann::ordered_json instance_to_json(const FeatureSchema& schema, const Instance& x) {
  nlohmann::ordered_json out;
  for (std::size_t i = 0; i < schema.arity(); ++i) {
    const auto& spec = schema.features[i];
    if (spec.kind == FeatureKind::Categorical)
      out[spec.name] = x[i].cat;
    else
      out[spec.name] = x[i].num;
  }
  return out;
}

namespace {

nlohmann::ordered_json condition_to_json(const FeatureSchema& schema,
                                         const SplitCondition& sc) {
  nlohmann::ordered_json out;
  out["feature"] = schema.features[static_cast<std::size_t>(sc.feature)].name;
  if (sc.categorical) {
    out["kind"] = "equals";
    out["value"] = sc.category;
  } else {
    out["kind"] = "interval";
    if (std::isfinite(sc.lower)) {
      out["lower"] = sc.lower;
      out["lower_closed"] = sc.lower_closed;
    }
    if (std::isfinite(sc.upper)) {
      out["upper"] = sc.upper;
      out["upper_closed"] = sc.upper_closed;
    }
  }
  out["display"] = render_condition(schema, sc);
  return out;
}

}  // namespace

nlohmann::ordered_json rule_to_json(const FeatureSchema& schema, const Rule& r) {
  nlohmann::ordered_json out;
  auto conditions = nlohmann::ordered_json::array();
  for (const auto& sc : r.premise.conditions)
    conditions.push_back(condition_to_json(schema, sc));
  out["premise"] = std::move(conditions);
  out["outcome"] = schema.labels[static_cast<std::size_t>(r.outcome)];
  out["display"] = render_rule(schema, r);
  return out;
}

nlohmann::ordered_json explanation_to_json(const FeatureSchema& schema,
                                           const Explanation& e) {
  nlohmann::ordered_json out;
  out["instance"] = instance_to_json(schema, e.x);
  out["blackbox_label"] = schema.labels[static_cast<std::size_t>(e.blackbox_label)];
  out["rule"] = rule_to_json(schema, e.rule);

  auto counterfactuals = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < e.counterfactual_rules.size(); ++i) {
    nlohmann::ordered_json item;
    item["rule"] = rule_to_json(schema, e.counterfactual_rules[i]);
    item["nf"] = e.counterfactual_nf[i];
    item["instance"] = instance_to_json(schema, e.counterfactual_instances[i]);
    counterfactuals.push_back(std::move(item));
  }
  out["counterfactuals"] = std::move(counterfactuals);

  nlohmann::ordered_json diag;
  diag["fidelity_on_z"] = e.diagnostics.fidelity_on_z;
  diag["tree_depth"] = e.diagnostics.tree_depth;
  diag["premise_size"] = e.diagnostics.premise_size;
  diag["neighborhood_size"] = e.diagnostics.neighborhood.size;
  diag["neighborhood_same_label"] = e.diagnostics.neighborhood.same_label_count;
  diag["neighborhood_mean_distance"] = e.diagnostics.neighborhood.mean_distance_to_x;
  out["diagnostics"] = std::move(diag);
  return out;
}

std::string explanation_to_text(const FeatureSchema& schema, const Explanation& e) {
  std::ostringstream out;
  out << "instance: ";
  for (std::size_t i = 0; i < schema.arity(); ++i) {
    if (i) out << ", ";
    out << schema.features[i].name << " = "
        << (schema.features[i].kind == FeatureKind::Categorical
                ? e.x[i].cat
                : format_number(e.x[i].num));
  }
  out << "\nblack box: " << schema.target_name << " = "
      << schema.labels[static_cast<std::size_t>(e.blackbox_label)] << "\n";
  out << "r = " << render_rule(schema, e.rule) << "\n";
  out << "Phi = {";
  for (std::size_t i = 0; i < e.counterfactual_rules.size(); ++i) {
    out << (i ? ",\n       " : " ") << render_rule(schema, e.counterfactual_rules[i])
        << "  [nf=" << e.counterfactual_nf[i] << "]";
  }
  out << (e.counterfactual_rules.empty() ? "}" : " }") << "\n";
  for (std::size_t i = 0; i < e.counterfactual_instances.size(); ++i) {
    out << "counterfactual instance " << i + 1 << ": ";
    const auto& cx = e.counterfactual_instances[i];
    bool first = true;
    for (std::size_t f = 0; f < schema.arity(); ++f) {
      if (cx[f] == e.x[f]) continue;
      if (!first) out << ", ";
      first = false;
      out << schema.features[f].name << " = "
          << (schema.features[f].kind == FeatureKind::Categorical
                  ? cx[f].cat
                  : format_number(cx[f].num));
    }
    if (first) out << "(unchanged)";
    out << "\n";
  }
  return out.str();
}

}  // namespace lore
