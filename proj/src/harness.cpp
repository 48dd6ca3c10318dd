#include "lore/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "lore/error.hpp"
#include "lore/metrics.hpp"

namespace lore {

namespace {

void accumulate(MetricAggregate& agg, const std::vector<double>& values,
                std::size_t total) {
  agg.count = values.size();
  agg.skipped = total - values.size();
  if (values.empty()) return;
  double sum = 0.0;
  for (double v : values) sum += v;
  agg.mean = sum / static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - agg.mean) * (v - agg.mean);
  agg.stddev = std::sqrt(var / static_cast<double>(values.size()));
}

struct PerInstance {
  Neighborhood neighborhood;
  DecisionTree tree;
};

PerInstance make_local(const Instance& x, const Dataset& test, BlackBox& bb,
                       const FeatureSchema& schema, const HarnessConfig& config,
                       std::uint64_t instance_seed) {
  PerInstance out;
  const auto& p = config.params;
  GAParams ga = p.ga;
  ga.seed = instance_seed;
  switch (config.method) {
    case GeneratorKind::Lore:
      out.neighborhood = build_neighborhood(x, bb, ga, schema, p.distance_kind);
      break;
    case GeneratorKind::Crn:
      out.neighborhood = gen_crn(x, test, bb, config.crn_k, schema, p.distance_kind);
      break;
    case GeneratorKind::Rnd:
      out.neighborhood = gen_rnd(x, test, bb, schema, ga.population, instance_seed,
                                 p.distance_kind, config.crn_k);
      break;
    case GeneratorKind::Ros:
      out.neighborhood = gen_ros(x, test, bb, schema, ga.population, instance_seed,
                                 p.distance_kind, config.crn_k);
      break;
    case GeneratorKind::Global:
      throw UsageError("internal: global method handled separately");
  }
  out.tree = DecisionTree::build(schema, out.neighborhood.instances,
                                 out.neighborhood.labels, p.tree);
  return out;
}

}  // namespace

EvalReport evaluate(const Dataset& test, const std::vector<std::size_t>& indices,
                    BlackBox& bb, const FeatureSchema& schema,
                    const HarnessConfig& config) {
  EvalReport report;
  report.method = generator_kind_name(config.method);

  // global: one surrogate shared by every explained instance
  PerInstance shared;
  if (config.method == GeneratorKind::Global) {
    shared.neighborhood = gen_global(test, bb);
    shared.tree = DecisionTree::build(schema, shared.neighborhood.instances,
                                      shared.neighborhood.labels, config.params.tree);
  }

  std::vector<double> v_hit, v_fid, v_lfid, v_chit, v_clfid, v_depth, v_premise, v_nf;
  for (std::size_t idx : indices) {
    if (idx >= test.rows.size())
      throw UsageError("instance index " + std::to_string(idx) + " out of range");
    const Instance& x = test.rows[idx];
    const std::uint64_t instance_seed = Rng::derive(config.params.ga.seed, idx).raw();

    const PerInstance local =
        config.method == GeneratorKind::Global
            ? PerInstance{}
            : make_local(x, test, bb, schema, config, instance_seed);
    const PerInstance& ctx = config.method == GeneratorKind::Global ? shared : local;

    const int x_label = bb.predict_one(x);
    Explanation e = explain_from_tree(x, x_label, ctx.neighborhood, ctx.tree, schema,
                                      config.params);

    EvalRecord rec;
    rec.instance_index = idx;
    rec.hit = ctx.tree.predict(x) == x_label ? 1 : 0;
    rec.fidelity = fidelity(ctx.tree, ctx.neighborhood);
    rec.l_fidelity = l_fidelity(ctx.tree, ctx.neighborhood, e.rule);
    rec.c_hit = c_hit(bb, e);
    rec.cl_fidelity = cl_fidelity(ctx.tree, ctx.neighborhood, e.counterfactual_rules);
    rec.tree_depth = ctx.tree.depth();
    rec.premise_size = e.rule.premise.conditions.size();
    if (!e.counterfactual_nf.empty()) rec.min_nf = e.counterfactual_nf.front();

    v_hit.push_back(rec.hit);
    v_fid.push_back(rec.fidelity);
    if (rec.l_fidelity) v_lfid.push_back(*rec.l_fidelity);
    if (rec.c_hit) v_chit.push_back(*rec.c_hit);
    if (rec.cl_fidelity) v_clfid.push_back(*rec.cl_fidelity);
    v_depth.push_back(rec.tree_depth);
    v_premise.push_back(static_cast<double>(rec.premise_size));
    if (rec.min_nf) v_nf.push_back(*rec.min_nf);
    report.records.push_back(std::move(rec));
  }

  const std::size_t total = indices.size();
  accumulate(report.hit, v_hit, total);
  accumulate(report.fidelity, v_fid, total);
  accumulate(report.l_fidelity, v_lfid, total);
  accumulate(report.c_hit, v_chit, total);
  accumulate(report.cl_fidelity, v_clfid, total);
  accumulate(report.tree_depth, v_depth, total);
  accumulate(report.premise_size, v_premise, total);
  accumulate(report.nf, v_nf, total);
  return report;
}

std::vector<EvalReport> compare(const Dataset& test,
                                const std::vector<std::size_t>& indices, BlackBox& bb,
                                const FeatureSchema& schema, const HarnessConfig& base,
                                const std::vector<GeneratorKind>& methods) {
  std::vector<EvalReport> reports;
  for (auto method : methods) {
    HarnessConfig config = base;
    config.method = method;
    reports.push_back(evaluate(test, indices, bb, schema, config));
  }
  return reports;
}

namespace {

std::string cell(const MetricAggregate& agg) {
  if (agg.count == 0) return "-";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f +- %.3f", agg.mean, agg.stddev);
  return buf;
}

}  // namespace

std::string report_to_table(const std::vector<EvalReport>& reports) {
  std::ostringstream out;
  out << "method\thit\tfidelity\tl-fidelity\tc-hit\tcl-fidelity\ttree_depth\t|p|\tnf\n";
  for (const auto& r : reports) {
    out << r.method << "\t" << cell(r.hit) << "\t" << cell(r.fidelity) << "\t"
        << cell(r.l_fidelity) << "\t" << cell(r.c_hit) << "\t" << cell(r.cl_fidelity)
        << "\t" << cell(r.tree_depth) << "\t" << cell(r.premise_size) << "\t"
        << cell(r.nf) << "\n";
  }
  return out.str();
}

namespace {

nlohmann::ordered_json aggregate_to_json(const MetricAggregate& agg) {
  nlohmann::ordered_json out;
  out["mean"] = agg.mean;
  out["stddev"] = agg.stddev;
  out["count"] = agg.count;
  out["skipped"] = agg.skipped;
  return out;
}

}  // namespace

nlohmann::ordered_json report_to_json(const EvalReport& report) {
  nlohmann::ordered_json out;
  out["method"] = report.method;

  auto records = nlohmann::ordered_json::array();
  for (const auto& rec : report.records) {
    nlohmann::ordered_json item;
    item["instance_index"] = rec.instance_index;
    item["hit"] = rec.hit;
    item["fidelity"] = rec.fidelity;
    if (rec.l_fidelity) item["l_fidelity"] = *rec.l_fidelity;
    if (rec.c_hit) item["c_hit"] = *rec.c_hit;
    if (rec.cl_fidelity) item["cl_fidelity"] = *rec.cl_fidelity;
    item["tree_depth"] = rec.tree_depth;
    item["premise_size"] = rec.premise_size;
    if (rec.min_nf) item["nf"] = *rec.min_nf;
    records.push_back(std::move(item));
  }
  out["records"] = std::move(records);

  nlohmann::ordered_json agg;
  agg["hit"] = aggregate_to_json(report.hit);
  agg["fidelity"] = aggregate_to_json(report.fidelity);
  agg["l_fidelity"] = aggregate_to_json(report.l_fidelity);
  agg["c_hit"] = aggregate_to_json(report.c_hit);
  agg["cl_fidelity"] = aggregate_to_json(report.cl_fidelity);
  agg["tree_depth"] = aggregate_to_json(report.tree_depth);
  agg["premise_size"] = aggregate_to_json(report.premise_size);
  agg["nf"] = aggregate_to_json(report.nf);
  out["aggregates"] = std::move(agg);
  return out;
}

}  // namespace lore
