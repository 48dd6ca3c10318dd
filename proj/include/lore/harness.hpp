#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lore/baselines.hpp"
#include "lore/blackbox.hpp"
#include "lore/dataset.hpp"
#include "lore/explanation.hpp"

#include "json.hpp"

namespace lore {

struct EvalRecord {
  std::size_t instance_index = 0;
  int hit = 0;
  double fidelity = 0.0;
  std::optional<double> l_fidelity;
  std::optional<double> c_hit;
  std::optional<double> cl_fidelity;
  int tree_depth = 0;
  std::size_t premise_size = 0;
  std::optional<int> min_nf;
};

struct MetricAggregate {
  double mean = 0.0;
  double stddev = 0.0;
  std::size_t count = 0;    // records that defined the metric
  std::size_t skipped = 0;  // undefined, excluded from the mean
};

struct EvalReport {
  std::string method;
  std::vector<EvalRecord> records;
  MetricAggregate hit, fidelity, l_fidelity, c_hit, cl_fidelity;
  MetricAggregate tree_depth, premise_size, nf;
};

struct HarnessConfig {
  ExplainParams params;
  GeneratorKind method = GeneratorKind::Lore;
  std::size_t crn_k = 100;
};

// Explain every selected test instance with the chosen neighborhood
// generator and score it. Per-instance RNG streams derive from
// (seed, instance index) so results are order-stable.
EvalReport evaluate(const Dataset& test, const std::vector<std::size_t>& indices,
                    BlackBox& bb, const FeatureSchema& schema,
                    const HarnessConfig& config);

std::vector<EvalReport> compare(const Dataset& test,
                                const std::vector<std::size_t>& indices, BlackBox& bb,
                                const FeatureSchema& schema, const HarnessConfig& base,
                                const std::vector<GeneratorKind>& methods);

std::string report_to_table(const std::vector<EvalReport>& reports);
nlohmann::ordered_json report_to_json(const EvalReport& report);

}  // namespace lore
