#include "doctest.h"
#include "helpers.hpp"
#include "lore/blackbox.hpp"
#include "lore/dataset.hpp"
#include "lore/harness.hpp"

using namespace lore;

namespace {

struct Fixture {
  Dataset ds;
  FeatureSchema schema;
  std::unique_ptr<BlackBox> bb;

  Fixture()
      : ds(impute_missing(
            load_dataset(std::string(LORE_DATA_DIR) + "/blobs2d.csv",
                         std::string(LORE_DATA_DIR) + "/blobs2d.schema.json"))) {
    schema = build_empirical_distributions(ds);
    ds.schema = schema;
    bb = BaggedTreeEnsemble::train(ds, 20, 4);
  }

  HarnessConfig quick_config() const {
    HarnessConfig config;
    config.params.ga.population = 100;
    config.params.ga.generations = 3;
    config.params.ga.seed = 12;
    config.crn_k = 30;
    return config;
  }
};

struct ConstantBox : BlackBox {
 protected:
  std::vector<int> do_predict(const std::vector<Instance>& xs) override {
    return std::vector<int>(xs.size(), 1);
  }
};

}  // namespace

TEST_CASE("constant black box: hit mean 1.0, counterfactual metrics skipped") {
  Fixture fx;
  ConstantBox constant;
  auto report = evaluate(fx.ds, {0, 1, 2, 3, 4}, constant, fx.schema, fx.quick_config());
  CHECK(report.hit.mean == doctest::Approx(1.0));
  CHECK(report.hit.count == 5);
  CHECK(report.fidelity.mean == doctest::Approx(1.0));
  CHECK(report.c_hit.count == 0);
  CHECK(report.c_hit.skipped == 5);
  CHECK(report.cl_fidelity.skipped == 5);
}

TEST_CASE("evaluate fills one record per requested instance") {
  Fixture fx;
  auto report = evaluate(fx.ds, {3, 7, 11}, *fx.bb, fx.schema, fx.quick_config());
  REQUIRE(report.records.size() == 3);
  CHECK(report.records[0].instance_index == 3);
  CHECK(report.records[2].instance_index == 11);
  CHECK(report.method == "lore");
  for (const auto& rec : report.records) {
    CHECK(rec.fidelity >= 0.0);
    CHECK(rec.fidelity <= 1.0);
    CHECK(rec.tree_depth >= 0);
  }
}

TEST_CASE("per-instance seeds make results independent of selection order") {
  Fixture fx;
  auto wide = evaluate(fx.ds, {2, 5, 9}, *fx.bb, fx.schema, fx.quick_config());
  auto solo = evaluate(fx.ds, {5}, *fx.bb, fx.schema, fx.quick_config());
  CHECK(wide.records[1].fidelity == solo.records[0].fidelity);
  CHECK(wide.records[1].hit == solo.records[0].hit);
  CHECK(wide.records[1].tree_depth == solo.records[0].tree_depth);
}

TEST_CASE("aggregates: mean, population stddev, skip accounting") {
  Fixture fx;
  auto report = evaluate(fx.ds, {0, 1, 2, 3}, *fx.bb, fx.schema, fx.quick_config());
  double sum = 0;
  for (const auto& rec : report.records) sum += rec.fidelity;
  CHECK(report.fidelity.mean == doctest::Approx(sum / 4).epsilon(1e-9));
  double var = 0;
  for (const auto& rec : report.records) {
    const double d = rec.fidelity - report.fidelity.mean;
    var += d * d;
  }
  CHECK(report.fidelity.stddev == doctest::Approx(std::sqrt(var / 4)).epsilon(1e-9));
  std::size_t defined = 0;
  for (const auto& rec : report.records) defined += rec.c_hit.has_value();
  CHECK(report.c_hit.count == defined);
  CHECK(report.c_hit.skipped == 4 - defined);
}

TEST_CASE("compare: single method matches evaluate, row order follows the list") {
  Fixture fx;
  auto config = fx.quick_config();
  std::vector<std::size_t> indices = {0, 4, 8};

  auto direct = evaluate(fx.ds, indices, *fx.bb, fx.schema, config);
  auto side = compare(fx.ds, indices, *fx.bb, fx.schema, config,
                      {GeneratorKind::Lore});
  REQUIRE(side.size() == 1);
  CHECK(report_to_json(side[0]).dump() == report_to_json(direct).dump());

  auto multi = compare(fx.ds, indices, *fx.bb, fx.schema, config,
                       {GeneratorKind::Global, GeneratorKind::Crn, GeneratorKind::Lore});
  REQUIRE(multi.size() == 3);
  CHECK(multi[0].method == "global");
  CHECK(multi[1].method == "crn");
  CHECK(multi[2].method == "lore");

  auto table = report_to_table(multi);
  CHECK(table.find("global") < table.find("crn"));
  CHECK(table.find("crn") < table.find("lore"));
}

TEST_CASE("report is byte-stable for a fixed seed") {
  Fixture fx;
  auto a = evaluate(fx.ds, {1, 2}, *fx.bb, fx.schema, fx.quick_config());
  auto b = evaluate(fx.ds, {1, 2}, *fx.bb, fx.schema, fx.quick_config());
  CHECK(report_to_json(a).dump(2) == report_to_json(b).dump(2));
}

TEST_CASE("global method reuses one shared surrogate") {
  Fixture fx;
  auto config = fx.quick_config();
  config.method = GeneratorKind::Global;
  auto report = evaluate(fx.ds, {0, 1, 2, 3, 4, 5}, *fx.bb, fx.schema, config);
  REQUIRE(report.records.size() == 6);
  // one tree for everyone: identical depth on every record
  for (const auto& rec : report.records)
    CHECK(rec.tree_depth == report.records[0].tree_depth);
}
