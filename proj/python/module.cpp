// pybind11 surface over the explanation engine. Instances cross the
// boundary as python lists in schema column order (str for categorical,
// float for continuous); documents cross as JSON strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "json.hpp"

#include "lore/baselines.hpp"
#include "lore/blackbox.hpp"
#include "lore/dataset.hpp"
#include "lore/distance.hpp"
#include "lore/explanation.hpp"
#include "lore/harness.hpp"
#include "lore/metrics.hpp"

namespace py = pybind11;
using namespace lore;

namespace {

Instance instance_from_py(const FeatureSchema& schema, const py::sequence& values) {
  if (py::len(values) != schema.arity())
    throw py::value_error("instance length does not match schema arity");
  Instance x;
  x.reserve(schema.arity());
  for (std::size_t i = 0; i < schema.arity(); ++i) {
    const auto item = values[i];
    if (schema.features[i].kind == FeatureKind::Categorical)
      x.push_back(Value::category(item.cast<std::string>()));
    else
      x.push_back(Value::number(item.cast<double>()));
  }
  return x;
}

py::list instance_to_py(const FeatureSchema& schema, const Instance& x) {
  py::list out;
  for (std::size_t i = 0; i < schema.arity(); ++i) {
    if (schema.features[i].kind == FeatureKind::Categorical)
      out.append(x[i].cat);
    else
      out.append(x[i].num);
  }
  return out;
}

ExplainParams make_params(std::size_t neighborhood_size, int generations, double pc,
                          double pm, std::uint64_t seed, const std::string& dist,
                          int min_leaf, int max_depth) {
  ExplainParams params;
  params.ga = GAParams{neighborhood_size, generations, pc, pm, seed};
  params.distance_kind = parse_distance_kind(dist);
  params.tree = TreeParams{min_leaf, max_depth, 0, nullptr};
  return params;
}

}  // namespace

PYBIND11_MODULE(pylore, m) {
  m.doc() = "local rule-based explanations for black-box classifiers";

  py::class_<FeatureSchema>(m, "Schema")
      .def_static("load", &FeatureSchema::load, py::arg("path"))
      .def_property_readonly("arity", &FeatureSchema::arity)
      .def_property_readonly("labels",
                             [](const FeatureSchema& s) {
                               return py::make_tuple(s.labels[0], s.labels[1]);
                             })
      .def_property_readonly("feature_names", [](const FeatureSchema& s) {
        py::list out;
        for (const auto& f : s.features) out.append(f.name);
        return out;
      });

  py::class_<Dataset>(m, "Dataset")
      .def_property_readonly("size", &Dataset::size)
      .def_property_readonly("schema", [](const Dataset& ds) { return ds.schema; })
      .def("row",
           [](const Dataset& ds, std::size_t i) {
             return instance_to_py(ds.schema, ds.rows.at(i));
           })
      .def("label", [](const Dataset& ds, std::size_t i) -> py::object {
        const int label = ds.labels.at(i);
        if (label < 0) return py::none();
        return py::str(ds.schema.labels[static_cast<std::size_t>(label)]);
      });

  py::class_<BlackBox>(m, "BlackBox")
      .def("predict",
           [](BlackBox& bb, const Dataset& ds, const py::sequence& rows) {
             std::vector<Instance> xs;
             for (const auto& row : rows)
               xs.push_back(instance_from_py(ds.schema, row.cast<py::sequence>()));
             py::list out;
             for (int label : bb.predict(xs))
               out.append(ds.schema.labels[static_cast<std::size_t>(label)]);
             return out;
           })
      .def_property_readonly("query_count", &BlackBox::query_count);

  m.def("load_dataset", &load_dataset, py::arg("csv_path"), py::arg("schema_path"));
  m.def("impute_missing", &impute_missing, py::arg("dataset"));
  m.def(
      "train_test_split",
      [](const Dataset& ds, double train_frac, std::uint64_t seed) {
        auto [train, test] = train_test_split(ds, train_frac, seed);
        return py::make_tuple(std::move(train), std::move(test));
      },
      py::arg("dataset"), py::arg("train_frac") = 0.8, py::arg("seed") = 42);

  m.def(
      "train_ensemble",
      [](const Dataset& ds, int tree_count, std::uint64_t seed) {
        return std::unique_ptr<BlackBox>(BaggedTreeEnsemble::train(ds, tree_count, seed));
      },
      py::arg("dataset"), py::arg("tree_count") = 100, py::arg("seed") = 42);

  m.def(
      "connect",
      [](const std::string& source, const Dataset& train, std::uint64_t seed) {
        return make_blackbox(source, train, seed);
      },
      py::arg("source"), py::arg("train"), py::arg("seed") = 42);

  m.def(
      "distance",
      [](const Dataset& ds, const std::string& kind, const py::sequence& x,
         const py::sequence& z) {
        return distance(parse_distance_kind(kind), ds.schema,
                        instance_from_py(ds.schema, x), instance_from_py(ds.schema, z));
      },
      py::arg("dataset"), py::arg("kind"), py::arg("x"), py::arg("z"));

  m.def(
      "f1_score",
      [](const std::vector<int>& predicted, const std::vector<int>& reference) {
        return f1_score(predicted, reference);
      },
      py::arg("predicted"), py::arg("reference"));

  m.def(
      "explain",
      [](const py::sequence& x, BlackBox& bb, const Dataset& reference,
         std::size_t neighborhood_size, int generations, double pc, double pm,
         std::uint64_t seed, const std::string& dist, int min_leaf, int max_depth) {
        FeatureSchema schema = build_empirical_distributions(reference);
        const auto params = make_params(neighborhood_size, generations, pc, pm, seed,
                                        dist, min_leaf, max_depth);
        Explanation e = explain(instance_from_py(schema, x), bb, schema, params);
        return explanation_to_json(schema, e).dump();
      },
      py::arg("x"), py::arg("blackbox"), py::arg("reference"),
      py::arg("neighborhood_size") = 1000, py::arg("generations") = 10,
      py::arg("pc") = 0.5, py::arg("pm") = 0.2, py::arg("seed") = 42,
      py::arg("distance") = "neuclid", py::arg("min_leaf") = 2,
      py::arg("max_depth") = -1,
      "Explain one instance; returns the explanation document as a JSON string. "
      "`reference` supplies the empirical distributions (the test split, per default).");

  m.def(
      "evaluate",
      [](const Dataset& test, const std::vector<std::size_t>& indices, BlackBox& bb,
         const std::string& method, std::size_t neighborhood_size, int generations,
         double pc, double pm, std::uint64_t seed, const std::string& dist, int min_leaf,
         int max_depth, std::size_t crn_k) {
        FeatureSchema schema = build_empirical_distributions(test);
        HarnessConfig config{make_params(neighborhood_size, generations, pc, pm, seed,
                                         dist, min_leaf, max_depth),
                             parse_generator_kind(method), crn_k};
        return report_to_json(evaluate(test, indices, bb, schema, config)).dump();
      },
      py::arg("test"), py::arg("indices"), py::arg("blackbox"),
      py::arg("method") = "lore", py::arg("neighborhood_size") = 1000,
      py::arg("generations") = 10, py::arg("pc") = 0.5, py::arg("pm") = 0.2,
      py::arg("seed") = 42, py::arg("distance") = "neuclid", py::arg("min_leaf") = 2,
      py::arg("max_depth") = -1, py::arg("crn_k") = 100,
      "Batch evaluation; returns the report (records + aggregates) as JSON.");
}
