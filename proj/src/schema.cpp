#include "lore/schema.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "lore/error.hpp"

namespace lore {

Value FeatureSpec::sample(Rng& rng) const {
  if (kind == FeatureKind::Categorical) {
    double u = rng.uniform();
    double acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      acc += frequencies[i];
      if (u < acc) return Value::category(values[i]);
    }
    return Value::category(values.back());
  }
  return Value::number(sample_pool[rng.index(sample_pool.size())]);
}

bool FeatureSchema::has_distributions() const {
  for (const auto& f : features)
    if (!f.has_distribution()) return false;
  return true;
}

void FeatureSchema::validate_instance(const Instance& x) const {
  if (x.size() != features.size())
    throw DataError("instance arity " + std::to_string(x.size()) +
                    " does not match schema arity " + std::to_string(features.size()));
  for (std::size_t i = 0; i < features.size(); ++i) {
    const auto& spec = features[i];
    const auto& v = x[i];
    if (v.is_missing())
      throw DataError("missing value for feature '" + spec.name + "'");
    if (spec.kind == FeatureKind::Categorical) {
      if (v.kind != ValueKind::Category)
        throw DataError("feature '" + spec.name + "' expects a categorical value");
      if (spec.value_index(v.cat) < 0)
        throw DataError("value '" + v.cat + "' not in the domain of feature '" +
                        spec.name + "'");
    } else {
      if (v.kind != ValueKind::Number)
        throw DataError("feature '" + spec.name + "' expects a numeric value");
      if (!std::isfinite(v.num))
        throw DataError("non-finite value for feature '" + spec.name + "'");
    }
  }
}

bool FeatureSchema::instance_valid(const Instance& x) const {
  try {
    validate_instance(x);
    return true;
  } catch (const DataError&) {
    return false;
  }
}

FeatureSchema FeatureSchema::parse(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("schema is not valid JSON: ") + e.what());
  }

  FeatureSchema schema;
  if (!doc.contains("features") || !doc["features"].is_array() || doc["features"].empty())
    throw DataError("schema must contain a non-empty 'features' array");
  if (!doc.contains("target") || !doc["target"].is_object())
    throw DataError("schema must contain a 'target' object");

  std::set<std::string> seen;
  for (const auto& item : doc["features"]) {
    FeatureSpec spec;
    spec.name = item.at("name").get<std::string>();
    if (!seen.insert(spec.name).second)
      throw DataError("duplicate feature name '" + spec.name + "'");
    const auto kind = item.at("kind").get<std::string>();
    if (kind == "categorical") {
      spec.kind = FeatureKind::Categorical;
      spec.values = item.at("values").get<std::vector<std::string>>();
      if (spec.values.empty())
        throw DataError("categorical feature '" + spec.name + "' has no values");
    } else if (kind == "continuous") {
      spec.kind = FeatureKind::Continuous;
      spec.min = item.at("min").get<double>();
      spec.max = item.at("max").get<double>();
      if (!(spec.min <= spec.max))
        throw DataError("feature '" + spec.name + "' has min > max");
    } else {
      throw DataError("feature '" + spec.name + "' has unknown kind '" + kind + "'");
    }
    schema.features.push_back(std::move(spec));
  }

  const auto& target = doc["target"];
  schema.target_name = target.at("name").get<std::string>();
  auto labels = target.at("labels").get<std::vector<std::string>>();
  if (labels.size() != 2 || labels[0] == labels[1])
    throw DataError("target must declare exactly two distinct labels");
  schema.labels = {labels[0], labels[1]};
  if (schema.feature_index(schema.target_name) >= 0)
    throw DataError("target '" + schema.target_name + "' also appears as a feature");
  return schema;
}

FeatureSchema FeatureSchema::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open schema file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

}  // namespace lore
