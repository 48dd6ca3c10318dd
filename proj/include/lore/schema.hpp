#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "lore/rng.hpp"
#include "lore/value.hpp"

namespace lore {

enum class FeatureKind { Categorical, Continuous };

struct FeatureSpec {
  std::string name;
  FeatureKind kind = FeatureKind::Continuous;

  // categorical domain
  std::vector<std::string> values;
  // continuous bounds
  double min = 0.0;
  double max = 0.0;

  // empirical distribution (filled by build_empirical_distributions)
  std::vector<double> frequencies;   // aligned with `values`
  std::vector<double> sample_pool;   // observed continuous values, multiset

  double range() const { return max - min; }

  int value_index(const std::string& v) const {
    for (std::size_t i = 0; i < values.size(); ++i)
      if (values[i] == v) return static_cast<int>(i);
    return -1;
  }

  bool has_distribution() const {
    return kind == FeatureKind::Categorical ? !frequencies.empty()
                                            : !sample_pool.empty();
  }

  // Draw one value from the empirical distribution.
  Value sample(Rng& rng) const;
};

// Typed description of the feature space plus the binary target.
struct FeatureSchema {
  std::vector<FeatureSpec> features;
  std::string target_name;
  std::array<std::string, 2> labels;

  std::size_t arity() const { return features.size(); }

  int feature_index(const std::string& name) const {
    for (std::size_t i = 0; i < features.size(); ++i)
      if (features[i].name == name) return static_cast<int>(i);
    return -1;
  }

  int label_index(const std::string& label) const {
    if (label == labels[0]) return 0;
    if (label == labels[1]) return 1;
    return -1;
  }

  bool has_distributions() const;

  // Throws DataError naming the offending feature.
  void validate_instance(const Instance& x) const;
  bool instance_valid(const Instance& x) const;

  // Sidecar schema file (JSON), see README for the field contract.
  static FeatureSchema load(const std::string& path);
  static FeatureSchema parse(const std::string& json_text);
};

}  // namespace lore
