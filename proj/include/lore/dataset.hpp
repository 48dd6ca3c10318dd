#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lore/schema.hpp"
#include "lore/value.hpp"

namespace lore {

// Labels are stored as indexes into schema.labels; -1 = unlabeled row.
struct Dataset {
  FeatureSchema schema;
  std::vector<Instance> rows;
  std::vector<int> labels;

  std::size_t size() const { return rows.size(); }
};

// CSV + sidecar schema. Unparseable/blank cells become Missing; call
// impute_missing before feeding rows anywhere else.
Dataset load_dataset(const std::string& csv_path, const std::string& schema_path);

// Column mean (continuous) / column mode (categorical, ties by schema
// value order). Throws DataError for an all-missing column.
Dataset impute_missing(const Dataset& ds);

std::pair<Dataset, Dataset> train_test_split(const Dataset& ds, double train_frac,
                                             std::uint64_t seed);

// Populates per-feature samplers from ds: category frequency tables and
// continuous value multisets.
FeatureSchema build_empirical_distributions(const Dataset& ds);

// Minimal RFC-4180 reader, exposed for tests.
std::vector<std::vector<std::string>> read_csv(const std::string& path);

}  // namespace lore
