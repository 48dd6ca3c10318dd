#include "lore/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>

#include "lore/error.hpp"
#include "lore/rng.hpp"

namespace lore {

namespace {

bool parse_double(const std::string& s, double& out) {
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end && std::isfinite(out);
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open CSV file: " + path);

  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  char ch;
  while (in.get(ch)) {
    any = true;
    if (quoted) {
      if (ch == '"') {
        if (in.peek() == '"') {
          in.get(ch);
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      row.push_back(field);
      field.clear();
    } else if (ch == '\n') {
      row.push_back(field);
      field.clear();
      rows.push_back(row);
      row.clear();
    } else if (ch == '\r') {
      // swallowed; \r\n handled by the \n branch
    } else {
      field += ch;
    }
  }
  if (quoted) throw DataError("unterminated quoted field in " + path);
  if (any && (!field.empty() || !row.empty())) {
    row.push_back(field);
    rows.push_back(row);
  }
  return rows;
}

Dataset load_dataset(const std::string& csv_path, const std::string& schema_path) {
  Dataset ds;
  ds.schema = FeatureSchema::load(schema_path);
  auto cells = read_csv(csv_path);
  if (cells.empty()) throw DataError("CSV has no header row: " + csv_path);

  const auto& header = cells.front();
  const std::size_t m = ds.schema.arity();
  // Header must be the schema features in column order, optionally
  // followed by the target column.
  bool has_target = header.size() == m + 1;
  if (header.size() != m && !has_target)
    throw DataError("CSV has " + std::to_string(header.size()) +
                    " columns, schema expects " + std::to_string(m) + " or " +
                    std::to_string(m + 1));
  for (std::size_t i = 0; i < m; ++i) {
    if (trim(header[i]) != ds.schema.features[i].name)
      throw DataError("CSV column '" + trim(header[i]) + "' does not match schema feature '" +
                      ds.schema.features[i].name + "'");
  }
  if (has_target && trim(header[m]) != ds.schema.target_name)
    throw DataError("CSV column '" + trim(header[m]) + "' does not match target '" +
                    ds.schema.target_name + "'");

  for (std::size_t r = 1; r < cells.size(); ++r) {
    const auto& line = cells[r];
    if (line.size() == 1 && line[0].empty()) continue;  // blank trailing line
    if (line.size() != header.size())
      throw DataError("row " + std::to_string(r) + " has " + std::to_string(line.size()) +
                      " cells, expected " + std::to_string(header.size()));
    Instance x;
    x.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
      const auto& spec = ds.schema.features[i];
      std::string cell = trim(line[i]);
      if (cell.empty() || cell == "?" || cell == "NA") {
        x.push_back(Value::missing());
      } else if (spec.kind == FeatureKind::Continuous) {
        double v;
        if (parse_double(cell, v))
          x.push_back(Value::number(v));
        else
          x.push_back(Value::missing());
      } else {
        if (spec.value_index(cell) < 0)
          throw DataError("row " + std::to_string(r) + ": value '" + cell +
                          "' not in the domain of feature '" + spec.name + "'");
        x.push_back(Value::category(cell));
      }
    }
    int label = -1;
    if (has_target) {
      std::string cell = trim(line[m]);
      label = ds.schema.label_index(cell);
      if (label < 0)
        throw DataError("NonBinaryTarget: row " + std::to_string(r) + " has target '" +
                        cell + "', expected one of '" + ds.schema.labels[0] + "', '" +
                        ds.schema.labels[1] + "'");
    }
    ds.rows.push_back(std::move(x));
    ds.labels.push_back(label);
  }
  return ds;
}

Dataset impute_missing(const Dataset& ds) {
  Dataset out = ds;
  const std::size_t m = ds.schema.arity();
  for (std::size_t i = 0; i < m; ++i) {
    const auto& spec = ds.schema.features[i];
    Value fill;
    bool needed = false;
    for (const auto& row : ds.rows)
      if (row[i].is_missing()) { needed = true; break; }
    if (!needed) continue;

    if (spec.kind == FeatureKind::Continuous) {
      double sum = 0.0;
      std::size_t n = 0;
      for (const auto& row : ds.rows) {
        if (!row[i].is_missing()) { sum += row[i].num; ++n; }
      }
      if (n == 0)
        throw DataError("feature '" + spec.name + "' is entirely missing, no mean exists");
      fill = Value::number(sum / static_cast<double>(n));
    } else {
      std::vector<std::size_t> counts(spec.values.size(), 0);
      std::size_t n = 0;
      for (const auto& row : ds.rows) {
        if (!row[i].is_missing()) { ++counts[spec.value_index(row[i].cat)]; ++n; }
      }
      if (n == 0)
        throw DataError("feature '" + spec.name + "' is entirely missing, no mode exists");
      // ties broken by schema value order
      std::size_t best = 0;
      for (std::size_t v = 1; v < counts.size(); ++v)
        if (counts[v] > counts[best]) best = v;
      fill = Value::category(spec.values[best]);
    }
    for (auto& row : out.rows)
      if (row[i].is_missing()) row[i] = fill;
  }
  return out;
}

std::pair<Dataset, Dataset> train_test_split(const Dataset& ds, double train_frac,
                                             std::uint64_t seed) {
  if (!(train_frac > 0.0 && train_frac < 1.0))
    throw UsageError("train_frac must be in (0, 1)");
  const std::size_t n = ds.rows.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  for (std::size_t i = n; i > 1; --i)
    std::swap(order[i - 1], order[rng.index(i)]);

  const auto train_n =
      static_cast<std::size_t>(std::llround(static_cast<double>(n) * train_frac));
  Dataset train{ds.schema, {}, {}}, test{ds.schema, {}, {}};
  for (std::size_t i = 0; i < n; ++i) {
    auto& part = i < train_n ? train : test;
    part.rows.push_back(ds.rows[order[i]]);
    part.labels.push_back(ds.labels[order[i]]);
  }
  return {std::move(train), std::move(test)};
}

FeatureSchema build_empirical_distributions(const Dataset& ds) {
  if (ds.rows.empty()) throw DataError("cannot build distributions from an empty dataset");
  FeatureSchema schema = ds.schema;
  const double n = static_cast<double>(ds.rows.size());
  for (std::size_t i = 0; i < schema.arity(); ++i) {
    auto& spec = schema.features[i];
    if (spec.kind == FeatureKind::Categorical) {
      spec.frequencies.assign(spec.values.size(), 0.0);
      for (const auto& row : ds.rows) {
        if (row[i].is_missing())
          throw DataError("feature '" + spec.name + "' has missing values; impute first");
        spec.frequencies[spec.value_index(row[i].cat)] += 1.0;
      }
      for (auto& f : spec.frequencies) f /= n;
    } else {
      spec.sample_pool.clear();
      spec.sample_pool.reserve(ds.rows.size());
      for (const auto& row : ds.rows) {
        if (row[i].is_missing())
          throw DataError("feature '" + spec.name + "' has missing values; impute first");
        spec.sample_pool.push_back(row[i].num);
      }
    }
  }
  return schema;
}

}  // namespace lore
