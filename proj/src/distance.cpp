#include "lore/distance.hpp"

#include <algorithm>
#include <cmath>

#include "lore/error.hpp"

namespace lore {

namespace {

double simple_match(const FeatureSchema& schema, const Instance& x, const Instance& z,
                    std::size_t h) {
  if (h == 0) return 0.0;
  std::size_t differing = 0;
  for (std::size_t i = 0; i < schema.arity(); ++i) {
    if (schema.features[i].kind != FeatureKind::Categorical) continue;
    if (!(x[i] == z[i])) ++differing;
  }
  return static_cast<double>(differing) / static_cast<double>(h);
}

double norm_euclid(const FeatureSchema& schema, const Instance& x, const Instance& z,
                   std::size_t continuous_count) {
  if (continuous_count == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < schema.arity(); ++i) {
    const auto& spec = schema.features[i];
    if (spec.kind != FeatureKind::Continuous) continue;
    const double range = spec.range();
    if (range <= 0.0) continue;  // zero-range features contribute 0
    const double gap = (x[i].num - z[i].num) / range;
    sum += gap * gap;
  }
  return std::clamp(std::sqrt(sum / static_cast<double>(continuous_count)), 0.0, 1.0);
}

double neuclid_distance(const FeatureSchema& schema, const Instance& x, const Instance& z) {
  const auto m = static_cast<double>(schema.arity());
  std::size_t h = 0;
  for (const auto& f : schema.features)
    if (f.kind == FeatureKind::Categorical) ++h;
  const std::size_t continuous = schema.arity() - h;
  return (static_cast<double>(h) / m) * simple_match(schema, x, z, h) +
         (static_cast<double>(continuous) / m) * norm_euclid(schema, x, z, continuous);
}

// one-hot categoricals, range-scaled continuous
std::vector<double> encode(const FeatureSchema& schema, const Instance& x) {
  std::vector<double> out;
  for (std::size_t i = 0; i < schema.arity(); ++i) {
    const auto& spec = schema.features[i];
    if (spec.kind == FeatureKind::Categorical) {
      for (const auto& v : spec.values) out.push_back(x[i].cat == v ? 1.0 : 0.0);
    } else {
      const double range = spec.range();
      out.push_back(range > 0.0 ? (x[i].num - spec.min) / range : 0.0);
    }
  }
  return out;
}

double cosine_distance(const FeatureSchema& schema, const Instance& x, const Instance& z) {
  const auto ex = encode(schema, x);
  const auto ez = encode(schema, z);
  double dot = 0.0, nx = 0.0, nz = 0.0;
  for (std::size_t i = 0; i < ex.size(); ++i) {
    dot += ex[i] * ez[i];
    nx += ex[i] * ex[i];
    nz += ez[i] * ez[i];
  }
  if (nx == 0.0 && nz == 0.0) return 0.0;
  if (nx == 0.0 || nz == 0.0) return 0.5;  // orthogonal by convention
  const double sim = std::clamp(dot / (std::sqrt(nx) * std::sqrt(nz)), -1.0, 1.0);
  return (1.0 - sim) / 2.0;
}

double minmax_distance(const FeatureSchema& schema, const Instance& x, const Instance& z) {
  double sum = 0.0;
  for (std::size_t i = 0; i < schema.arity(); ++i) {
    const auto& spec = schema.features[i];
    if (spec.kind == FeatureKind::Categorical) {
      sum += x[i] == z[i] ? 0.0 : 1.0;
    } else {
      const double range = spec.range();
      if (range > 0.0) sum += std::clamp(std::abs(x[i].num - z[i].num) / range, 0.0, 1.0);
    }
  }
  return sum / static_cast<double>(schema.arity());
}

}  // namespace

DistanceKind parse_distance_kind(const std::string& name) {
  if (name == "neuclid") return DistanceKind::Neuclid;
  if (name == "cosine") return DistanceKind::Cosine;
  if (name == "minmax") return DistanceKind::Minmax;
  throw UsageError("unknown distance '" + name + "' (expected neuclid, cosine or minmax)");
}

std::string distance_kind_name(DistanceKind kind) {
  switch (kind) {
    case DistanceKind::Neuclid: return "neuclid";
    case DistanceKind::Cosine: return "cosine";
    case DistanceKind::Minmax: return "minmax";
  }
  return "neuclid";
}

double distance(DistanceKind kind, const FeatureSchema& schema, const Instance& x,
                const Instance& z) {
  if (x.size() != schema.arity() || z.size() != schema.arity())
    throw DataError("distance: instance arity does not match the schema");
  switch (kind) {
    case DistanceKind::Neuclid: return neuclid_distance(schema, x, z);
    case DistanceKind::Cosine: return cosine_distance(schema, x, z);
    case DistanceKind::Minmax: return minmax_distance(schema, x, z);
  }
  return 0.0;
}

}  // namespace lore
