#include "lore/baselines.hpp"

#include <algorithm>
#include <numeric>

#include "lore/error.hpp"

namespace lore {

GeneratorKind parse_generator_kind(const std::string& name) {
  if (name == "lore") return GeneratorKind::Lore;
  if (name == "crn") return GeneratorKind::Crn;
  if (name == "rnd") return GeneratorKind::Rnd;
  if (name == "ros") return GeneratorKind::Ros;
  if (name == "global") return GeneratorKind::Global;
  throw UsageError("unknown method '" + name +
                   "' (expected lore, crn, rnd, ros or global)");
}

std::string generator_kind_name(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::Lore: return "lore";
    case GeneratorKind::Crn: return "crn";
    case GeneratorKind::Rnd: return "rnd";
    case GeneratorKind::Ros: return "ros";
    case GeneratorKind::Global: return "global";
  }
  return "lore";
}

Neighborhood gen_crn(const Instance& x, const Dataset& test, BlackBox& bb, std::size_t k,
                     const FeatureSchema& schema, DistanceKind distance_kind) {
  if (test.rows.empty()) throw DataError("crn needs a non-empty test set");
  std::vector<std::size_t> order(test.rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> dist(test.rows.size());
  for (std::size_t i = 0; i < test.rows.size(); ++i)
    dist[i] = distance(distance_kind, schema, x, test.rows[i]);
  // stable sort keeps dataset order among ties
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
  if (order.size() > k) order.resize(k);

  Neighborhood out;
  out.provenance = "crn";
  for (auto i : order) out.instances.push_back(test.rows[i]);
  out.labels = bb.predict(out.instances);
  return out;
}

Neighborhood gen_rnd(const Instance& x, const Dataset& test, BlackBox& bb,
                     const FeatureSchema& schema, std::size_t n, std::uint64_t seed,
                     DistanceKind distance_kind, std::size_t k) {
  if (!schema.has_distributions())
    throw DataError("rnd generation needs empirical distributions");
  Neighborhood out = gen_crn(x, test, bb, k, schema, distance_kind);
  out.provenance = "rnd";

  const std::size_t per_class = n / 2;
  std::size_t count0 = 0, count1 = 0;
  for (auto label : out.labels) (label == 0 ? count0 : count1)++;

  Rng rng(seed);
  const std::size_t cap = 50 * n;
  std::size_t draws = 0;
  const std::size_t batch = 64;
  while ((count0 < per_class || count1 < per_class) && draws < cap) {
    std::vector<Instance> fresh;
    fresh.reserve(batch);
    for (std::size_t i = 0; i < batch && draws < cap; ++i, ++draws) {
      Instance z;
      z.reserve(schema.arity());
      for (const auto& spec : schema.features) z.push_back(spec.sample(rng));
      fresh.push_back(std::move(z));
    }
    const auto labels = bb.predict(fresh);
    for (std::size_t i = 0; i < fresh.size(); ++i) {
      auto& count = labels[i] == 0 ? count0 : count1;
      if (count >= per_class) continue;
      ++count;
      out.instances.push_back(std::move(fresh[i]));
      out.labels.push_back(labels[i]);
    }
  }
  out.truncated = count0 < per_class || count1 < per_class;
  return out;
}

Neighborhood gen_ros(const Instance& x, const Dataset& test, BlackBox& bb,
                     const FeatureSchema& schema, std::size_t n, std::uint64_t seed,
                     DistanceKind distance_kind, std::size_t k) {
  Neighborhood out = gen_rnd(x, test, bb, schema, n, seed, distance_kind, k);
  out.provenance = "ros";

  std::vector<std::size_t> class0, class1;
  for (std::size_t i = 0; i < out.labels.size(); ++i)
    (out.labels[i] == 0 ? class0 : class1).push_back(i);
  if (class0.empty() || class1.empty()) return out;  // nothing to balance from

  auto& minority = class0.size() < class1.size() ? class0 : class1;
  const std::size_t target = std::max(class0.size(), class1.size());
  Rng rng(seed ^ 0x5851f42d4c957f2dULL);
  for (std::size_t have = minority.size(); have < target; ++have) {
    const std::size_t pick = minority[rng.index(minority.size())];
    out.instances.push_back(out.instances[pick]);
    out.labels.push_back(out.labels[pick]);
  }
  return out;
}

Neighborhood gen_global(const Dataset& test, BlackBox& bb) {
  if (test.rows.empty()) throw DataError("global surrogate needs a non-empty test set");
  Neighborhood out;
  out.provenance = "global";
  out.instances = test.rows;
  out.labels = bb.predict(out.instances);
  return out;
}

}  // namespace lore
