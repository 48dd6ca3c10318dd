#include "lore/genetic.hpp"

#include <algorithm>
#include <numeric>

#include "lore/error.hpp"

namespace lore {

NeighborhoodStats Neighborhood::stats(const FeatureSchema& schema, const Instance& x,
                                      int x_label, DistanceKind kind) const {
  NeighborhoodStats out;
  out.size = instances.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (labels[i] == x_label) ++out.same_label_count;
    sum += distance(kind, schema, x, instances[i]);
  }
  out.mean_distance_to_x = instances.empty() ? 0.0 : sum / static_cast<double>(out.size);
  return out;
}

double fitness(FitnessKind kind, const Instance& x, const Instance& z, int bx, int bz,
               double d) {
  const bool outcome = kind == FitnessKind::Same ? bx == bz : bx != bz;
  const double indicator = outcome ? 1.0 : 0.0;
  const double equal = instances_equal(x, z) ? 1.0 : 0.0;
  return indicator + (1.0 - d) - equal;
}

std::pair<Instance, Instance> crossover_two_point(const Instance& a, const Instance& b,
                                                  Rng& rng) {
  const std::size_t m = a.size();
  Instance c1 = a, c2 = b;
  if (m < 2) return {c1, c2};
  // cut indices i < j over [0, m]; segment [i, j) swaps
  std::size_t i = rng.index(m + 1), j = rng.index(m + 1);
  if (i == j) j = i == m ? 0 : i + 1;
  if (i > j) std::swap(i, j);
  for (std::size_t k = i; k < j; ++k) std::swap(c1[k], c2[k]);
  return {c1, c2};
}

Instance mutate(const Instance& z, const FeatureSchema& schema, double pm, Rng& rng) {
  // pm selects whole individuals: with probability pm the individual is
  // mutated, otherwise it passes through untouched.  A mutated individual
  // resamples each feature from its empirical distribution with probability
  // 1/2, so on average half the slots change.
  Instance out = z;
  if (!rng.bernoulli(pm)) return out;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (rng.bernoulli(0.5)) out[i] = schema.features[i].sample(rng);
  return out;
}

namespace {

struct Evaluated {
  std::vector<int> labels;
  std::vector<double> scores;
};

Evaluated evaluate_population(const std::vector<Instance>& pop, FitnessKind kind,
                              const Instance& x, int bx, BlackBox& bb,
                              const FeatureSchema& schema, DistanceKind distance_kind) {
  Evaluated out;
  out.labels = bb.predict(pop);
  out.scores.reserve(pop.size());
  for (std::size_t i = 0; i < pop.size(); ++i) {
    const double d = distance(distance_kind, schema, x, pop[i]);
    out.scores.push_back(fitness(kind, x, pop[i], bx, out.labels[i], d));
  }
  return out;
}

}  // namespace

Neighborhood genetic_neigh(const Instance& x, FitnessKind kind, BlackBox& bb,
                           const GAParams& params, const FeatureSchema& schema,
                           DistanceKind distance_kind) {
  if (params.population < 2) throw UsageError("population size must be >= 2");
  if (params.generations < 1) throw UsageError("generations must be >= 1");
  if (!schema.has_distributions())
    throw DataError("schema has no empirical distributions; build them first");
  schema.validate_instance(x);

  Rng rng(params.seed);
  const std::size_t n = params.population;

  // P0 is N copies of x, so b(x) falls out of the first batch; exactly
  // N*(G+1) queries in total.
  std::vector<Instance> population(n, x);
  std::vector<int> labels0 = bb.predict(population);
  const int bx = labels0.front();
  Evaluated eval;
  eval.labels = std::move(labels0);
  eval.scores.assign(n, fitness(kind, x, x, bx, bx, 0.0));

  for (int gen = 0; gen < params.generations; ++gen) {
    // tournament selection, size 3, with replacement
    std::vector<Instance> selected;
    selected.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = rng.index(n);
      for (int t = 1; t < 3; ++t) {
        const std::size_t challenger = rng.index(n);
        if (eval.scores[challenger] > eval.scores[best]) best = challenger;
      }
      selected.push_back(population[best]);
    }

    // shuffled consecutive pairs; each pair crosses with probability pc
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = n; i > 1; --i)
      std::swap(order[i - 1], order[rng.index(i)]);
    std::vector<Instance> crossed(n);
    for (std::size_t p = 0; p + 1 < n; p += 2) {
      const std::size_t a = order[p], b = order[p + 1];
      if (rng.bernoulli(params.pc)) {
        auto [c1, c2] = crossover_two_point(selected[a], selected[b], rng);
        crossed[a] = std::move(c1);
        crossed[b] = std::move(c2);
      } else {
        crossed[a] = selected[a];
        crossed[b] = selected[b];
      }
    }
    if (n % 2 == 1) crossed[order[n - 1]] = selected[order[n - 1]];

    for (auto& z : crossed) z = mutate(z, schema, params.pm, rng);

    population = std::move(crossed);
    eval = evaluate_population(population, kind, x, bx, bb, schema, distance_kind);
  }

  Neighborhood out;
  out.instances = std::move(population);
  out.labels = std::move(eval.labels);
  out.provenance = kind == FitnessKind::Same ? "genetic:same" : "genetic:different";
  return out;
}

Neighborhood build_neighborhood(const Instance& x, BlackBox& bb, const GAParams& params,
                                const FeatureSchema& schema, DistanceKind distance_kind) {
  GAParams half = params;
  half.population = params.population / 2;
  half.seed = params.seed;
  Neighborhood same = genetic_neigh(x, FitnessKind::Same, bb, half, schema, distance_kind);
  half.seed = params.seed + 0x9e3779b97f4a7c15ULL;
  Neighborhood diff =
      genetic_neigh(x, FitnessKind::Different, bb, half, schema, distance_kind);

  Neighborhood out;
  out.provenance = "lore";
  out.instances = std::move(same.instances);
  out.instances.insert(out.instances.end(), diff.instances.begin(), diff.instances.end());
  out.labels = std::move(same.labels);
  out.labels.insert(out.labels.end(), diff.labels.begin(), diff.labels.end());
  return out;
}

}  // namespace lore
