#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lore/blackbox.hpp"
#include "lore/distance.hpp"
#include "lore/rng.hpp"
#include "lore/schema.hpp"
#include "lore/value.hpp"

namespace lore {

struct GAParams {
  std::size_t population = 1000;  // N
  int generations = 10;           // G
  double pc = 0.5;
  double pm = 0.2;
  std::uint64_t seed = 0;
};

enum class FitnessKind { Same, Different };

struct NeighborhoodStats {
  std::size_t size = 0;
  std::size_t same_label_count = 0;  // instances sharing b(x)'s label
  double mean_distance_to_x = 0.0;
};

struct Neighborhood {
  std::vector<Instance> instances;
  std::vector<int> labels;  // cached black-box labels, aligned
  std::string provenance;
  bool truncated = false;  // gen_rnd's stratification cap was hit

  NeighborhoodStats stats(const FeatureSchema& schema, const Instance& x, int x_label,
                          DistanceKind kind) const;
};

// fitness^x_= / fitness^x_!= : outcome indicator + (1 - d) - I_{x=z}.
double fitness(FitnessKind kind, const Instance& x, const Instance& z, int bx, int bz,
               double d);

// Two cut points i<j drawn over feature positions; children swap [i, j).
std::pair<Instance, Instance> crossover_two_point(const Instance& a, const Instance& b,
                                                  Rng& rng);

// With probability pm the individual is mutated; a mutated individual
// resamples each feature from its empirical distribution with probability
// 1/2. Otherwise z is returned unchanged.
Instance mutate(const Instance& z, const FeatureSchema& schema, double pm, Rng& rng);

// One GA run (population of N, G generations, tournament selection of
// size 3). Exactly N*(G+1) black-box queries.
Neighborhood genetic_neigh(const Instance& x, FitnessKind kind, BlackBox& bb,
                           const GAParams& params, const FeatureSchema& schema,
                           DistanceKind distance_kind);

// Z = Z_= ∪ Z_≠, each built with population N/2. Duplicates retained.
Neighborhood build_neighborhood(const Instance& x, BlackBox& bb, const GAParams& params,
                                const FeatureSchema& schema, DistanceKind distance_kind);

}  // namespace lore
