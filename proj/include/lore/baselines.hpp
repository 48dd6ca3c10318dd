#pragma once

#include <cstdint>
#include <string>

#include "lore/blackbox.hpp"
#include "lore/dataset.hpp"
#include "lore/distance.hpp"
#include "lore/genetic.hpp"

namespace lore {

enum class GeneratorKind { Lore, Crn, Rnd, Ros, Global };

GeneratorKind parse_generator_kind(const std::string& name);
std::string generator_kind_name(GeneratorKind kind);

// k nearest test-set instances to x; ties broken by dataset order.
Neighborhood gen_crn(const Instance& x, const Dataset& test, BlackBox& bb, std::size_t k,
                     const FeatureSchema& schema, DistanceKind distance_kind);

// crn plus feature-wise random instances until both classes reach
// floor(N/2), capped at 50*N draws (cap hit -> truncated flag).
Neighborhood gen_rnd(const Instance& x, const Dataset& test, BlackBox& bb,
                     const FeatureSchema& schema, std::size_t n, std::uint64_t seed,
                     DistanceKind distance_kind, std::size_t k = 100);

// rnd plus uniform random oversampling of the minority class.
Neighborhood gen_ros(const Instance& x, const Dataset& test, BlackBox& bb,
                     const FeatureSchema& schema, std::size_t n, std::uint64_t seed,
                     DistanceKind distance_kind, std::size_t k = 100);

// Z = X: the whole test set labeled by b (one shared surrogate per run).
Neighborhood gen_global(const Dataset& test, BlackBox& bb);

}  // namespace lore
