#pragma once

#include <string>

#include "lore/schema.hpp"
#include "lore/value.hpp"

namespace lore {

enum class DistanceKind { Neuclid, Cosine, Minmax };

DistanceKind parse_distance_kind(const std::string& name);
std::string distance_kind_name(DistanceKind kind);

// Mixed-type distance in [0,1].
//   neuclid: (h/m)*SimpleMatch + ((m-h)/m)*NormEuclid, SimpleMatch =
//            mismatch fraction over categoricals, NormEuclid = RMS of
//            range-scaled continuous gaps, clamped to [0,1].
//   cosine:  cosine distance over the one-hot / range-scaled encoding,
//            rescaled to [0,1].
//   minmax:  mean per-feature normalized absolute difference.
double distance(DistanceKind kind, const FeatureSchema& schema, const Instance& x,
                const Instance& z);

}  // namespace lore
