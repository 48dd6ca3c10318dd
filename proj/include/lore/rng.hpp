#pragma once

#include <cstdint>
#include <random>

namespace lore {

// Deterministic RNG wrapper. All randomness in the project goes through
// these helpers so that a fixed seed reproduces byte-identical runs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // uniform in [0, 1)
  double uniform() { return (eng_() >> 11) * (1.0 / 9007199254740992.0); }

  // uniform integer in [0, n)
  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(uniform() * static_cast<double>(n));
  }

  bool bernoulli(double p) { return uniform() < p; }

  std::uint64_t raw() { return eng_(); }

  // Independent stream for job i of a run seeded with `seed`.
  static Rng derive(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 over (seed, index)
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return Rng(z ^ (z >> 31));
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace lore
