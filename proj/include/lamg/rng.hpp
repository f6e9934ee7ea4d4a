#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

namespace lamg {

// Deterministic random source. Every generator and sampler draws from one
// of these; child streams are split off by index so sharded work does not
// depend on scheduling order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

  std::uint64_t seed() const { return seed_; }

  // Independent stream for case `index` of a run seeded with `seed()`.
  Rng split(std::uint64_t index) const {
    return Rng(mix(seed_ ^ mix(index + 0x9e3779b97f4a7c15ULL)));
  }

  // Fresh stream derived from the current engine state.
  Rng fork() { return Rng(engine_()); }

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound). Bound must be positive.
  std::size_t below(std::size_t bound) {
    // Multiply-shift reduction; identical across standard libraries, unlike
    // std::uniform_int_distribution.
    __extension__ using Wide = unsigned __int128;
    auto wide = static_cast<Wide>(engine_()) * bound;
    return static_cast<std::size_t>(wide >> 64);
  }

  // True with probability p.
  bool chance(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p;
  }

  template <class T>
  const T& pick(std::span<const T> items) {
    return items[below(items.size())];
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace lamg
