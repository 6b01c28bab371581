#pragma once

#include <cstdint>
#include <random>

namespace ratseries {

// Deterministic RNG; all randomized routines take a Rng seeded by the
// caller so runs are reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // uniform-ish in [0, bound); bound must be > 0
  std::uint64_t below(std::uint64_t bound) { return gen_() % bound; }

  // uniform-ish in [lo, hi]
  std::uint64_t range(std::uint64_t lo, std::uint64_t hi) {
    return lo + below(hi - lo + 1);
  }

  bool coin() { return below(2) == 1; }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace ratseries
