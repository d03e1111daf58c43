#pragma once

// Reproducible random instances for the property campaigns.
//
// Rationals have numerator and denominator drawn uniformly from [-9, 9]
// (denominator never 0) as `lo + (u64 mod (hi - lo + 1))` over a
// std::mt19937_64 stream, so instances replay across standard libraries.
// Each trial gets its own stream seeded with splitmix64(seed + trial).

#include "solvable/numerics.hpp"
#include "solvable/zsystem.hpp"

#include <cstdint>
#include <random>

namespace solvable::app {

std::uint64_t splitmix64(std::uint64_t x);

class InstanceGenerator {
 public:
  explicit InstanceGenerator(std::uint64_t seed) : engine_(seed) {}
  static InstanceGenerator for_trial(std::uint64_t seed, std::uint64_t trial) {
    return InstanceGenerator(splitmix64(seed + trial));
  }

  long integer(long lo, long hi);
  mpq_class rational();
  mpq_class nonzero_rational();
  /// Gaussian rational with both parts from rational().
  Scalar gaussian();
  Scalar nonzero_gaussian();
  /// Invertible change of variables with Gaussian-rational entries.
  LinearChange change();

 private:
  std::mt19937_64 engine_;
};

}  // namespace solvable::app
