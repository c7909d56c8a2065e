/**
 * @file generators.hpp
 * @brief Deterministic pseudorandom instance generators.
 *
 * Instances are a pure function of (problem, n, d, seed). The generator is
 * implemented in-repo (xoshiro256** seeded via splitmix64, with an unbiased
 * multiply-shift bounded draw) so identical specs reproduce identical
 * instance bytes on every platform.
 */

#ifndef MOCA_GENERATORS_HPP
#define MOCA_GENERATORS_HPP

#include <cstdint>
#include <string>

#include "moca/instance.hpp"

namespace moca {

/// xoshiro256** with splitmix64 seeding; draw order is part of the format.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();

  /// Uniform integer in [lo, hi], inclusive; unbiased (Lemire rejection).
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);

 private:
  std::uint64_t state_[4];
};

struct GeneratorSpec {
  std::string problem;  ///< knapsack-uniform, knapsack-conflicting, tsp
  int n = 0;
  int d = 3;
  std::uint64_t seed = 0;
};

/// Weights and each profit column i.i.d. uniform in [0,1000]; capacity is
/// half the total weight, rounded up.
ProblemInstance gen_knapsack_uniform(int n, std::uint64_t seed, int d = 3);

/// Negatively correlated profits: f1 in [0,1000], f2 in [0,1000-f1],
/// f3 in [max(900-f1-f2,0), min(1100-f1-f2,1000-f1)]. Requires d = 3.
ProblemInstance gen_knapsack_conflicting(int n, std::uint64_t seed);

/// One integer coordinate pair per city and objective on a 1000x1000 grid;
/// costs are nearest-integer Euclidean distances per objective.
ProblemInstance gen_tsp(int n, std::uint64_t seed, int d = 3);

ProblemInstance make_instance(const GeneratorSpec& spec);

/// Stable instance identifier used in benchmark records and file names.
std::string spec_id(const GeneratorSpec& spec);

}  // namespace moca

#endif  // MOCA_GENERATORS_HPP
