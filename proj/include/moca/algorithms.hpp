/**
 * @file algorithms.hpp
 * @brief The approximate outer-approximation loop, the grid baseline, the
 *        exact dual outer-approximation reference, redundancy filtering,
 *        and the termination certificate.
 */

#ifndef MOCA_ALGORITHMS_HPP
#define MOCA_ALGORITHMS_HPP

#include <chrono>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "moca/rounding.hpp"
#include "moca/scalarize.hpp"
#include "moca/weightspace.hpp"

namespace moca {

struct RunOptions {
  /// Cooperative wall-clock cutoff; loops poll it and throw TimeoutError.
  std::optional<std::chrono::steady_clock::time_point> deadline;
  /// Hard cap on the grid enumeration of the baseline algorithm.
  std::uint64_t grid_key_budget = 500000;
};

struct ConvexApproxResult {
  std::vector<SolutionRecord> solutions;  ///< deduplicated by image, sorted by image
  std::uint64_t oracle_calls = 0;         ///< equals investigated_keys.size()
  std::set<GridKey> investigated_keys;
  ApproxParams params;
  std::chrono::duration<double, std::milli> wall_time{0};
  Sense sense = Sense::minimize;
};

/// Approximate dual outer-approximation loop: starting from the barycenter
/// weight, repeatedly pops the lexicographically smallest extreme point of
/// the current polyhedron, boundary-rounds and grid-rounds its weight, and
/// calls the oracle once per new grid key. Terminates when every extreme
/// point's rounded key has been investigated; the returned set is a
/// ((1+eps) * alpha)-convex approximation set.
ConvexApproxResult oaa(const ProblemInstance& instance, const WeightedSumOracle& oracle, const Rational& epsilon,
                       const RunOptions& options = {});

/// Baseline: one oracle call per canonical grid weight vector, fanned out
/// in parallel and merged deterministically.
ConvexApproxResult grid_algorithm(const ProblemInstance& instance, const WeightedSumOracle& oracle,
                                  const Rational& epsilon, const RunOptions& options = {});

/// All canonical grid keys over `span` exponent values per coordinate:
/// tuples in [0, span-1]^d with minimum component 0 (exponent tuples
/// differing by a constant shift collapse to one key). Sorted.
std::vector<GridKey> canonical_grid_keys(long span, int d);

/// Exact dual outer-approximation loop (requires alpha = 1): pops extreme
/// points and adds the oracle solution whenever it beats the envelope value
/// exactly. Returns an optimal solution set for the weighted sum
/// scalarization, sorted by image.
std::vector<SolutionRecord> dual_benson_exact(const ProblemInstance& instance, const WeightedSumOracle& oracle,
                                              const RunOptions& options = {});

/// Removes duplicates by image, then every solution whose removal leaves the
/// envelope pointwise unchanged (checked exactly at the extreme points of
/// the reduced polyhedron). Processes candidates in lexicographic image
/// order for determinism.
std::vector<SolutionRecord> filter_redundant(std::vector<SolutionRecord> solutions, Sense sense);

/// True iff every vertex (lambda, z) is beta-sound against the supplied
/// complete image set: z <= beta * lambda^T y for all y (minimize), or
/// beta * z >= lambda^T y (maximize).
bool check_termination_certificate(const std::vector<LiftedVertex>& vertices,
                                   const std::vector<ObjectiveVector>& all_images, const Rational& beta,
                                   Sense sense);

/// Same check against exact lambda-optima supplied by an alpha = 1 oracle.
bool check_termination_certificate(const std::vector<LiftedVertex>& vertices, const ProblemInstance& instance,
                                   const WeightedSumOracle& exact_oracle, const Rational& beta);

}  // namespace moca

#endif  // MOCA_ALGORITHMS_HPP
