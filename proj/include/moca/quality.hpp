/**
 * @file quality.hpp
 * @brief A-posteriori quality measurement: the exact convex indicator and a
 *        brute-force convex-approximation verifier for tiny instances.
 *
 * The indicator is the worst-case ratio, over all weight vectors, of a
 * set's envelope against a reference envelope. Both envelopes are piecewise
 * linear over the weight set, so on any common linearity cell the ratio is
 * linear-fractional and attains its maximum at a cell vertex; every cell
 * vertex solves d-1 difference hyperplanes (or coordinate planes) together
 * with the normalization. Enumerating those intersections exactly gives the
 * indicator as an exact rational with a witness weight vector.
 */

#ifndef MOCA_QUALITY_HPP
#define MOCA_QUALITY_HPP

#include <cstdint>
#include <vector>

#include "moca/instance.hpp"
#include "moca/types.hpp"

namespace moca {

struct IndicatorReport {
  Rational value;
  WeightVector argmax_weight;
  std::uint64_t candidate_count = 0;  ///< distinct candidate weights evaluated
};

struct IndicatorOptions {
  /// Candidates where both envelopes vanish contribute ratio 1 by default;
  /// error mode rejects them instead.
  enum class ZeroOverZero { one, error };
  ZeroOverZero zero_over_zero = ZeroOverZero::one;
};

/// Exact convex indicator of `s` against the reference `ref` (d in {2,3}).
/// Values below 1 are possible when the reference is not optimal for the
/// weighted sum scalarization. Throws ConfigError when a candidate has a
/// zero reference envelope against a positive measured one (unbounded).
/// OpenMP production implementation.
IndicatorReport convex_indicator(const std::vector<ObjectiveVector>& s, const std::vector<ObjectiveVector>& ref,
                                 Sense sense, int d, const IndicatorOptions& options = {});

/// Single-threaded rational-arithmetic reference implementation.
IndicatorReport convex_indicator_serial(const std::vector<ObjectiveVector>& s,
                                        const std::vector<ObjectiveVector>& ref, Sense sense, int d,
                                        const IndicatorOptions& options = {});

/// True iff `s` is a beta-convex approximation set against the complete
/// image set of a tiny instance (checked exactly at all candidate weights
/// of the common envelope refinement).
bool verify_convex_approx(const std::vector<ObjectiveVector>& s, const std::vector<ObjectiveVector>& all_images,
                          const Rational& beta, Sense sense);

/// Exhaustive deduplicated image enumeration; knapsack up to 20 items, tsp
/// up to 8 cities.
std::vector<ObjectiveVector> brute_force_images(const ProblemInstance& instance);

/// The envelope-active subset: images attaining the weighted-sum optimum
/// over the given image list for some weight vector. The reduced set has
/// the same envelope as the input everywhere.
std::vector<ObjectiveVector> envelope_active_subset(const std::vector<ObjectiveVector>& images, Sense sense);

}  // namespace moca

#endif  // MOCA_QUALITY_HPP
