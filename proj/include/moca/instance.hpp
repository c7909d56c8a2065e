/**
 * @file instance.hpp
 * @brief Problem instances (knapsack, metric TSP) and solution records.
 *
 * All objective data is integral, so every image is an integral
 * ObjectiveVector and the exact-arithmetic core stays cheap. Instances are
 * immutable after construction and safe to share across threads.
 */

#ifndef MOCA_INSTANCE_HPP
#define MOCA_INSTANCE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "moca/types.hpp"

namespace moca {

/// Multiobjective 0-1 knapsack data (sense is always maximize).
struct KnapsackData {
  std::vector<std::int64_t> weights;               ///< item weights, >= 0
  std::int64_t capacity = 0;                       ///< >= 1
  std::vector<std::vector<std::int64_t>> profits;  ///< n x d, >= 0
};

/// Symmetric TSP data with one cost matrix per objective (sense: minimize).
/// Matrices are derived from per-objective planar coordinates via
/// nearest-integer Euclidean distances.
struct TspData {
  std::vector<std::vector<std::array<std::int64_t, 2>>> coords;  ///< d x n city coordinates
  std::vector<std::vector<std::vector<std::int64_t>>> costs;     ///< d x n x n, symmetric, zero diagonal

  /// Builds the cost matrices from coordinates (TSPLIB EUC_2D rounding).
  static TspData from_coords(std::vector<std::vector<std::array<std::int64_t, 2>>> coords);
};

class ProblemInstance {
 public:
  ProblemInstance(Sense sense, int d, KnapsackData data);
  ProblemInstance(Sense sense, int d, TspData data);

  Sense sense() const { return sense_; }
  int objectives() const { return d_; }
  /// Number of items (knapsack) or cities (tsp).
  std::size_t size() const;

  bool is_knapsack() const { return std::holds_alternative<KnapsackData>(payload_); }
  bool is_tsp() const { return std::holds_alternative<TspData>(payload_); }
  const KnapsackData& knapsack() const { return std::get<KnapsackData>(payload_); }
  const TspData& tsp() const { return std::get<TspData>(payload_); }

 private:
  void validate() const;

  Sense sense_;
  int d_;
  std::variant<KnapsackData, TspData> payload_;
};

/// Problem-specific solution encoding: sorted item indices for knapsack,
/// a city permutation for tsp. Indices are 0-based.
using Encoding = std::vector<int>;

/// A feasible solution with its cached image and provenance: the weight
/// vectors whose scalarizations produced it (empty if not oracle-produced).
struct SolutionRecord {
  Encoding encoding;
  ObjectiveVector image;
  std::vector<WeightVector> origin_weights;
};

/// Exact image of a feasible encoding. Throws FeasibilityError naming the
/// violated constraint otherwise.
ObjectiveVector evaluate(const ProblemInstance& instance, const Encoding& encoding);

}  // namespace moca

#endif  // MOCA_INSTANCE_HPP
