/**
 * @file scalarize.hpp
 * @brief Weighted-sum oracles per problem class and instance bounds.
 *
 * An oracle returns, for each weight vector lambda, a feasible solution
 * whose lambda-value is within its declared factor alpha of the
 * lambda-optimum (<= alpha * OPT when minimizing, >= OPT / alpha when
 * maximizing). Oracles are pure given (instance, lambda) except for an
 * atomic call counter, so distinct calls may run concurrently.
 */

#ifndef MOCA_SCALARIZE_HPP
#define MOCA_SCALARIZE_HPP

#include <atomic>
#include <cstdint>
#include <memory>
#include <string>

#include "moca/instance.hpp"

namespace moca {

/// Positive bounds with every feasible objective value in {0} u [lower, upper].
struct Bounds {
  Rational lower;
  Rational upper;
};

/// Knapsack: lower = smallest positive single-item profit, upper = largest
/// per-objective profit total. TSP: lower = smallest positive edge cost,
/// upper = n * largest edge cost.
Bounds compute_bounds(const ProblemInstance& instance);

class WeightedSumOracle {
 public:
  virtual ~WeightedSumOracle() = default;

  /// Solves the weighted sum scalarization for lambda. Checks instance
  /// compatibility, stamps provenance, and counts the invocation.
  SolutionRecord solve(const ProblemInstance& instance, const WeightVector& lambda) const;

  const Rational& alpha() const { return alpha_; }
  const std::string& name() const { return name_; }
  std::uint64_t call_count() const { return calls_.load(std::memory_order_relaxed); }
  void reset_call_count() const { calls_.store(0, std::memory_order_relaxed); }

 protected:
  WeightedSumOracle(Rational alpha, std::string name) : alpha_(std::move(alpha)), name_(std::move(name)) {}

  virtual bool supports(const ProblemInstance& instance) const = 0;
  virtual SolutionRecord solve_impl(const ProblemInstance& instance, const WeightVector& lambda) const = 0;

 private:
  Rational alpha_;
  std::string name_;
  mutable std::atomic<std::uint64_t> calls_{0};
};

/// Mirrors the oracle contract as a free function.
inline SolutionRecord solve_weighted_sum(const WeightedSumOracle& oracle, const ProblemInstance& instance,
                                         const WeightVector& lambda) {
  return oracle.solve(instance, lambda);
}

/// Better of greedy-by-ratio packing and best single fitting item (alpha = 2).
class KnapsackExtendedGreedy final : public WeightedSumOracle {
 public:
  KnapsackExtendedGreedy() : WeightedSumOracle(Rational(2), "greedy") {}

 protected:
  bool supports(const ProblemInstance& instance) const override { return instance.is_knapsack(); }
  SolutionRecord solve_impl(const ProblemInstance& instance, const WeightVector& lambda) const override;
};

/// Capacity-indexed dynamic program over exact aggregated profits (alpha = 1).
class KnapsackExactDp final : public WeightedSumOracle {
 public:
  explicit KnapsackExactDp(std::int64_t capacity_limit = 200000)
      : WeightedSumOracle(Rational(1), "dp"), capacity_limit_(capacity_limit) {}

 protected:
  bool supports(const ProblemInstance& instance) const override { return instance.is_knapsack(); }
  SolutionRecord solve_impl(const ProblemInstance& instance, const WeightVector& lambda) const override;

 private:
  std::int64_t capacity_limit_;
};

/// MST + exact minimum-weight perfect matching on the odd-degree vertices +
/// Eulerian shortcut (alpha = 3/2 on metric costs). With exact matching
/// disabled it falls back to the double-tree shortcut and declares alpha = 2.
class TspChristofides final : public WeightedSumOracle {
 public:
  explicit TspChristofides(bool exact_matching = true)
      : WeightedSumOracle(exact_matching ? Rational(3, 2) : Rational(2), "christofides"),
        exact_matching_(exact_matching) {}

 protected:
  bool supports(const ProblemInstance& instance) const override { return instance.is_tsp(); }
  SolutionRecord solve_impl(const ProblemInstance& instance, const WeightVector& lambda) const override;

 private:
  bool exact_matching_;
};

/// MST, doubled edges, Eulerian walk, shortcut (alpha = 2 on metric costs).
class TspDoubleTree final : public WeightedSumOracle {
 public:
  TspDoubleTree() : WeightedSumOracle(Rational(2), "double-tree") {}

 protected:
  bool supports(const ProblemInstance& instance) const override { return instance.is_tsp(); }
  SolutionRecord solve_impl(const ProblemInstance& instance, const WeightVector& lambda) const override;
};

/// Exact bitmask dynamic program (alpha = 1), limited to small city counts.
class TspHeldKarp final : public WeightedSumOracle {
 public:
  explicit TspHeldKarp(int city_limit = 13)
      : WeightedSumOracle(Rational(1), "held-karp"), city_limit_(city_limit) {}

 protected:
  bool supports(const ProblemInstance& instance) const override { return instance.is_tsp(); }
  SolutionRecord solve_impl(const ProblemInstance& instance, const WeightVector& lambda) const override;

 private:
  int city_limit_;
};

/// Factory keyed by the CLI oracle names: greedy, dp, christofides,
/// double-tree, held-karp.
std::unique_ptr<WeightedSumOracle> make_oracle(const std::string& name);

}  // namespace moca

#endif  // MOCA_SCALARIZE_HPP
