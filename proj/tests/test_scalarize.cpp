#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "moca/generators.hpp"
#include "moca/quality.hpp"
#include "moca/scalarize.hpp"

using namespace moca;

namespace {

ProblemInstance knapsack2(std::vector<std::int64_t> weights, std::int64_t capacity,
                          std::vector<std::vector<std::int64_t>> profits) {
  KnapsackData kp;
  kp.weights = std::move(weights);
  kp.capacity = capacity;
  kp.profits = std::move(profits);
  int d = static_cast<int>(kp.profits.front().size());
  return ProblemInstance(Sense::maximize, d, std::move(kp));
}

ProblemInstance tsp_from_costs(std::vector<std::vector<std::vector<std::int64_t>>> costs) {
  int d = static_cast<int>(costs.size());
  std::size_t n = costs.front().size();
  TspData t;
  t.coords.assign(d, std::vector<std::array<std::int64_t, 2>>(n, {0, 0}));
  t.costs = std::move(costs);
  return ProblemInstance(Sense::minimize, d, std::move(t));
}

/// Exact lambda-optimum by exhaustion over all feasible solutions.
Rational brute_force_optimum(const ProblemInstance& instance, const WeightVector& lambda) {
  bool first = true;
  Rational best;
  for (const ObjectiveVector& image : brute_force_images(instance)) {
    Rational v = weighted_value(lambda, image);
    if (first || (instance.sense() == Sense::minimize ? v < best : v > best)) {
      best = v;
      first = false;
    }
  }
  return best;
}

std::vector<WeightVector> lambda_sample(int d, int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<WeightVector> out;
  out.push_back(WeightVector::uniform(d));
  for (int i = 0; i < d; ++i) {
    std::vector<Rational> unit(d, Rational(0));
    unit[i] = Rational(1);
    out.emplace_back(std::move(unit));
  }
  while (static_cast<int>(out.size()) < count) {
    std::vector<Rational> raw(d);
    bool nonzero = false;
    for (int i = 0; i < d; ++i) {
      raw[i] = Rational(rng.uniform(0, 1000));
      nonzero = nonzero || !raw[i].is_zero();
    }
    if (nonzero) out.push_back(WeightVector::normalized(std::move(raw)));
  }
  return out;
}

}  // namespace

TEST_CASE("compute_bounds knapsack") {
  ProblemInstance instance = knapsack2({2, 3}, 5, {{3, 1}, {1, 4}});
  Bounds b = compute_bounds(instance);
  CHECK(b.lower == Rational(1));
  CHECK(b.upper == Rational(5));
}

TEST_CASE("compute_bounds knapsack single item") {
  ProblemInstance instance = knapsack2({1}, 1, {{5, 5}});
  Bounds b = compute_bounds(instance);
  CHECK(b.lower == Rational(5));
  CHECK(b.upper == Rational(5));
}

TEST_CASE("compute_bounds tsp constant edges") {
  std::vector<std::vector<std::int64_t>> mat(4, std::vector<std::int64_t>(4, 7));
  for (int i = 0; i < 4; ++i) mat[i][i] = 0;
  ProblemInstance instance = tsp_from_costs({mat, mat});
  Bounds b = compute_bounds(instance);
  CHECK(b.lower == Rational(7));
  CHECK(b.upper == Rational(28));
}

TEST_CASE("compute_bounds rejects all-zero data") {
  CHECK_THROWS_AS(compute_bounds(knapsack2({1}, 1, {{0, 0}})), ConfigError);
}

TEST_CASE("compute_bounds soundness on random tiny instances") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    ProblemInstance instance = gen_knapsack_uniform(7, seed);
    Bounds b = compute_bounds(instance);
    for (const ObjectiveVector& image : brute_force_images(instance))
      for (std::size_t i = 0; i < image.dim(); ++i)
        CHECK((image[i].is_zero() || (b.lower <= image[i] && image[i] <= b.upper)));
  }
}

TEST_CASE("extended greedy on the ratio example") {
  // items (p, w) = (10,5), (7,4), (3,1), capacity 5, optimum 10
  ProblemInstance instance = knapsack2({5, 4, 1}, 5, {{10, 0}, {7, 0}, {3, 0}});
  KnapsackExtendedGreedy greedy;
  WeightVector e1({Rational(1), Rational(0)});
  SolutionRecord rec = greedy.solve(instance, e1);
  CHECK(weighted_value(e1, rec.image) == Rational(10));
  CHECK(rec.origin_weights.size() == 1);
  CHECK(rec.origin_weights.front() == e1);
}

TEST_CASE("extended greedy falls back to the best single item") {
  // greedy-by-ratio packs the small item and blocks the big one
  ProblemInstance instance = knapsack2({1, 10}, 10, {{6, 0}, {50, 0}});
  KnapsackExtendedGreedy greedy;
  WeightVector e1({Rational(1), Rational(0)});
  SolutionRecord rec = greedy.solve(instance, e1);
  CHECK(rec.encoding == Encoding{1});
  CHECK(rec.image[0] == Rational(50));
}

TEST_CASE("extended greedy edge cases") {
  KnapsackExtendedGreedy greedy;
  WeightVector e1({Rational(1), Rational(0)});

  ProblemInstance single = knapsack2({3}, 5, {{4, 2}});
  CHECK(greedy.solve(single, e1).encoding == Encoding{0});

  ProblemInstance oversized = knapsack2({7, 9}, 5, {{4, 2}, {8, 1}});
  SolutionRecord rec = greedy.solve(oversized, e1);
  CHECK(rec.encoding.empty());
  CHECK(rec.image[0] == Rational(0));
}

TEST_CASE("exact dp on the ratio example and unit weights") {
  ProblemInstance instance = knapsack2({5, 4, 1}, 5, {{10, 0}, {7, 0}, {3, 0}});
  KnapsackExactDp dp;
  WeightVector e1({Rational(1), Rational(0)});
  CHECK(weighted_value(e1, dp.solve(instance, e1).image) == Rational(10));

  // lambda = e^i reduces to single-objective knapsack
  ProblemInstance two = knapsack2({2, 2}, 2, {{5, 1}, {1, 9}});
  WeightVector e2({Rational(0), Rational(1)});
  CHECK(dp.solve(two, e1).encoding == Encoding{0});
  CHECK(dp.solve(two, e2).encoding == Encoding{1});
}

TEST_CASE("dp capacity limit raises a resource error") {
  ProblemInstance instance = knapsack2({5}, 10, {{1, 1}});
  KnapsackExactDp dp(/*capacity_limit=*/5);
  WeightVector e1({Rational(1), Rational(0)});
  CHECK_THROWS_AS(dp.solve(instance, e1), ResourceError);
}

TEST_CASE("oracle/instance mismatch is a configuration error") {
  ProblemInstance instance = gen_tsp(4, 7);
  KnapsackExtendedGreedy greedy;
  CHECK_THROWS_AS(greedy.solve(instance, WeightVector::uniform(3)), ConfigError);
}

TEST_CASE("call counter increments once per invocation") {
  ProblemInstance instance = gen_knapsack_uniform(5, 3);
  KnapsackExtendedGreedy greedy;
  CHECK(greedy.call_count() == 0);
  WeightVector w = WeightVector::uniform(3);
  greedy.solve(instance, w);
  greedy.solve(instance, w);
  CHECK(greedy.call_count() == 2);
}

TEST_CASE("christofides on the scaled unit square") {
  std::vector<std::vector<std::array<std::int64_t, 2>>> coords = {
      {{0, 0}, {0, 10}, {10, 0}, {10, 10}},
      {{0, 0}, {0, 10}, {10, 0}, {10, 10}},
  };
  ProblemInstance instance(Sense::minimize, 2, TspData::from_coords(coords));
  TspChristofides oracle;
  CHECK(oracle.alpha() == Rational(3, 2));
  SolutionRecord rec = oracle.solve(instance, WeightVector::uniform(2));
  CHECK(rec.image[0] == Rational(40));  // held out optimum for the square
}

TEST_CASE("christofides on collinear equally spaced cities") {
  std::vector<std::vector<std::array<std::int64_t, 2>>> coords = {
      {{0, 0}, {1, 0}, {2, 0}, {3, 0}},
      {{0, 0}, {1, 0}, {2, 0}, {3, 0}},
  };
  ProblemInstance instance(Sense::minimize, 2, TspData::from_coords(coords));
  TspChristofides oracle;
  SolutionRecord rec = oracle.solve(instance, WeightVector::uniform(2));
  CHECK(rec.image[0] == Rational(6));
}

TEST_CASE("christofides tours visit every city exactly once") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    ProblemInstance instance = gen_tsp(9, seed);
    TspChristofides oracle;
    SolutionRecord rec = oracle.solve(instance, WeightVector::uniform(3));
    Encoding sorted = rec.encoding;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < 9; ++i) CHECK(sorted[i] == i);
  }
}

TEST_CASE("christofides without matching declares alpha 2") {
  TspChristofides fallback(false);
  CHECK(fallback.alpha() == Rational(2));
}

TEST_CASE("double tree stays within factor 2 of the optimum") {
  TspDoubleTree oracle;
  TspHeldKarp exact;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    ProblemInstance instance = gen_tsp(7, seed);
    for (const WeightVector& lambda : lambda_sample(3, 6, seed)) {
      Rational approx = weighted_value(lambda, oracle.solve(instance, lambda).image);
      Rational opt = weighted_value(lambda, exact.solve(instance, lambda).image);
      CHECK(approx <= Rational(2) * opt);
    }
  }
}

TEST_CASE("held-karp equals permutation brute force") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    ProblemInstance instance = gen_tsp(5 + static_cast<int>(seed % 3), seed);
    TspHeldKarp exact;
    for (const WeightVector& lambda : lambda_sample(3, 5, seed * 11)) {
      Rational value = weighted_value(lambda, exact.solve(instance, lambda).image);
      CHECK(value == brute_force_optimum(instance, lambda));
    }
  }
}

TEST_CASE("held-karp city limit raises a resource error") {
  ProblemInstance instance = gen_tsp(6, 1);
  TspHeldKarp limited(5);
  CHECK_THROWS_AS(limited.solve(instance, WeightVector::uniform(3)), ResourceError);
}

TEST_CASE("tsp generator rejects fewer than 3 cities") {
  CHECK_THROWS_AS(gen_tsp(2, 1), ContractError);
}

TEST_CASE("oracle soundness against brute force on tiny instances") {
  // knapsack oracles
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    ProblemInstance instance = gen_knapsack_uniform(9, seed);
    KnapsackExtendedGreedy greedy;
    KnapsackExactDp dp;
    for (const WeightVector& lambda : lambda_sample(3, 10, seed * 17)) {
      Rational opt = brute_force_optimum(instance, lambda);
      Rational greedy_value = weighted_value(lambda, greedy.solve(instance, lambda).image);
      Rational dp_value = weighted_value(lambda, dp.solve(instance, lambda).image);
      CHECK(greedy_value * Rational(2) >= opt);
      CHECK(greedy_value <= opt);
      CHECK(dp_value == opt);
    }
  }
  // tsp oracles
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    ProblemInstance instance = gen_tsp(6, seed);
    TspChristofides christofides;
    TspHeldKarp held_karp;
    for (const WeightVector& lambda : lambda_sample(3, 10, seed * 19)) {
      Rational opt = brute_force_optimum(instance, lambda);
      Rational chr = weighted_value(lambda, christofides.solve(instance, lambda).image);
      CHECK(chr >= opt);
      // nearest-integer edge rounding can break the triangle inequality by
      // one unit per comparison, so allow the same additive slack here
      CHECK(chr <= Rational(3, 2) * opt + Rational(3 * static_cast<long long>(instance.size())));
      CHECK(weighted_value(lambda, held_karp.solve(instance, lambda).image) == opt);
    }
  }
}

TEST_CASE("dp equals brute force on all lambda samples up to 12 items") {
  for (std::uint64_t seed = 20; seed <= 23; ++seed) {
    ProblemInstance instance = gen_knapsack_uniform(12, seed);
    KnapsackExactDp dp;
    for (const WeightVector& lambda : lambda_sample(3, 8, seed)) {
      CHECK(weighted_value(lambda, dp.solve(instance, lambda).image) == brute_force_optimum(instance, lambda));
    }
  }
}

TEST_CASE("oracle factory") {
  CHECK(make_oracle("greedy")->alpha() == Rational(2));
  CHECK(make_oracle("dp")->alpha() == Rational(1));
  CHECK(make_oracle("christofides")->alpha() == Rational(3, 2));
  CHECK(make_oracle("double-tree")->alpha() == Rational(2));
  CHECK(make_oracle("held-karp")->alpha() == Rational(1));
  CHECK_THROWS_AS(make_oracle("nope"), ConfigError);
}
