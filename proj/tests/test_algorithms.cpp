#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "moca/algorithms.hpp"
#include "moca/generators.hpp"
#include "moca/quality.hpp"

using namespace moca;

namespace {

ProblemInstance knapsack(std::vector<std::int64_t> weights, std::int64_t capacity,
                         std::vector<std::vector<std::int64_t>> profits) {
  KnapsackData kp;
  kp.weights = std::move(weights);
  kp.capacity = capacity;
  kp.profits = std::move(profits);
  int d = static_cast<int>(kp.profits.front().size());
  return ProblemInstance(Sense::maximize, d, std::move(kp));
}

/// An instance whose only feasible solution is the empty packing.
ProblemInstance single_solution_instance() { return knapsack({9, 9}, 1, {{3, 1}, {1, 3}}); }

SolutionRecord fake_record(std::vector<long long> image) {
  std::vector<Rational> v(image.begin(), image.end());
  return SolutionRecord{{}, ObjectiveVector(std::move(v)), {}};
}

std::vector<ObjectiveVector> images_of(const std::vector<SolutionRecord>& records) {
  std::vector<ObjectiveVector> out;
  for (const SolutionRecord& rec : records) out.push_back(rec.image);
  return out;
}

mpz_class key_cap(const ApproxParams& p) {
  mpz_class cap, base(p.a_max - p.a_min + 2);
  mpz_pow_ui(cap.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(p.d));
  return cap;
}

}  // namespace

TEST_CASE("canonical grid keys for a two-value exponent range") {
  std::vector<GridKey> keys = canonical_grid_keys(2, 2);
  REQUIRE(keys.size() == 3);
  CHECK(keys[0].exponents == std::vector<long>{0, 0});
  CHECK(keys[1].exponents == std::vector<long>{0, 1});
  CHECK(keys[2].exponents == std::vector<long>{1, 0});
}

TEST_CASE("canonical grid key count matches the closed form") {
  for (long span : {1L, 2L, 3L, 5L, 8L}) {
    for (int d : {2, 3}) {
      std::vector<GridKey> keys = canonical_grid_keys(span, d);
      // every tuple has minimum zero and all canonical tuples are distinct
      std::set<std::vector<long>> unique;
      for (const GridKey& k : keys) {
        CHECK(*std::min_element(k.exponents.begin(), k.exponents.end()) == 0);
        unique.insert(k.exponents);
      }
      CHECK(unique.size() == keys.size());
      double expected = std::pow(double(span), d) - std::pow(double(span - 1), d);
      CHECK(static_cast<double>(keys.size()) == expected);
    }
  }
}

TEST_CASE("oaa on a single-solution instance terminates with that solution") {
  ProblemInstance instance = single_solution_instance();
  KnapsackExtendedGreedy oracle;
  ConvexApproxResult result = oaa(instance, oracle, Rational(1, 2));
  REQUIRE(result.solutions.size() == 1);
  CHECK(result.solutions.front().encoding.empty());
  CHECK(result.oracle_calls == result.investigated_keys.size());
}

TEST_CASE("oaa output is a certified convex approximation on tiny knapsacks") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    ProblemInstance instance = gen_knapsack_uniform(8, seed);
    std::vector<ObjectiveVector> all_images = brute_force_images(instance);

    KnapsackExactDp exact;
    ConvexApproxResult with_exact = oaa(instance, exact, Rational(1, 2));
    CHECK(verify_convex_approx(images_of(with_exact.solutions), all_images, Rational(3, 2), Sense::maximize));

    KnapsackExtendedGreedy greedy;
    ConvexApproxResult with_greedy = oaa(instance, greedy, Rational(1, 2));
    CHECK(verify_convex_approx(images_of(with_greedy.solutions), all_images, Rational(3), Sense::maximize));
  }
}

TEST_CASE("oaa on a tiny tsp stays within the indicator bound") {
  ProblemInstance instance = gen_tsp(6, 11);
  TspHeldKarp exact;
  ConvexApproxResult result = oaa(instance, exact, Rational(1, 4));
  auto reference = filter_redundant(dual_benson_exact(instance, exact), Sense::minimize);
  IndicatorReport report =
      convex_indicator(images_of(result.solutions), images_of(reference), Sense::minimize, 3);
  CHECK(report.value <= Rational(5, 4));
}

TEST_CASE("oaa respects the grid key cap and key/call bookkeeping") {
  for (std::uint64_t seed = 5; seed <= 8; ++seed) {
    ProblemInstance instance = gen_knapsack_uniform(7, seed);
    KnapsackExtendedGreedy oracle;
    ConvexApproxResult result = oaa(instance, oracle, Rational(1, 2));
    CHECK(result.oracle_calls == result.investigated_keys.size());
    CHECK(result.solutions.size() <= result.oracle_calls);
    CHECK(mpz_class(static_cast<unsigned long>(result.oracle_calls)) <= key_cap(result.params));
    for (const GridKey& key : result.investigated_keys)
      CHECK(*std::min_element(key.exponents.begin(), key.exponents.end()) == 0);
  }
}

TEST_CASE("oaa is deterministic") {
  ProblemInstance instance = gen_knapsack_uniform(8, 42);
  KnapsackExtendedGreedy oracle;
  ConvexApproxResult a = oaa(instance, oracle, Rational(1, 4));
  ConvexApproxResult b = oaa(instance, oracle, Rational(1, 4));
  CHECK(images_of(a.solutions) == images_of(b.solutions));
  CHECK(a.investigated_keys == b.investigated_keys);
}

TEST_CASE("oaa propagates timeouts") {
  ProblemInstance instance = gen_knapsack_uniform(10, 3);
  KnapsackExtendedGreedy oracle;
  RunOptions options;
  options.deadline = std::chrono::steady_clock::now() - std::chrono::milliseconds(1);
  CHECK_THROWS_AS(oaa(instance, oracle, Rational(1, 2), options), TimeoutError);
}

TEST_CASE("grid algorithm on a single-solution instance") {
  ProblemInstance instance = single_solution_instance();
  KnapsackExtendedGreedy oracle;
  RunOptions options;
  options.grid_key_budget = 2000000;
  ConvexApproxResult result = grid_algorithm(instance, oracle, Rational(1, 2), options);
  CHECK(result.solutions.size() == 1);
  CHECK(result.oracle_calls == result.investigated_keys.size());
}

TEST_CASE("grid algorithm enforces its key budget") {
  ProblemInstance instance = gen_knapsack_uniform(8, 2);
  KnapsackExtendedGreedy oracle;
  RunOptions options;
  options.grid_key_budget = 10;
  CHECK_THROWS_AS(grid_algorithm(instance, oracle, Rational(1, 2), options), ResourceError);
}

TEST_CASE("oaa investigates a subset of the grid keys and solutions") {
  ProblemInstance instance = gen_knapsack_uniform(7, 21);
  KnapsackExtendedGreedy oracle;
  RunOptions options;
  options.grid_key_budget = 5000000;
  ConvexApproxResult adaptive = oaa(instance, oracle, Rational(1, 2), options);
  ConvexApproxResult baseline = grid_algorithm(instance, oracle, Rational(1, 2), options);

  CHECK(adaptive.oracle_calls <= baseline.oracle_calls);
  CHECK(adaptive.solutions.size() <= baseline.solutions.size());
  for (const GridKey& key : adaptive.investigated_keys) CHECK(baseline.investigated_keys.count(key) == 1);

  std::vector<ObjectiveVector> all_images = brute_force_images(instance);
  CHECK(verify_convex_approx(images_of(baseline.solutions), all_images, Rational(3), Sense::maximize));
}

TEST_CASE("dual benson requires an exact oracle") {
  ProblemInstance instance = gen_knapsack_uniform(5, 1);
  KnapsackExtendedGreedy greedy;
  CHECK_THROWS_AS(dual_benson_exact(instance, greedy), ConfigError);
}

TEST_CASE("dual benson on a single-solution instance") {
  ProblemInstance instance = single_solution_instance();
  KnapsackExactDp exact;
  auto solutions = dual_benson_exact(instance, exact);
  REQUIRE(solutions.size() == 1);
  CHECK(solutions.front().encoding.empty());
  // one initial call plus one confirmation per corner vertex
  CHECK(exact.call_count() <= 3);
}

TEST_CASE("dual benson finds both supported images and certifies them") {
  ProblemInstance instance = knapsack({1, 1}, 1, {{10, 1}, {1, 10}});
  KnapsackExactDp exact;
  auto solutions = dual_benson_exact(instance, exact);
  std::vector<ObjectiveVector> images = images_of(solutions);
  REQUIRE(images.size() == 2);
  CHECK(images[0] == ObjectiveVector({Rational(1), Rational(10)}));
  CHECK(images[1] == ObjectiveVector({Rational(10), Rational(1)}));

  // final vertices carry the exact lambda-optima
  std::vector<LiftedVertex> vertices = enumerate_extreme_points(images, Sense::maximize);
  std::vector<ObjectiveVector> all_images = brute_force_images(instance);
  CHECK(check_termination_certificate(vertices, all_images, Rational(1), Sense::maximize));
  for (const LiftedVertex& v : vertices) {
    Rational best;
    for (const ObjectiveVector& y : all_images) best = max(best, weighted_value(v.weight, y));
    CHECK(v.z == best);
  }
}

TEST_CASE("dual benson collapses identical images") {
  ProblemInstance instance = knapsack({10, 10}, 10, {{5, 5}, {5, 5}});
  KnapsackExactDp exact;
  CHECK(dual_benson_exact(instance, exact).size() == 1);
}

TEST_CASE("dual benson output is weighted-sum optimal on random tiny instances") {
  for (std::uint64_t seed = 31; seed <= 34; ++seed) {
    ProblemInstance instance = gen_knapsack_uniform(7, seed);
    KnapsackExactDp exact;
    auto solutions = dual_benson_exact(instance, exact);
    std::vector<LiftedVertex> vertices = enumerate_extreme_points(images_of(solutions), Sense::maximize);
    CHECK(check_termination_certificate(vertices, brute_force_images(instance), Rational(1), Sense::maximize));
  }
}

TEST_CASE("filter removes duplicates and envelope-redundant images") {
  std::vector<SolutionRecord> records;
  records.push_back(fake_record({1, 3}));
  records.push_back(fake_record({1, 3}));
  records.push_back(fake_record({3, 1}));
  records.push_back(fake_record({2, 2}));
  auto filtered = filter_redundant(records, Sense::minimize);
  REQUIRE(filtered.size() == 2);
  CHECK(filtered[0].image == ObjectiveVector({Rational(1), Rational(3)}));
  CHECK(filtered[1].image == ObjectiveVector({Rational(3), Rational(1)}));
}

TEST_CASE("filter keeps pairwise non-redundant images") {
  std::vector<SolutionRecord> records;
  records.push_back(fake_record({1, 4}));
  records.push_back(fake_record({2, 2}));
  records.push_back(fake_record({4, 1}));
  CHECK(filter_redundant(records, Sense::minimize).size() == 3);
}

TEST_CASE("filter never changes the envelope") {
  for (std::uint64_t seed = 50; seed <= 55; ++seed) {
    Rng rng(seed);
    std::vector<SolutionRecord> records;
    for (int k = 0; k < 8; ++k)
      records.push_back(fake_record({rng.uniform(0, 30), rng.uniform(0, 30), rng.uniform(0, 30)}));
    auto filtered = filter_redundant(records, Sense::minimize);
    CHECK(!filtered.empty());
    std::vector<ObjectiveVector> before = images_of(records);
    std::vector<ObjectiveVector> after = images_of(filtered);
    for (const LiftedVertex& v : enumerate_extreme_points(before, Sense::minimize)) {
      Rational env;
      bool first = true;
      for (const ObjectiveVector& y : after) {
        Rational val = weighted_value(v.weight, y);
        if (first || val < env) {
          env = val;
          first = false;
        }
      }
      CHECK(env == v.z);
    }
  }
}

TEST_CASE("termination certificate accepts complete sets and rejects gaps") {
  std::vector<ObjectiveVector> all = {ObjectiveVector({Rational(1), Rational(10)}),
                                      ObjectiveVector({Rational(10), Rational(1)})};
  std::vector<LiftedVertex> full = enumerate_extreme_points(all, Sense::minimize);
  CHECK(check_termination_certificate(full, all, Rational(1), Sense::minimize));

  std::vector<ObjectiveVector> partial = {all[1]};
  std::vector<LiftedVertex> vertices = enumerate_extreme_points(partial, Sense::minimize);
  CHECK_FALSE(check_termination_certificate(vertices, all, Rational(1), Sense::minimize));
  CHECK(check_termination_certificate(vertices, all, Rational(1000000), Sense::minimize));
}

TEST_CASE("termination certificate against an exact oracle") {
  ProblemInstance instance = gen_knapsack_uniform(6, 9);
  KnapsackExactDp exact;
  KnapsackExtendedGreedy greedy;
  auto solutions = dual_benson_exact(instance, exact);
  std::vector<LiftedVertex> vertices = enumerate_extreme_points(images_of(solutions), Sense::maximize);
  CHECK(check_termination_certificate(vertices, instance, exact, Rational(1)));
  CHECK_THROWS_AS(check_termination_certificate(vertices, instance, greedy, Rational(1)), ConfigError);
}
