#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "moca/generators.hpp"
#include "moca/rounding.hpp"
#include "moca/weightspace.hpp"

using namespace moca;

namespace {

WeightVector random_lambda(Rng& rng, int d, bool allow_zero) {
  for (;;) {
    std::vector<Rational> raw(d);
    bool nonzero = false;
    for (int i = 0; i < d; ++i) {
      std::int64_t v = rng.uniform(0, 1000);
      if (allow_zero && rng.uniform(0, 3) == 0) v = 0;
      raw[i] = Rational(v, 1 + rng.uniform(0, 50));
      nonzero = nonzero || !raw[i].is_zero();
    }
    if (nonzero) return WeightVector::normalized(std::move(raw));
  }
}

/// Exact feasibility check for the convex-hull reconstruction claim: the
/// sorted input is a convex combination of the final sorted vector and its
/// prefix projections at the triggered steps.
void check_convex_reconstruction(const BoundaryRoundResult& res) {
  if (res.triggered.empty()) return;
  std::size_t d = res.sorted_input.size();
  std::size_t levels = res.triggered.size();  // projections proj^{[0,k_l)}

  // ratios lambda_in / lambda_fin must be constant per block, monotone
  // nondecreasing across blocks, and 1 on the untouched suffix
  std::vector<Rational> ratio(levels);
  std::vector<bool> defined(levels, false);
  for (std::size_t l = 0; l < levels; ++l) {
    std::size_t lo = l == 0 ? 0 : static_cast<std::size_t>(res.triggered[l - 1]);
    std::size_t hi = static_cast<std::size_t>(res.triggered[l]);
    for (std::size_t i = lo; i < hi; ++i) {
      if (res.sorted_final[i].is_zero()) {
        CHECK(res.sorted_input[i].is_zero());  // vacuous component
        continue;
      }
      Rational r = res.sorted_input[i] / res.sorted_final[i];
      if (!defined[l]) {
        ratio[l] = r;
        defined[l] = true;
      } else {
        CHECK(ratio[l] == r);
      }
    }
  }
  for (std::size_t l = levels; l-- > 0;) {
    if (!defined[l]) {
      ratio[l] = l + 1 < levels ? ratio[l + 1] : Rational(1);
      defined[l] = true;
    }
  }
  for (std::size_t i = static_cast<std::size_t>(res.triggered.back()); i < d; ++i)
    CHECK(res.sorted_input[i] == res.sorted_final[i]);

  // convex coefficients: mu_0 = ratio_1, mu_l = ratio_{l+1} - ratio_l,
  // mu_L = 1 - ratio_L; feasibility needs them all nonnegative
  Rational previous(0);
  for (std::size_t l = 0; l < levels; ++l) {
    CHECK(previous <= ratio[l]);
    previous = ratio[l];
  }
  CHECK(ratio[levels - 1] <= Rational(1));

  // exact reconstruction: the vectors keeping component i contribute a
  // coefficient sum of exactly ratio_block(i)
  for (std::size_t i = 0; i < d; ++i) {
    std::size_t l = 0;
    while (l < levels && static_cast<std::size_t>(res.triggered[l]) <= i) ++l;
    Rational expected = l < levels ? ratio[l] * res.sorted_final[i] : res.sorted_final[i];
    CHECK(expected == res.sorted_input[i]);
  }
}

}  // namespace

TEST_CASE("epsilon_prime is exact for perfect rational squares") {
  // 1 + 9/16 = (5/4)^2, and 5/4 is representable on the 2^-32 lattice
  ApproxParams p = derive_parameters(Rational(9, 16), Rational(1), Bounds{Rational(1), Rational(10)}, 3);
  CHECK(p.epsilon_prime == Rational(1, 4));
  CHECK(p.epsilon_grid == Rational(9, 16));
}

TEST_CASE("derived quantities follow the closed forms") {
  // direct substitution: eps' = 1/10, alpha = 2, LB = 1, UB = 10, d = 3
  ApproxParams p = derive_parameters_with(Rational(1, 4), Rational(1, 10), Rational(2),
                                          Bounds{Rational(1), Rational(10)}, 3);
  CHECK(p.beta == Rational(11, 5));
  CHECK(p.c == Rational(1, 220));
  CHECK(p.lb == Rational(1, 290400));
  CHECK(p.epsilon_grid == Rational(21, 100));
}

TEST_CASE("squared epsilon_prime never exceeds epsilon") {
  Rng rng(2024);
  Bounds bounds{Rational(1), Rational(1000)};
  for (int trial = 0; trial < 1000; ++trial) {
    Rational eps(1 + rng.uniform(0, 997), 1000);
    ApproxParams p = derive_parameters(eps, Rational(2), bounds, 3);
    Rational one_plus = Rational(1) + p.epsilon_prime;
    CHECK(one_plus * one_plus <= Rational(1) + eps);
    CHECK(p.epsilon_prime.sign() > 0);
  }
}

TEST_CASE("exponent range is extremal") {
  for (long long num : {1, 25, 49}) {
    ApproxParams p = derive_parameters(Rational(num, 100), Rational(3, 2), Bounds{Rational(2), Rational(500)}, 3);
    Rational base = Rational(1) + p.epsilon_prime;
    CHECK(pow(base, p.a_min) <= p.lb);
    CHECK(pow(base, p.a_min + 1) > p.lb);
    Rational top = Rational(1) - Rational(2) * p.lb;
    CHECK(pow(base, p.a_max) >= top);
    CHECK(pow(base, p.a_max - 1) < top);
  }
}

TEST_CASE("epsilon outside (0,1) is rejected, as is unrepresentably small epsilon") {
  Bounds b{Rational(1), Rational(10)};
  CHECK_THROWS_AS(derive_parameters(Rational(0), Rational(1), b, 3), ContractError);
  CHECK_THROWS_AS(derive_parameters(Rational(1), Rational(1), b, 3), ContractError);
  CHECK_THROWS_AS(derive_parameters(Rational(1, std::int64_t(1) << 40), Rational(1), b, 3), ConfigError);
}

TEST_CASE("grid rounding matches the hand-executed base-3/2 example") {
  // lambda = (3/10, 7/10) with delta = 1/2: exponents (-2, 0),
  // snapped (4/9, 1), normalized (4/13, 9/13)
  ApproxParams p;
  p.epsilon = Rational(2);  // permissive shell parameters for the example
  p.epsilon_prime = Rational(1, 2);
  p.epsilon_grid = Rational(5, 4);
  p.alpha = Rational(1);
  p.beta = Rational(3, 2);
  p.c = Rational(1, 100);
  p.lb = Rational(1, 100);
  p.a_min = -12;
  p.a_max = 1;
  p.d = 2;
  p.lattice = std::make_shared<PowerLattice>(Rational(3, 2), -14, 3);

  WeightVector lambda({Rational(3, 10), Rational(7, 10)});
  GridRoundResult res = grid_round(lambda, Rational(1, 2), p);
  CHECK(res.raw_exponents == std::vector<long>{-2, 0});
  CHECK(res.snapped == std::vector<Rational>{Rational(4, 9), Rational(1)});
  CHECK(res.weight == WeightVector({Rational(4, 13), Rational(9, 13)}));
  CHECK(res.key.exponents == std::vector<long>{0, 2});
}

TEST_CASE("uniform weights are a grid fixed point with the zero key") {
  ApproxParams p = derive_parameters(Rational(1, 2), Rational(2), Bounds{Rational(1), Rational(100)}, 3);
  WeightVector uniform = WeightVector::uniform(3);
  for (const Rational& delta : {p.epsilon_prime, p.epsilon_grid}) {
    GridRoundResult res = grid_round(uniform, delta, p);
    CHECK(res.weight == uniform);
    CHECK(res.key.exponents == std::vector<long>{0, 0, 0});
  }
}

TEST_CASE("exact powers are their own ceiling") {
  ApproxParams p = derive_parameters(Rational(1, 2), Rational(1), Bounds{Rational(1), Rational(50)}, 2);
  const PowerLattice& lat = *p.lattice;
  for (long a : {p.a_min, p.a_min / 2, -3L, -1L, 0L}) {
    CHECK(lat.ceil_log_multiple(lat.power(a), 1) == a);
    if (a % 2 == 0) CHECK(lat.ceil_log_multiple(lat.power(a), 2) == a);
  }
}

TEST_CASE("grid rounding rejects components below lb and foreign deltas") {
  ApproxParams p = derive_parameters(Rational(1, 2), Rational(2), Bounds{Rational(1), Rational(100)}, 2);
  WeightVector boundary({p.lb / Rational(2), Rational(1) - p.lb / Rational(2)});
  CHECK_THROWS_AS(grid_round(boundary, p.epsilon_prime, p), ContractError);
  CHECK_THROWS_AS(grid_round(WeightVector::uniform(2), Rational(1, 3), p), ContractError);
}

TEST_CASE("grid sandwich and key closure on random compact weights") {
  Rng rng(555);
  for (int d : {2, 3, 4}) {
    ApproxParams p = derive_parameters(Rational(1 + rng.uniform(0, 90), 100), Rational(2),
                                       Bounds{Rational(1), Rational(200)}, d);
    for (int trial = 0; trial < 150; ++trial) {
      WeightVector lambda = boundary_round(random_lambda(rng, d, true), p).weight;
      for (const Rational& delta : {p.epsilon_prime, p.epsilon_grid}) {
        GridRoundResult res = grid_round(lambda, delta, p);
        for (std::size_t i = 0; i < lambda.dim(); ++i) {
          CHECK(lambda[i] <= res.snapped[i]);
          CHECK(res.snapped[i] <= (Rational(1) + delta) * lambda[i]);
          CHECK(res.raw_exponents[i] >= p.a_min);
          CHECK(res.raw_exponents[i] <= p.a_max + 1);
        }
        CHECK(*std::min_element(res.key.exponents.begin(), res.key.exponents.end()) == 0);
      }
    }
  }
}

TEST_CASE("boundary rounding keeps compact weights untouched") {
  ApproxParams p;
  p.c = Rational(1, 10);
  BoundaryRoundResult res = boundary_round(WeightVector::uniform(3), p);
  CHECK_FALSE(res.rounded);
  CHECK(res.weight == WeightVector::uniform(3));
  CHECK(res.triggered.empty());
}

TEST_CASE("boundary rounding matches the hand-executed zero-prefix example") {
  ApproxParams p;
  p.c = Rational(1, 10);
  WeightVector lambda({Rational(0), Rational(1, 5), Rational(4, 5)});
  BoundaryRoundResult res = boundary_round(lambda, p);
  CHECK(res.rounded);
  CHECK(res.weight == WeightVector({Rational(1, 51), Rational(10, 51), Rational(40, 51)}));
  CHECK(res.triggered == std::vector<int>{1});
  // equality boundary: first component equals c times the second
  CHECK(res.weight[0] == p.c * res.weight[1]);
}

TEST_CASE("boundary rounding pulls simplex corners inside") {
  ApproxParams p;
  p.c = Rational(1, 10);
  BoundaryRoundResult res = boundary_round(WeightVector({Rational(1), Rational(0), Rational(0)}), p);
  CHECK(res.rounded);
  CHECK(in_compact(res.weight, p.c));
  CHECK(res.weight == WeightVector({Rational(10, 11), Rational(1, 22), Rational(1, 22)}));
}

TEST_CASE("boundary rounding properties on random weights") {
  Rng rng(808);
  for (int d : {2, 3, 4}) {
    ApproxParams p = derive_parameters(Rational(1 + rng.uniform(0, 90), 100), Rational(1 + rng.uniform(0, 1)),
                                       Bounds{Rational(1), Rational(1 + rng.uniform(0, 5000))}, d);
    for (int trial = 0; trial < 250; ++trial) {
      WeightVector lambda = random_lambda(rng, d, true);
      BoundaryRoundResult res = boundary_round(lambda, p);

      CHECK(in_compact(res.weight, p.c));
      if (!res.rounded) CHECK(res.weight == lambda);

      // ascending through all rescales, components never decreased
      for (std::size_t i = 0; i + 1 < res.sorted_final.size(); ++i)
        CHECK(res.sorted_final[i] <= res.sorted_final[i + 1]);
      for (std::size_t i = 0; i < res.sorted_final.size(); ++i)
        CHECK(res.sorted_input[i] <= res.sorted_final[i]);

      // exact equality boundary for every triggered prefix
      for (int k : res.triggered) {
        Rational prefix;
        for (int j = 0; j < k; ++j) prefix += res.sorted_final[j];
        CHECK(prefix == p.c * res.sorted_final[k]);
      }

      check_convex_reconstruction(res);
    }
  }
}

TEST_CASE("projection zeroes exactly the chosen components") {
  std::vector<Rational> v = {Rational(1), Rational(2), Rational(3)};
  CHECK(project(v, {0}) == std::vector<Rational>{Rational(0), Rational(2), Rational(3)});
  CHECK(project(project(v, {0}), {1}) == project(v, {0, 1}));
  CHECK(project(project(v, {1}), {1}) == project(v, {1}));
  CHECK_THROWS_AS(project(v, {}), ContractError);
  CHECK_THROWS_AS(project(v, {0, 1, 2}), ContractError);
  CHECK_THROWS_AS(project(v, {5}), ContractError);
}
