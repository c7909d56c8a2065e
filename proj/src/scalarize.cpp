#include "moca/scalarize.hpp"

#include <algorithm>
#include <numeric>

#include "scal_util.hpp"

namespace moca {

Bounds compute_bounds(const ProblemInstance& instance) {
  bool have_positive = false;
  std::int64_t min_positive = 0;

  auto track = [&](std::int64_t v) {
    if (v > 0 && (!have_positive || v < min_positive)) {
      min_positive = v;
      have_positive = true;
    }
  };

  if (instance.is_knapsack()) {
    const KnapsackData& kp = instance.knapsack();
    if (kp.weights.empty()) throw ContractError("compute_bounds: empty instance");
    std::int64_t max_total = 0;
    for (int i = 0; i < instance.objectives(); ++i) {
      std::int64_t total = 0;
      for (const auto& row : kp.profits) {
        track(row[i]);
        total += row[i];
      }
      max_total = std::max(max_total, total);
    }
    if (!have_positive) throw ConfigError("compute_bounds: all profits are zero");
    return Bounds{Rational(min_positive), Rational(max_total)};
  }

  const TspData& t = instance.tsp();
  std::size_t n = instance.size();
  std::int64_t max_edge = 0;
  for (const auto& mat : t.costs) {
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) {
        track(mat[u][v]);
        max_edge = std::max(max_edge, mat[u][v]);
      }
    }
  }
  if (!have_positive) throw ConfigError("compute_bounds: all edge costs are zero");
  return Bounds{Rational(min_positive), Rational(static_cast<std::int64_t>(n) * max_edge)};
}

SolutionRecord WeightedSumOracle::solve(const ProblemInstance& instance, const WeightVector& lambda) const {
  if (lambda.dim() != static_cast<std::size_t>(instance.objectives()))
    throw ContractError("oracle: weight vector dimension mismatch");
  if (!supports(instance))
    throw ConfigError("oracle '" + name_ + "' does not support this problem class");
  SolutionRecord rec = solve_impl(instance, lambda);
  rec.origin_weights = {lambda};
  calls_.fetch_add(1, std::memory_order_relaxed);
  return rec;
}

SolutionRecord KnapsackExtendedGreedy::solve_impl(const ProblemInstance& instance,
                                                  const WeightVector& lambda) const {
  const KnapsackData& kp = instance.knapsack();
  std::size_t n = kp.weights.size();
  std::vector<mpz_class> dir = detail::integer_direction(lambda);

  std::vector<mpz_class> profit(n);
  for (std::size_t e = 0; e < n; ++e) {
    mpz_class acc(0);
    for (std::size_t i = 0; i < dir.size(); ++i) acc += dir[i] * kp.profits[e][i];
    profit[e] = std::move(acc);
  }

  // Ratio order profit/weight, weight 0 counting as infinite; ties broken by
  // smaller item index. Items that do not fit are skipped, not terminal.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    mpz_class lhs = profit[a] * kp.weights[b];
    mpz_class rhs = profit[b] * kp.weights[a];
    if (lhs != rhs) return lhs > rhs;
    return a < b;
  });

  Encoding greedy_pack;
  mpz_class greedy_value(0);
  std::int64_t used = 0;
  for (std::size_t e : order) {
    if (used + kp.weights[e] <= kp.capacity) {
      greedy_pack.push_back(static_cast<int>(e));
      greedy_value += profit[e];
      used += kp.weights[e];
    }
  }

  long best_single = -1;
  for (std::size_t e = 0; e < n; ++e) {
    if (kp.weights[e] <= kp.capacity &&
        (best_single < 0 || profit[e] > profit[static_cast<std::size_t>(best_single)]))
      best_single = static_cast<long>(e);
  }

  Encoding chosen = greedy_pack;
  if (best_single >= 0 && profit[static_cast<std::size_t>(best_single)] > greedy_value)
    chosen = {static_cast<int>(best_single)};
  std::sort(chosen.begin(), chosen.end());
  return SolutionRecord{chosen, evaluate(instance, chosen), {}};
}

namespace {

/// 0-1 knapsack DP over integer values, parameterized on the value type.
template <typename Value>
Encoding knapsack_dp_run(const std::vector<std::int64_t>& weights, const std::vector<Value>& value,
                         std::int64_t capacity) {
  std::size_t n = weights.size();
  std::size_t cap = static_cast<std::size_t>(capacity);
  std::vector<Value> best(cap + 1, Value(0));
  std::vector<std::vector<bool>> take(n, std::vector<bool>(cap + 1, false));

  for (std::size_t e = 0; e < n; ++e) {
    std::int64_t w = weights[e];
    if (w > capacity) continue;
    for (std::size_t c = cap; c >= static_cast<std::size_t>(w); --c) {
      Value candidate = best[c - w] + value[e];
      if (candidate > best[c]) {
        best[c] = candidate;
        take[e][c] = true;
      }
      if (c == 0) break;
    }
  }

  Encoding pack;
  std::size_t c = cap;
  for (std::size_t e = n; e-- > 0;) {
    if (take[e][c]) {
      pack.push_back(static_cast<int>(e));
      c -= static_cast<std::size_t>(weights[e]);
    }
  }
  std::sort(pack.begin(), pack.end());
  return pack;
}

}  // namespace

SolutionRecord KnapsackExactDp::solve_impl(const ProblemInstance& instance, const WeightVector& lambda) const {
  const KnapsackData& kp = instance.knapsack();
  if (kp.capacity > capacity_limit_)
    throw ResourceError("dp oracle: capacity " + std::to_string(kp.capacity) + " exceeds table limit " +
                        std::to_string(capacity_limit_) + "; use smaller instances");

  std::size_t n = kp.weights.size();
  std::vector<mpz_class> dir = detail::integer_direction(lambda);
  std::vector<mpz_class> profit(n);
  mpz_class largest(0);
  for (std::size_t e = 0; e < n; ++e) {
    mpz_class acc(0);
    for (std::size_t i = 0; i < dir.size(); ++i) acc += dir[i] * kp.profits[e][i];
    if (acc > largest) largest = acc;
    profit[e] = std::move(acc);
  }

  Encoding pack;
  mpz_class worst_sum = largest * static_cast<unsigned long>(n ? n : 1);
  if (detail::fits_int128(worst_sum, 2)) {
    std::vector<detail::int128> values(n);
    for (std::size_t e = 0; e < n; ++e) values[e] = detail::to_int128(profit[e]);
    pack = knapsack_dp_run(kp.weights, values, kp.capacity);
  } else {
    pack = knapsack_dp_run(kp.weights, profit, kp.capacity);
  }
  return SolutionRecord{pack, evaluate(instance, pack), {}};
}

std::unique_ptr<WeightedSumOracle> make_oracle(const std::string& name) {
  if (name == "greedy") return std::make_unique<KnapsackExtendedGreedy>();
  if (name == "dp") return std::make_unique<KnapsackExactDp>();
  if (name == "christofides") return std::make_unique<TspChristofides>();
  if (name == "christofides-double-tree") return std::make_unique<TspChristofides>(false);
  if (name == "double-tree") return std::make_unique<TspDoubleTree>();
  if (name == "held-karp") return std::make_unique<TspHeldKarp>();
  throw ConfigError("unknown oracle '" + name + "'");
}

}  // namespace moca
