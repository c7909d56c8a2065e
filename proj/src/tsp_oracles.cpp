#include <algorithm>
#include <limits>

#include "moca/matching.hpp"
#include "moca/scalarize.hpp"
#include "scal_util.hpp"

namespace moca {

namespace {

/// Aggregated edge costs lambda^T c scaled to integers (scale-invariant for
/// the scalarized problem).
std::vector<std::vector<mpz_class>> aggregate_costs(const TspData& t, const WeightVector& lambda) {
  std::vector<mpz_class> dir = detail::integer_direction(lambda);
  std::size_t n = t.costs.front().size();
  std::vector<std::vector<mpz_class>> agg(n, std::vector<mpz_class>(n, mpz_class(0)));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) {
      mpz_class acc(0);
      for (std::size_t i = 0; i < dir.size(); ++i) acc += dir[i] * t.costs[i][u][v];
      agg[u][v] = acc;
      agg[v][u] = std::move(acc);
    }
  return agg;
}

/// Prim's algorithm; returns parent[] with parent[0] = -1. Ties broken by
/// smallest vertex index for determinism.
std::vector<int> minimum_spanning_tree(const std::vector<std::vector<mpz_class>>& cost) {
  std::size_t n = cost.size();
  std::vector<int> parent(n, -1);
  std::vector<bool> in_tree(n, false);
  std::vector<mpz_class> key(n);
  std::vector<bool> key_set(n, false);

  in_tree[0] = true;
  for (std::size_t v = 1; v < n; ++v) {
    key[v] = cost[0][v];
    key_set[v] = true;
    parent[v] = 0;
  }
  for (std::size_t round = 1; round < n; ++round) {
    long best = -1;
    for (std::size_t v = 1; v < n; ++v)
      if (!in_tree[v] && key_set[v] && (best < 0 || key[v] < key[static_cast<std::size_t>(best)]))
        best = static_cast<long>(v);
    std::size_t u = static_cast<std::size_t>(best);
    in_tree[u] = true;
    for (std::size_t v = 1; v < n; ++v)
      if (!in_tree[v] && cost[u][v] < key[v]) {
        key[v] = cost[u][v];
        parent[v] = static_cast<int>(u);
      }
  }
  return parent;
}

/// Shortcutting walk: first occurrence of each city in visit order.
Encoding shortcut(const std::vector<int>& walk, std::size_t n) {
  Encoding tour;
  tour.reserve(n);
  std::vector<bool> seen(n, false);
  for (int city : walk) {
    if (!seen[city]) {
      seen[city] = true;
      tour.push_back(city);
    }
  }
  return tour;
}

/// Eulerian circuit on a connected even-degree multigraph (Hierholzer).
std::vector<int> euler_circuit(std::size_t n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<std::size_t>> incident(n);
  for (std::size_t id = 0; id < edges.size(); ++id) {
    incident[edges[id].first].push_back(id);
    incident[edges[id].second].push_back(id);
  }
  for (auto& list : incident) std::sort(list.begin(), list.end());

  std::vector<bool> used(edges.size(), false);
  std::vector<std::size_t> cursor(n, 0);
  std::vector<int> stack = {0};
  std::vector<int> circuit;
  while (!stack.empty()) {
    int v = stack.back();
    std::size_t& idx = cursor[v];
    while (idx < incident[v].size() && used[incident[v][idx]]) ++idx;
    if (idx == incident[v].size()) {
      circuit.push_back(v);
      stack.pop_back();
    } else {
      std::size_t id = incident[v][idx];
      used[id] = true;
      stack.push_back(edges[id].first == v ? edges[id].second : edges[id].first);
    }
  }
  return circuit;
}

Encoding double_tree_tour(const std::vector<std::vector<mpz_class>>& cost) {
  std::size_t n = cost.size();
  std::vector<int> parent = minimum_spanning_tree(cost);
  std::vector<std::vector<int>> children(n);
  for (std::size_t v = 1; v < n; ++v) children[parent[v]].push_back(static_cast<int>(v));

  // Preorder walk of the tree == shortcut of the doubled-edge Euler tour.
  Encoding tour;
  tour.reserve(n);
  std::vector<int> stack = {0};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    tour.push_back(v);
    for (auto it = children[v].rbegin(); it != children[v].rend(); ++it) stack.push_back(*it);
  }
  return tour;
}

Encoding christofides_tour(const std::vector<std::vector<mpz_class>>& cost) {
  std::size_t n = cost.size();
  std::vector<int> parent = minimum_spanning_tree(cost);
  std::vector<int> degree(n, 0);
  std::vector<std::pair<int, int>> edges;
  for (std::size_t v = 1; v < n; ++v) {
    edges.emplace_back(parent[v], static_cast<int>(v));
    ++degree[parent[v]];
    ++degree[v];
  }

  std::vector<int> odd;
  for (std::size_t v = 0; v < n; ++v)
    if (degree[v] % 2 == 1) odd.push_back(static_cast<int>(v));
  if (odd.size() % 2 != 0) throw ContractError("christofides: odd-degree set has odd cardinality");

  if (!odd.empty()) {
    std::size_t k = odd.size();
    std::vector<std::vector<mpz_class>> sub(k, std::vector<mpz_class>(k, mpz_class(0)));
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b)
        if (a != b) sub[a][b] = cost[odd[a]][odd[b]];
    std::vector<int> mate = min_weight_perfect_matching(sub);
    for (std::size_t a = 0; a < k; ++a)
      if (static_cast<std::size_t>(mate[a]) > a) edges.emplace_back(odd[a], odd[mate[a]]);
  }

  std::vector<int> circuit = euler_circuit(n, edges);
  return shortcut(circuit, n);
}

SolutionRecord finish(const ProblemInstance& instance, Encoding tour) {
  return SolutionRecord{tour, evaluate(instance, tour), {}};
}

}  // namespace

SolutionRecord TspChristofides::solve_impl(const ProblemInstance& instance, const WeightVector& lambda) const {
  auto cost = aggregate_costs(instance.tsp(), lambda);
  Encoding tour = exact_matching_ ? christofides_tour(cost) : double_tree_tour(cost);
  return finish(instance, std::move(tour));
}

SolutionRecord TspDoubleTree::solve_impl(const ProblemInstance& instance, const WeightVector& lambda) const {
  auto cost = aggregate_costs(instance.tsp(), lambda);
  return finish(instance, double_tree_tour(cost));
}

namespace {

template <typename Value>
Encoding held_karp_run(const std::vector<std::vector<Value>>& cost) {
  int n = static_cast<int>(cost.size());
  std::size_t full = static_cast<std::size_t>(1) << n;
  // dp[mask][j]: cheapest path from city 0 through mask ending at j.
  std::vector<std::vector<Value>> dp(full, std::vector<Value>(n, Value(0)));
  std::vector<std::vector<char>> reached(full, std::vector<char>(n, 0));
  std::vector<std::vector<int>> from(full, std::vector<int>(n, -1));

  dp[1][0] = Value(0);
  reached[1][0] = 1;
  for (std::size_t mask = 1; mask < full; ++mask) {
    if (!(mask & 1)) continue;
    for (int j = 0; j < n; ++j) {
      if (!reached[mask][j]) continue;
      for (int k = 1; k < n; ++k) {
        if (mask & (static_cast<std::size_t>(1) << k)) continue;
        std::size_t next = mask | (static_cast<std::size_t>(1) << k);
        Value cand = dp[mask][j] + cost[j][k];
        if (!reached[next][k] || cand < dp[next][k]) {
          dp[next][k] = cand;
          reached[next][k] = 1;
          from[next][k] = j;
        }
      }
    }
  }

  std::size_t all = full - 1;
  int best_end = -1;
  Value best_total(0);
  for (int j = 1; j < n; ++j) {
    if (!reached[all][j]) continue;
    Value total = dp[all][j] + cost[j][0];
    if (best_end < 0 || total < best_total) {
      best_total = total;
      best_end = j;
    }
  }

  Encoding tour;
  std::size_t mask = all;
  int j = best_end;
  while (j != -1) {
    tour.push_back(j);
    int p = from[mask][j];
    mask ^= static_cast<std::size_t>(1) << j;
    j = p;
  }
  std::reverse(tour.begin(), tour.end());
  return tour;
}

}  // namespace

SolutionRecord TspHeldKarp::solve_impl(const ProblemInstance& instance, const WeightVector& lambda) const {
  std::size_t n = instance.size();
  if (n > static_cast<std::size_t>(city_limit_))
    throw ResourceError("held-karp oracle: " + std::to_string(n) + " cities exceed limit " +
                        std::to_string(city_limit_));
  auto agg = aggregate_costs(instance.tsp(), lambda);

  mpz_class largest(0);
  for (const auto& row : agg)
    for (const auto& c : row)
      if (c > largest) largest = c;
  mpz_class worst = largest * static_cast<unsigned long>(n);

  Encoding tour;
  if (detail::fits_int128(worst, 2)) {
    std::vector<std::vector<detail::int128>> cost(n, std::vector<detail::int128>(n, 0));
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) cost[u][v] = detail::to_int128(agg[u][v]);
    tour = held_karp_run(cost);
  } else {
    tour = held_karp_run(agg);
  }
  return SolutionRecord{tour, evaluate(instance, tour), {}};
}

}  // namespace moca
