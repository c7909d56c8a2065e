#include "moca/instance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace moca {

namespace {

std::int64_t rounded_distance(const std::array<std::int64_t, 2>& a, const std::array<std::int64_t, 2>& b) {
  double dx = static_cast<double>(a[0] - b[0]);
  double dy = static_cast<double>(a[1] - b[1]);
  // sqrt of an integer is never exactly half-integral, so nearest-integer
  // rounding through double is exact for coordinate magnitudes used here.
  return static_cast<std::int64_t>(std::llround(std::sqrt(dx * dx + dy * dy)));
}

}  // namespace

TspData TspData::from_coords(std::vector<std::vector<std::array<std::int64_t, 2>>> coords) {
  TspData data;
  data.coords = std::move(coords);
  data.costs.reserve(data.coords.size());
  for (const auto& layer : data.coords) {
    std::size_t n = layer.size();
    std::vector<std::vector<std::int64_t>> mat(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) {
        std::int64_t c = rounded_distance(layer[u], layer[v]);
        mat[u][v] = c;
        mat[v][u] = c;
      }
    }
    data.costs.push_back(std::move(mat));
  }
  return data;
}

ProblemInstance::ProblemInstance(Sense sense, int d, KnapsackData data)
    : sense_(sense), d_(d), payload_(std::move(data)) {
  validate();
}

ProblemInstance::ProblemInstance(Sense sense, int d, TspData data)
    : sense_(sense), d_(d), payload_(std::move(data)) {
  validate();
}

std::size_t ProblemInstance::size() const {
  if (is_knapsack()) return knapsack().weights.size();
  return tsp().coords.empty() ? 0 : tsp().coords.front().size();
}

void ProblemInstance::validate() const {
  if (d_ < 2) throw ContractError("ProblemInstance: at least 2 objectives required");
  if (is_knapsack()) {
    if (sense_ != Sense::maximize) throw ContractError("ProblemInstance: knapsack must maximize");
    const KnapsackData& kp = knapsack();
    if (kp.capacity < 1) throw ContractError("ProblemInstance: knapsack capacity must be >= 1");
    if (kp.profits.size() != kp.weights.size())
      throw ContractError("ProblemInstance: profits/weights size mismatch");
    for (std::size_t e = 0; e < kp.weights.size(); ++e) {
      if (kp.weights[e] < 0) throw ContractError("ProblemInstance: negative item weight");
      if (kp.profits[e].size() != static_cast<std::size_t>(d_))
        throw ContractError("ProblemInstance: profit row has wrong dimension");
      for (std::int64_t p : kp.profits[e]) {
        if (p < 0) throw ContractError("ProblemInstance: negative profit");
      }
    }
  } else {
    if (sense_ != Sense::minimize) throw ContractError("ProblemInstance: tsp must minimize");
    const TspData& t = tsp();
    if (t.costs.size() != static_cast<std::size_t>(d_) || t.coords.size() != static_cast<std::size_t>(d_))
      throw ContractError("ProblemInstance: tsp needs one coordinate set and cost matrix per objective");
    std::size_t n = size();
    if (n < 3) throw ContractError("ProblemInstance: tsp needs at least 3 cities");
    for (const auto& mat : t.costs) {
      if (mat.size() != n) throw ContractError("ProblemInstance: cost matrix has wrong size");
      for (std::size_t u = 0; u < n; ++u) {
        if (mat[u].size() != n) throw ContractError("ProblemInstance: cost matrix not square");
        if (mat[u][u] != 0) throw ContractError("ProblemInstance: cost matrix diagonal must be zero");
        for (std::size_t v = 0; v < n; ++v) {
          if (mat[u][v] < 0) throw ContractError("ProblemInstance: negative edge cost");
          if (mat[u][v] != mat[v][u]) throw ContractError("ProblemInstance: cost matrix not symmetric");
        }
      }
    }
  }
}

ObjectiveVector evaluate(const ProblemInstance& instance, const Encoding& encoding) {
  int d = instance.objectives();
  std::vector<Rational> image(d, Rational(0));

  if (instance.is_knapsack()) {
    const KnapsackData& kp = instance.knapsack();
    std::vector<bool> seen(kp.weights.size(), false);
    std::int64_t total_weight = 0;
    std::vector<std::int64_t> sums(d, 0);
    for (int idx : encoding) {
      if (idx < 0 || static_cast<std::size_t>(idx) >= kp.weights.size())
        throw FeasibilityError("evaluate: item index " + std::to_string(idx) + " out of range");
      if (seen[idx]) throw FeasibilityError("evaluate: item " + std::to_string(idx) + " selected twice");
      seen[idx] = true;
      total_weight += kp.weights[idx];
      for (int i = 0; i < d; ++i) sums[i] += kp.profits[idx][i];
    }
    if (total_weight > kp.capacity)
      throw FeasibilityError("evaluate: capacity exceeded (" + std::to_string(total_weight) + " > " +
                             std::to_string(kp.capacity) + ")");
    for (int i = 0; i < d; ++i) image[i] = Rational(sums[i]);
    return ObjectiveVector(std::move(image));
  }

  const TspData& t = instance.tsp();
  std::size_t n = instance.size();
  if (encoding.size() != n) throw FeasibilityError("evaluate: tour must visit all " + std::to_string(n) + " cities");
  std::vector<bool> seen(n, false);
  for (int city : encoding) {
    if (city < 0 || static_cast<std::size_t>(city) >= n)
      throw FeasibilityError("evaluate: city index " + std::to_string(city) + " out of range");
    if (seen[city]) throw FeasibilityError("evaluate: city " + std::to_string(city) + " visited twice");
    seen[city] = true;
  }
  std::vector<std::int64_t> sums(d, 0);
  for (std::size_t j = 0; j < n; ++j) {
    int u = encoding[j];
    int v = encoding[(j + 1) % n];
    for (int i = 0; i < d; ++i) sums[i] += t.costs[i][u][v];
  }
  for (int i = 0; i < d; ++i) image[i] = Rational(sums[i]);
  return ObjectiveVector(std::move(image));
}

}  // namespace moca
