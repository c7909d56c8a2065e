#include "moca/generators.hpp"

#include <cassert>

namespace moca {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::uint64_t sm = seed;
  for (auto& s : state_) s = splitmix64(sm);
}

std::uint64_t Rng::next() {
  std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw ContractError("Rng::uniform: empty range");
  std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  if (range == 0) return static_cast<std::int64_t>(next());  // full 64-bit range
  std::uint64_t threshold = (-range) % range;
  for (;;) {
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * range;
    if (static_cast<std::uint64_t>(m) >= threshold)
      return lo + static_cast<std::int64_t>(static_cast<std::uint64_t>(m >> 64));
  }
}

ProblemInstance gen_knapsack_uniform(int n, std::uint64_t seed, int d) {
  if (n < 1) throw ContractError("gen_knapsack_uniform: n must be >= 1");
  if (d < 2) throw ContractError("gen_knapsack_uniform: d must be >= 2");
  Rng rng(seed);
  KnapsackData kp;
  kp.weights.resize(n);
  kp.profits.assign(n, std::vector<std::int64_t>(d, 0));
  std::int64_t total = 0;
  for (int e = 0; e < n; ++e) {
    kp.weights[e] = rng.uniform(0, 1000);
    total += kp.weights[e];
    for (int i = 0; i < d; ++i) kp.profits[e][i] = rng.uniform(0, 1000);
  }
  kp.capacity = (total + 1) / 2;  // half of the total weight, rounded up
  return ProblemInstance(Sense::maximize, d, std::move(kp));
}

ProblemInstance gen_knapsack_conflicting(int n, std::uint64_t seed) {
  if (n < 1) throw ContractError("gen_knapsack_conflicting: n must be >= 1");
  Rng rng(seed);
  KnapsackData kp;
  kp.weights.resize(n);
  kp.profits.assign(n, std::vector<std::int64_t>(3, 0));
  std::int64_t total = 0;
  for (int e = 0; e < n; ++e) {
    kp.weights[e] = rng.uniform(0, 1000);
    total += kp.weights[e];
    std::int64_t f1 = rng.uniform(0, 1000);
    std::int64_t f2 = rng.uniform(0, 1000 - f1);
    std::int64_t lo = std::max<std::int64_t>(900 - f1 - f2, 0);
    std::int64_t hi = std::min<std::int64_t>(1100 - f1 - f2, 1000 - f1);
    assert(lo <= hi);
    std::int64_t f3 = rng.uniform(lo, hi);
    kp.profits[e] = {f1, f2, f3};
  }
  kp.capacity = (total + 1) / 2;
  return ProblemInstance(Sense::maximize, 3, std::move(kp));
}

ProblemInstance gen_tsp(int n, std::uint64_t seed, int d) {
  if (n < 3) throw ContractError("gen_tsp: n must be >= 3");
  if (d < 2) throw ContractError("gen_tsp: d must be >= 2");
  Rng rng(seed);
  std::vector<std::vector<std::array<std::int64_t, 2>>> coords(
      d, std::vector<std::array<std::int64_t, 2>>(static_cast<std::size_t>(n)));
  for (int i = 0; i < d; ++i)
    for (int v = 0; v < n; ++v) {
      coords[i][v][0] = rng.uniform(0, 1000);
      coords[i][v][1] = rng.uniform(0, 1000);
    }
  return ProblemInstance(Sense::minimize, d, TspData::from_coords(std::move(coords)));
}

ProblemInstance make_instance(const GeneratorSpec& spec) {
  if (spec.problem == "knapsack-uniform") return gen_knapsack_uniform(spec.n, spec.seed, spec.d);
  if (spec.problem == "knapsack-conflicting") {
    if (spec.d != 3) throw ConfigError("knapsack-conflicting is defined for 3 objectives");
    return gen_knapsack_conflicting(spec.n, spec.seed);
  }
  if (spec.problem == "tsp") return gen_tsp(spec.n, spec.seed, spec.d);
  throw ConfigError("unknown generator problem '" + spec.problem + "'");
}

std::string spec_id(const GeneratorSpec& spec) {
  return spec.problem + "-n" + std::to_string(spec.n) + "-d" + std::to_string(spec.d) + "-s" +
         std::to_string(spec.seed);
}

}  // namespace moca
