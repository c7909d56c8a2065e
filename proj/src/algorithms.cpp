#include "moca/algorithms.hpp"

#include <algorithm>
#include <exception>
#include <map>

namespace moca {

namespace {

using Clock = std::chrono::steady_clock;

void poll_deadline(const RunOptions& options, const char* where) {
  if (options.deadline && Clock::now() > *options.deadline)
    throw TimeoutError(std::string(where) + ": time budget exceeded");
}

/// Image-keyed solution store merging provenance of duplicates.
class SolutionPool {
 public:
  /// Returns true when the image is new.
  bool insert(SolutionRecord rec) {
    auto [it, inserted] = by_image_.try_emplace(rec.image, std::move(rec));
    if (!inserted) {
      for (WeightVector& w : rec.origin_weights) {
        auto& dest = it->second.origin_weights;
        if (std::find(dest.begin(), dest.end(), w) == dest.end()) dest.push_back(std::move(w));
      }
    }
    return inserted;
  }

  std::size_t size() const { return by_image_.size(); }

  std::vector<ObjectiveVector> images() const {
    std::vector<ObjectiveVector> out;
    out.reserve(by_image_.size());
    for (const auto& [image, rec] : by_image_) out.push_back(image);
    return out;
  }

  std::vector<SolutionRecord> records() const {
    std::vector<SolutionRecord> out;
    out.reserve(by_image_.size());
    for (const auto& [image, rec] : by_image_) out.push_back(rec);
    return out;
  }

 private:
  std::map<ObjectiveVector, SolutionRecord> by_image_;
};

Rational envelope_value(const std::vector<ObjectiveVector>& images, const WeightVector& lambda, Sense sense) {
  Rational best = weighted_value(lambda, images.front());
  for (std::size_t j = 1; j < images.size(); ++j) {
    Rational v = weighted_value(lambda, images[j]);
    if (sense == Sense::minimize ? v < best : v > best) best = v;
  }
  return best;
}

mpz_class grid_key_cap(const ApproxParams& params) {
  mpz_class cap;
  mpz_class base(params.a_max - params.a_min + 2);
  mpz_pow_ui(cap.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(params.d));
  return cap;
}

}  // namespace

ConvexApproxResult oaa(const ProblemInstance& instance, const WeightedSumOracle& oracle, const Rational& epsilon,
                       const RunOptions& options) {
  auto t0 = Clock::now();
  int d = instance.objectives();
  Bounds bounds = compute_bounds(instance);

  ConvexApproxResult result;
  result.sense = instance.sense();
  result.params = derive_parameters(epsilon, oracle.alpha(), bounds, d);
  mpz_class call_cap = grid_key_cap(result.params);

  SolutionPool pool;
  // investigated grid keys with the image obtained for each
  std::map<GridKey, ObjectiveVector> investigated;

  WeightVector center = WeightVector::uniform(static_cast<std::size_t>(d));
  SolutionRecord first = oracle.solve(instance, center);
  investigated.emplace(GridKey{std::vector<long>(static_cast<std::size_t>(d), 0)}, first.image);
  pool.insert(std::move(first));
  result.oracle_calls = 1;

  std::vector<ObjectiveVector> images = pool.images();
  std::vector<LiftedVertex> queue = enumerate_extreme_points(images, result.sense);
  std::size_t next = 0;

  while (next < queue.size()) {
    poll_deadline(options, "oaa");
    const LiftedVertex& vertex = queue[next++];

    BoundaryRoundResult br = boundary_round(vertex.weight, result.params);
    GridRoundResult gr =
        grid_round(br.weight, br.rounded ? result.params.epsilon_prime : result.params.epsilon_grid, result.params);
    if (investigated.count(gr.key)) continue;

    SolutionRecord rec = oracle.solve(instance, gr.weight);
    investigated.emplace(gr.key, rec.image);
    ++result.oracle_calls;
    if (mpz_class(static_cast<unsigned long>(result.oracle_calls)) > call_cap)
      throw ContractError("oaa: oracle call count exceeded the grid key cap");

    if (pool.insert(std::move(rec))) {
      images = pool.images();
      queue = enumerate_extreme_points(images, result.sense);
      next = 0;
    }
  }

  // Exit certificate: every terminal vertex rounds to an investigated key,
  // its z is the exact envelope value, and the key's stored solution caps it.
  for (const LiftedVertex& vertex : queue) {
    BoundaryRoundResult br = boundary_round(vertex.weight, result.params);
    GridRoundResult gr =
        grid_round(br.weight, br.rounded ? result.params.epsilon_prime : result.params.epsilon_grid, result.params);
    auto it = investigated.find(gr.key);
    if (it == investigated.end()) throw ContractError("oaa: terminal vertex with uninvestigated grid key");
    if (vertex.z != envelope_value(images, vertex.weight, result.sense))
      throw ContractError("oaa: terminal vertex violates envelope coherence");
    Rational covered = weighted_value(vertex.weight, it->second);
    bool capped = result.sense == Sense::minimize ? vertex.z <= covered : vertex.z >= covered;
    if (!capped) throw ContractError("oaa: terminal vertex not covered by its grid solution");
  }

  for (auto& [key, image] : investigated) result.investigated_keys.insert(key);
  if (result.oracle_calls != result.investigated_keys.size())
    throw ContractError("oaa: oracle call count diverged from investigated keys");
  result.solutions = pool.records();
  result.wall_time = Clock::now() - t0;
  return result;
}

std::vector<GridKey> canonical_grid_keys(long span, int d) {
  if (span < 1 || d < 1) throw ContractError("canonical_grid_keys: span and d must be positive");
  std::vector<GridKey> keys;
  // first zero at position p: earlier coordinates in [1, span-1], later in [0, span-1]
  for (int p = 0; p < d; ++p) {
    if (p > 0 && span == 1) break;
    std::vector<long> tuple(static_cast<std::size_t>(d), 0);
    for (int i = 0; i < p; ++i) tuple[i] = 1;
    for (;;) {
      keys.push_back(GridKey{tuple});
      int t = d - 1;
      for (; t >= 0; --t) {
        if (t == p) continue;
        if (tuple[t] < span - 1) {
          ++tuple[t];
          for (int s = t + 1; s < d; ++s)
            if (s != p) tuple[s] = (s < p ? 1 : 0);
          break;
        }
      }
      if (t < 0) break;
    }
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

ConvexApproxResult grid_algorithm(const ProblemInstance& instance, const WeightedSumOracle& oracle,
                                  const Rational& epsilon, const RunOptions& options) {
  auto t0 = Clock::now();
  int d = instance.objectives();
  Bounds bounds = compute_bounds(instance);

  ConvexApproxResult result;
  result.sense = instance.sense();
  result.params = derive_parameters(epsilon, oracle.alpha(), bounds, d);

  // Canonical keys: tuples over [0, span-1]^d with minimum exactly 0, i.e.
  // shifted exponent tuples from [a_min, a_max+1]^d up to the common shift.
  long span = result.params.a_max + 1 - result.params.a_min + 1;
  mpz_class count = grid_key_cap(result.params);
  {
    mpz_class inner(span - 1);
    mpz_class inner_pow;
    mpz_pow_ui(inner_pow.get_mpz_t(), inner.get_mpz_t(), static_cast<unsigned long>(d));
    count -= inner_pow;
  }
  if (count > mpz_class(static_cast<unsigned long>(options.grid_key_budget)))
    throw ResourceError("grid_algorithm: " + count.get_str() + " grid keys exceed the configured budget of " +
                        std::to_string(options.grid_key_budget));

  std::vector<GridKey> keys = canonical_grid_keys(span, d);

  const PowerLattice& lattice = *result.params.lattice;
  std::vector<SolutionRecord> slots(keys.size());
  std::exception_ptr failure;

  constexpr std::size_t kChunk = 256;
  for (std::size_t chunk = 0; chunk < keys.size(); chunk += kChunk) {
    poll_deadline(options, "grid_algorithm");
    std::size_t hi = std::min(keys.size(), chunk + kChunk);
    long lo_exp = result.params.a_min;
#pragma omp parallel for schedule(dynamic, 8)
    for (std::size_t idx = chunk; idx < hi; ++idx) {
      try {
        std::vector<Rational> snapped(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) snapped[i] = lattice.power(lo_exp + keys[idx].exponents[i]);
        slots[idx] = oracle.solve(instance, WeightVector::normalized(std::move(snapped)));
      } catch (...) {
#pragma omp critical
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  }

  SolutionPool pool;
  for (std::size_t idx = 0; idx < keys.size(); ++idx) {
    result.investigated_keys.insert(keys[idx]);
    pool.insert(std::move(slots[idx]));
  }
  result.oracle_calls = keys.size();
  result.solutions = pool.records();
  result.wall_time = Clock::now() - t0;
  return result;
}

std::vector<SolutionRecord> dual_benson_exact(const ProblemInstance& instance, const WeightedSumOracle& oracle,
                                              const RunOptions& options) {
  if (oracle.alpha() != Rational(1))
    throw ConfigError("dual_benson_exact: requires an exact oracle (alpha = 1)");
  Sense sense = instance.sense();

  SolutionPool pool;
  pool.insert(oracle.solve(instance, WeightVector::uniform(static_cast<std::size_t>(instance.objectives()))));

  std::vector<ObjectiveVector> images = pool.images();
  std::vector<LiftedVertex> queue = enumerate_extreme_points(images, sense);
  std::size_t next = 0;

  while (next < queue.size()) {
    poll_deadline(options, "dual_benson_exact");
    const LiftedVertex& vertex = queue[next++];
    SolutionRecord rec = oracle.solve(instance, vertex.weight);
    Rational value = weighted_value(vertex.weight, rec.image);
    if (value == vertex.z) continue;
    bool improves = sense == Sense::minimize ? value < vertex.z : value > vertex.z;
    if (!improves) throw ContractError("dual_benson_exact: oracle returned a value worse than the envelope");
    if (!pool.insert(std::move(rec)))
      throw ContractError("dual_benson_exact: improving solution has a known image");
    images = pool.images();
    queue = enumerate_extreme_points(images, sense);
    next = 0;
  }
  return pool.records();
}

std::vector<SolutionRecord> filter_redundant(std::vector<SolutionRecord> solutions, Sense sense) {
  if (solutions.empty()) throw ContractError("filter_redundant: empty solution set");
  SolutionPool pool;
  for (SolutionRecord& rec : solutions) pool.insert(std::move(rec));

  std::map<ObjectiveVector, SolutionRecord> current;
  for (SolutionRecord& rec : pool.records()) current.emplace(rec.image, std::move(rec));

  std::vector<ObjectiveVector> candidates;
  candidates.reserve(current.size());
  for (const auto& [image, rec] : current) candidates.push_back(image);

  for (const ObjectiveVector& image : candidates) {
    if (current.size() <= 1) break;
    std::vector<ObjectiveVector> rest;
    rest.reserve(current.size() - 1);
    std::vector<ObjectiveVector> full;
    full.reserve(current.size());
    for (const auto& [img, rec] : current) {
      full.push_back(img);
      if (img != image) rest.push_back(img);
    }
    std::vector<LiftedVertex> vertices = enumerate_extreme_points(rest, sense);
    bool redundant = true;
    for (const LiftedVertex& v : vertices) {
      if (envelope_value(full, v.weight, sense) != v.z) {
        redundant = false;
        break;
      }
    }
    if (redundant) current.erase(image);
  }

  std::vector<SolutionRecord> out;
  out.reserve(current.size());
  for (auto& [image, rec] : current) out.push_back(std::move(rec));
  return out;
}

bool check_termination_certificate(const std::vector<LiftedVertex>& vertices,
                                   const std::vector<ObjectiveVector>& all_images, const Rational& beta,
                                   Sense sense) {
  for (const LiftedVertex& v : vertices) {
    for (const ObjectiveVector& y : all_images) {
      Rational value = weighted_value(v.weight, y);
      bool ok = sense == Sense::minimize ? v.z <= beta * value : beta * v.z >= value;
      if (!ok) return false;
    }
  }
  return true;
}

bool check_termination_certificate(const std::vector<LiftedVertex>& vertices, const ProblemInstance& instance,
                                   const WeightedSumOracle& exact_oracle, const Rational& beta) {
  if (exact_oracle.alpha() != Rational(1))
    throw ConfigError("check_termination_certificate: requires an exact oracle (alpha = 1)");
  Sense sense = instance.sense();
  for (const LiftedVertex& v : vertices) {
    Rational opt = weighted_value(v.weight, exact_oracle.solve(instance, v.weight).image);
    bool ok = sense == Sense::minimize ? v.z <= beta * opt : beta * v.z >= opt;
    if (!ok) return false;
  }
  return true;
}

}  // namespace moca
