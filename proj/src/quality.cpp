#include "moca/quality.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "linalg.hpp"
#include "moca/weightspace.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace moca {

namespace {

void check_inputs(const std::vector<ObjectiveVector>& s, const std::vector<ObjectiveVector>& ref, int d) {
  if (d != 2 && d != 3) throw ContractError("convex_indicator: d must be 2 or 3");
  if (s.empty() || ref.empty()) throw ContractError("convex_indicator: empty image set");
  for (const ObjectiveVector& y : s)
    if (static_cast<int>(y.dim()) != d) throw ContractError("convex_indicator: dimension mismatch");
  for (const ObjectiveVector& y : ref)
    if (static_cast<int>(y.dim()) != d) throw ContractError("convex_indicator: dimension mismatch");
}

[[noreturn]] void throw_unbounded() {
  throw ConfigError(
      "convex_indicator: unbounded ratio (reference envelope vanishes where the measured envelope is positive)");
}

/// Primitive integer normals of the candidate hyperplanes: all pairwise
/// image differences over both sets, plus the coordinate planes.
struct NormalPool {
  std::vector<std::vector<mpz_class>> normals;
  mpz_class max_abs = 1;
};

NormalPool build_normals(const std::vector<ObjectiveVector>& s, const std::vector<ObjectiveVector>& ref, int d) {
  std::vector<ObjectiveVector> all;
  all.reserve(s.size() + ref.size());
  all.insert(all.end(), s.begin(), s.end());
  all.insert(all.end(), ref.begin(), ref.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());

  std::set<std::vector<mpz_class>> dedup;
  for (std::size_t u = 0; u < all.size(); ++u) {
    for (std::size_t v = u + 1; v < all.size(); ++v) {
      std::vector<Rational> diff(d);
      for (int i = 0; i < d; ++i) diff[i] = all[u][i] - all[v][i];
      mpz_class common(1);
      for (int i = 0; i < d; ++i) {
        mpz_class den = diff[i].denominator();
        mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), den.get_mpz_t());
      }
      std::vector<mpz_class> g(d);
      mpz_class gcd(0);
      for (int i = 0; i < d; ++i) {
        g[i] = diff[i].numerator() * (common / diff[i].denominator());
        mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), g[i].get_mpz_t());
      }
      if (gcd == 0) continue;  // identical images
      int lead = 0;
      while (g[lead] == 0) ++lead;
      if (g[lead] < 0) gcd = -gcd;
      for (int i = 0; i < d; ++i) g[i] /= gcd;
      dedup.insert(std::move(g));
    }
  }
  for (int i = 0; i < d; ++i) {
    std::vector<mpz_class> e(d, mpz_class(0));
    e[i] = 1;
    dedup.insert(std::move(e));
  }

  NormalPool pool;
  pool.normals.assign(dedup.begin(), dedup.end());
  for (const auto& g : pool.normals)
    for (const auto& gi : g) {
      mpz_class a = abs(gi);
      if (a > pool.max_abs) pool.max_abs = a;
    }
  return pool;
}

/// A candidate weight vector in primitive integer form (gcd 1, sum > 0).
using Candidate = std::vector<mpz_class>;

template <typename V>
V value_cast(const mpz_class& z);
template <>
detail::int128 value_cast<detail::int128>(const mpz_class& z) {
  return detail::to_int128(z);
}
template <>
mpz_class value_cast<mpz_class>(const mpz_class& z) {
  return z;
}

inline mpz_class mpz_cast(const detail::int128& v) { return detail::from_int128(v); }
inline const mpz_class& mpz_cast(const mpz_class& v) { return v; }

detail::int128 gcd128(detail::int128 a, detail::int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    detail::int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

/// Candidate generation specialized per dimension: the intersection of d-1
/// normal hyperplanes with the normalization plane has a closed form (a
/// scaled normal rotation for d=2, a cross product for d=3). Nonnegative
/// solutions are reduced to primitive integer tuples and deduplicated.
template <typename V>
std::vector<Candidate> generate_candidates(const NormalPool& pool, int d);

template <>
std::vector<Candidate> generate_candidates<detail::int128>(const NormalPool& pool, int d) {
  using detail::int128;
  std::size_t h = pool.normals.size();
  std::vector<std::array<int128, 3>> raw;

  std::vector<std::array<int128, 3>> normals(h, {0, 0, 0});
  for (std::size_t i = 0; i < h; ++i)
    for (int k = 0; k < d; ++k) normals[i][k] = detail::to_int128(pool.normals[i][k]);

  auto keep = [&](std::array<int128, 3> c) {
    int128 sum = c[0] + c[1] + c[2];
    if (sum == 0) return;  // singular with the normalization plane
    if (sum < 0)
      for (int128& v : c) v = -v;
    if (c[0] < 0 || c[1] < 0 || c[2] < 0) return;
    int128 g = gcd128(gcd128(c[0], c[1]), c[2]);
    for (int128& v : c) v /= g;
    raw.push_back(c);
  };

  if (d == 2) {
    for (std::size_t i = 0; i < h; ++i) keep({normals[i][1], -normals[i][0], 0});
  } else {
    for (std::size_t i = 0; i < h; ++i) {
      const auto& a = normals[i];
      for (std::size_t j = i + 1; j < h; ++j) {
        const auto& b = normals[j];
        keep({a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]});
      }
    }
  }

  std::sort(raw.begin(), raw.end());
  raw.erase(std::unique(raw.begin(), raw.end()), raw.end());

  std::vector<Candidate> out;
  out.reserve(raw.size());
  for (const auto& c : raw) {
    Candidate nums(d);
    for (int k = 0; k < d; ++k) nums[k] = detail::from_int128(c[k]);
    out.push_back(std::move(nums));
  }
  return out;
}

template <>
std::vector<Candidate> generate_candidates<mpz_class>(const NormalPool& pool, int d) {
  std::size_t h = pool.normals.size();
  std::set<Candidate> dedup;

  auto keep = [&](std::vector<mpz_class> c) {
    mpz_class sum = c[0] + c[1] + (d == 3 ? c[2] : mpz_class(0));
    if (sum == 0) return;
    if (sum < 0)
      for (mpz_class& v : c) v = -v;
    for (const mpz_class& v : c)
      if (v < 0) return;
    mpz_class g(0);
    for (const mpz_class& v : c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    for (mpz_class& v : c) v /= g;
    dedup.insert(std::move(c));
  };

  if (d == 2) {
    for (std::size_t i = 0; i < h; ++i) keep({pool.normals[i][1], -pool.normals[i][0]});
  } else {
    for (std::size_t i = 0; i < h; ++i) {
      const auto& a = pool.normals[i];
      for (std::size_t j = i + 1; j < h; ++j) {
        const auto& b = pool.normals[j];
        keep({a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]});
      }
    }
  }
  return std::vector<Candidate>(dedup.begin(), dedup.end());
}

/// Images scaled to integers with one common positive scale per set.
struct ScaledSet {
  std::vector<std::vector<mpz_class>> rows;
  mpz_class scale = 1;
  mpz_class max_abs = 1;
};

ScaledSet scale_set(const std::vector<ObjectiveVector>& images, int d) {
  ScaledSet out;
  for (const ObjectiveVector& y : images)
    for (int i = 0; i < d; ++i) {
      mpz_class den = y[i].denominator();
      mpz_lcm(out.scale.get_mpz_t(), out.scale.get_mpz_t(), den.get_mpz_t());
    }
  out.rows.reserve(images.size());
  for (const ObjectiveVector& y : images) {
    std::vector<mpz_class> row(d);
    for (int i = 0; i < d; ++i) {
      row[i] = y[i].numerator() * (out.scale / y[i].denominator());
      mpz_class a = abs(row[i]);
      if (a > out.max_abs) out.max_abs = a;
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

/// min (or max) over the set of sum_i lambda_i * row_i, at the candidate's
/// integer numerator scale.
template <typename V>
V envelope_numerator(const std::vector<std::vector<V>>& rows, const std::vector<V>& nums, bool take_min) {
  V best(0);
  bool first = true;
  for (const std::vector<V>& row : rows) {
    V acc(0);
    for (std::size_t i = 0; i < nums.size(); ++i) acc = acc + nums[i] * row[i];
    if (first || (take_min ? acc < best : acc > best)) {
      best = acc;
      first = false;
    }
  }
  return best;
}

bool lex_less_rational(const Candidate& a, const Candidate& b) {
  // Compare the normalized weight vectors a/sum(a) and b/sum(b).
  mpz_class sa(0), sb(0);
  for (const auto& x : a) sa += x;
  for (const auto& x : b) sb += x;
  for (std::size_t i = 0; i < a.size(); ++i) {
    mpz_class lhs = a[i] * sb;
    mpz_class rhs = b[i] * sa;
    if (lhs != rhs) return lhs < rhs;
  }
  return false;
}

struct Best {
  bool set = false;
  Rational value;
  Candidate witness;

  // ties on the value resolve to the lexicographically largest weight
  void offer(const Rational& v, const Candidate& w) {
    if (!set || value < v || (value == v && lex_less_rational(witness, w))) {
      value = v;
      witness = w;
      set = true;
    }
  }
  void merge(const Best& other) {
    if (other.set) offer(other.value, other.witness);
  }
};

template <typename V>
IndicatorReport indicator_int_kernel(const std::vector<ObjectiveVector>& s, const std::vector<ObjectiveVector>& ref,
                                     Sense sense, int d, const IndicatorOptions& options, const NormalPool& pool) {
  std::vector<Candidate> list = generate_candidates<V>(pool, d);

  ScaledSet ss = scale_set(s, d);
  ScaledSet sr = scale_set(ref, d);
  std::vector<std::vector<V>> rows_s, rows_r;
  for (const auto& row : ss.rows) {
    std::vector<V> r(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) r[i] = value_cast<V>(row[i]);
    rows_s.push_back(std::move(r));
  }
  for (const auto& row : sr.rows) {
    std::vector<V> r(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) r[i] = value_cast<V>(row[i]);
    rows_r.push_back(std::move(r));
  }

  bool take_min = sense == Sense::minimize;
  bool zero_is_error = options.zero_over_zero == IndicatorOptions::ZeroOverZero::error;
  int n_threads = 1;
#ifdef _OPENMP
  n_threads = omp_get_max_threads();
#endif
  std::vector<Best> bests(static_cast<std::size_t>(n_threads));
  bool unbounded = false;
  bool zero_error = false;

#pragma omp parallel for schedule(dynamic, 16)
  for (std::size_t idx = 0; idx < list.size(); ++idx) {
    int tid = 0;
#ifdef _OPENMP
    tid = omp_get_thread_num();
#endif
    std::vector<V> nums(list[idx].size());
    for (std::size_t i = 0; i < nums.size(); ++i) nums[i] = value_cast<V>(list[idx][i]);
    V num_s = envelope_numerator(rows_s, nums, take_min);
    V num_r = envelope_numerator(rows_r, nums, take_min);
    // minimize: ratio = env_s / env_ref; maximize: ratio = env_ref / env_s
    const V& top = take_min ? num_s : num_r;
    const V& bot = take_min ? num_r : num_s;
    if (bot == V(0)) {
      if (top == V(0)) {
        if (zero_is_error) {
#pragma omp critical
          zero_error = true;
        } else {
          bests[tid].offer(Rational(1), list[idx]);
        }
      } else {
#pragma omp critical
        unbounded = true;
      }
      continue;
    }
    mpz_class top_scaled = mpz_cast(top) * (take_min ? sr.scale : ss.scale);
    mpz_class bot_scaled = mpz_cast(bot) * (take_min ? ss.scale : sr.scale);
    bests[tid].offer(Rational(std::move(top_scaled), std::move(bot_scaled)), list[idx]);
  }

  if (unbounded) throw_unbounded();
  if (zero_error) throw ConfigError("convex_indicator: zero-over-zero candidate in error mode");

  Best best;
  for (const Best& b : bests) best.merge(b);
  if (!best.set) throw ContractError("convex_indicator: no candidate weight found");

  IndicatorReport report;
  report.value = best.value;
  std::vector<Rational> w(best.witness.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = Rational(best.witness[i]);
  report.argmax_weight = WeightVector::normalized(std::move(w));
  report.candidate_count = list.size();
  return report;
}

}  // namespace

IndicatorReport convex_indicator(const std::vector<ObjectiveVector>& s, const std::vector<ObjectiveVector>& ref,
                                 Sense sense, int d, const IndicatorOptions& options) {
  check_inputs(s, ref, d);
  NormalPool pool = build_normals(s, ref, d);

  mpz_class max_img(1);
  for (const auto& set : {&s, &ref})
    for (const ObjectiveVector& y : *set)
      for (int i = 0; i < d; ++i) {
        mpz_class a = abs(y[i].numerator());
        if (a > max_img) max_img = a;
        if (y[i].denominator() > max_img) max_img = y[i].denominator();
      }

  bool small = detail::int128_eligible(d, pool.max_abs) &&
               detail::bit_width(pool.max_abs) * static_cast<std::size_t>(d) + detail::bit_width(max_img) + 16 <= 120;
  if (small) return indicator_int_kernel<detail::int128>(s, ref, sense, d, options, pool);
  return indicator_int_kernel<mpz_class>(s, ref, sense, d, options, pool);
}

IndicatorReport convex_indicator_serial(const std::vector<ObjectiveVector>& s,
                                        const std::vector<ObjectiveVector>& ref, Sense sense, int d,
                                        const IndicatorOptions& options) {
  check_inputs(s, ref, d);

  // hyperplane normals as exact rational directions
  std::vector<ObjectiveVector> all;
  all.insert(all.end(), s.begin(), s.end());
  all.insert(all.end(), ref.begin(), ref.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());

  std::vector<std::vector<Rational>> normals;
  auto push_normal = [&](std::vector<Rational> g) {
    int lead = -1;
    for (int i = 0; i < d; ++i)
      if (!g[i].is_zero()) {
        lead = i;
        break;
      }
    if (lead < 0) return;
    Rational scale = g[lead];
    for (int i = 0; i < d; ++i) g[i] /= scale;
    if (std::find(normals.begin(), normals.end(), g) == normals.end()) normals.push_back(std::move(g));
  };
  for (std::size_t u = 0; u < all.size(); ++u)
    for (std::size_t v = u + 1; v < all.size(); ++v) {
      std::vector<Rational> g(d);
      for (int i = 0; i < d; ++i) g[i] = all[u][i] - all[v][i];
      push_normal(std::move(g));
    }
  for (int i = 0; i < d; ++i) {
    std::vector<Rational> e(d, Rational(0));
    e[i] = Rational(1);
    push_normal(std::move(e));
  }

  // candidate weights from (d-1)-subsets plus the normalization
  std::set<std::vector<Rational>> candidates;
  auto try_subset = [&](const std::vector<int>& chosen) {
    std::vector<std::vector<Rational>> A(d, std::vector<Rational>(d, Rational(0)));
    std::vector<Rational> b(d, Rational(0));
    for (int r = 0; r < d - 1; ++r) A[r] = normals[chosen[r]];
    for (int i = 0; i < d; ++i) A[d - 1][i] = Rational(1);
    b[d - 1] = Rational(1);
    std::vector<Rational> x;
    if (!detail::gauss_solve(A, b, x)) return;
    for (int i = 0; i < d; ++i)
      if (x[i].sign() < 0) return;
    candidates.insert(std::move(x));
  };
  int h = static_cast<int>(normals.size());
  if (d == 2) {
    for (int i = 0; i < h; ++i) try_subset({i});
  } else {
    for (int i = 0; i < h; ++i)
      for (int j = i + 1; j < h; ++j) try_subset({i, j});
  }

  bool take_min = sense == Sense::minimize;
  auto envelope = [&](const std::vector<ObjectiveVector>& images, const std::vector<Rational>& lambda) {
    Rational best;
    bool first = true;
    for (const ObjectiveVector& y : images) {
      Rational acc;
      for (int i = 0; i < d; ++i) acc += lambda[i] * y[i];
      if (first || (take_min ? acc < best : acc > best)) {
        best = acc;
        first = false;
      }
    }
    return best;
  };

  bool have = false;
  Rational best_value;
  std::vector<Rational> witness;
  for (const std::vector<Rational>& lambda : candidates) {
    Rational env_s = envelope(s, lambda);
    Rational env_r = envelope(ref, lambda);
    const Rational& top = take_min ? env_s : env_r;
    const Rational& bot = take_min ? env_r : env_s;
    Rational ratio;
    if (bot.is_zero()) {
      if (!top.is_zero()) throw_unbounded();
      if (options.zero_over_zero == IndicatorOptions::ZeroOverZero::error)
        throw ConfigError("convex_indicator: zero-over-zero candidate in error mode");
      ratio = Rational(1);
    } else {
      ratio = top / bot;
    }
    if (!have || best_value < ratio || (best_value == ratio && witness < lambda)) {
      best_value = ratio;
      witness = lambda;
      have = true;
    }
  }
  if (!have) throw ContractError("convex_indicator: no candidate weight found");

  IndicatorReport report;
  report.value = best_value;
  report.argmax_weight = WeightVector(witness);
  report.candidate_count = candidates.size();
  return report;
}

bool verify_convex_approx(const std::vector<ObjectiveVector>& s, const std::vector<ObjectiveVector>& all_images,
                          const Rational& beta, Sense sense) {
  if (beta < Rational(1)) throw ContractError("verify_convex_approx: beta must be >= 1");
  if (s.empty() || all_images.empty()) throw ContractError("verify_convex_approx: empty image set");
  int d = static_cast<int>(all_images.front().dim());
  std::vector<ObjectiveVector> reference = envelope_active_subset(all_images, sense);
  try {
    return convex_indicator(s, reference, sense, d).value <= beta;
  } catch (const ConfigError&) {
    return false;  // unbounded ratio: some weight has zero optimum but positive measured envelope
  }
}

std::vector<ObjectiveVector> brute_force_images(const ProblemInstance& instance) {
  std::set<ObjectiveVector> images;

  if (instance.is_knapsack()) {
    std::size_t n = instance.size();
    if (n > 20) throw ResourceError("brute_force_images: knapsack limited to 20 items");
    const KnapsackData& kp = instance.knapsack();
    int d = instance.objectives();
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
      std::int64_t weight = 0;
      std::vector<std::int64_t> sums(d, 0);
      bool fits = true;
      for (std::size_t e = 0; e < n && fits; ++e) {
        if (mask & (std::uint64_t(1) << e)) {
          weight += kp.weights[e];
          if (weight > kp.capacity) fits = false;
          for (int i = 0; i < d; ++i) sums[i] += kp.profits[e][i];
        }
      }
      if (!fits) continue;
      std::vector<Rational> img(d);
      for (int i = 0; i < d; ++i) img[i] = Rational(sums[i]);
      images.insert(ObjectiveVector(std::move(img)));
    }
  } else {
    std::size_t n = instance.size();
    if (n > 8) throw ResourceError("brute_force_images: tsp limited to 8 cities");
    Encoding perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<int>(i);
    // fix city 0; enumerate the remaining permutations
    std::sort(perm.begin() + 1, perm.end());
    do {
      images.insert(evaluate(instance, perm));
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
  }

  return std::vector<ObjectiveVector>(images.begin(), images.end());
}

std::vector<ObjectiveVector> envelope_active_subset(const std::vector<ObjectiveVector>& images, Sense sense) {
  if (images.empty()) throw ContractError("envelope_active_subset: empty image set");
  std::vector<ObjectiveVector> unique = images;
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  if (unique.size() == 1) return unique;

  std::size_t d = unique.front().dim();
  auto best_at = [&](const WeightVector& lambda) -> const ObjectiveVector& {
    const ObjectiveVector* best = &unique.front();
    Rational best_value = weighted_value(lambda, unique.front());
    for (std::size_t j = 1; j < unique.size(); ++j) {
      Rational v = weighted_value(lambda, unique[j]);
      if (sense == Sense::minimize ? v < best_value : v > best_value) {
        best_value = v;
        best = &unique[j];
      }
    }
    return *best;
  };

  std::set<ObjectiveVector> active;
  active.insert(best_at(WeightVector::uniform(d)));

  for (;;) {
    std::vector<ObjectiveVector> current(active.begin(), active.end());
    std::vector<LiftedVertex> vertices = enumerate_extreme_points(current, sense);
    bool grew = false;
    for (const LiftedVertex& v : vertices) {
      const ObjectiveVector& winner = best_at(v.weight);
      if (weighted_value(v.weight, winner) != v.z) grew = active.insert(winner).second || grew;
    }
    if (!grew) break;
  }
  return std::vector<ObjectiveVector>(active.begin(), active.end());
}

}  // namespace moca
