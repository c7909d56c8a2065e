#include "moca/weightspace.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "linalg.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace moca {

namespace {

/// Unique images plus, for each, the original input indices carrying them.
struct ConstraintPool {
  std::vector<ObjectiveVector> unique;
  std::vector<std::vector<int>> carriers;
};

ConstraintPool dedup_images(const std::vector<ObjectiveVector>& images) {
  ConstraintPool pool;
  std::map<ObjectiveVector, std::size_t> index;
  for (std::size_t i = 0; i < images.size(); ++i) {
    auto [it, inserted] = index.try_emplace(images[i], pool.unique.size());
    if (inserted) {
      pool.unique.push_back(images[i]);
      pool.carriers.emplace_back();
    }
    pool.carriers[it->second].push_back(static_cast<int>(i));
  }
  return pool;
}

using VertexMap = std::map<std::vector<Rational>, LiftedVertex>;

void insert_vertex(VertexMap& out, std::vector<Rational> lambda, Rational z, std::vector<int> zero_weights,
                   std::vector<int> tight_images) {
  std::vector<Rational> key = lambda;
  key.push_back(z);
  if (out.count(key)) return;
  LiftedVertex v{WeightVector(std::move(lambda)), std::move(z), std::move(zero_weights), std::move(tight_images)};
  out.emplace(std::move(key), std::move(v));
}

std::vector<LiftedVertex> finalize(VertexMap&& map) {
  std::vector<LiftedVertex> out;
  out.reserve(map.size());
  for (auto& [key, vertex] : map) out.push_back(std::move(vertex));
  return out;
}

/// Advances an ascending combination c over {0,...,pool-1} with c[0] fixed.
bool next_combination_tail(std::vector<int>& c, int pool) {
  int d = static_cast<int>(c.size());
  int t = d - 1;
  while (t >= 1 && c[t] == pool - d + t) --t;
  if (t < 1) return false;
  ++c[t];
  for (int s = t + 1; s < d; ++s) c[s] = c[s - 1] + 1;
  return true;
}

// ---------------------------------------------------------------------------
// Integer kernel (production path). Constraint rows are scaled to integers
// row by row, which leaves the solution set and all inequality signs
// unchanged. Solutions come out as integer numerators over a positive
// common denominator, so feasibility and tightness are pure sign tests.
// ---------------------------------------------------------------------------

struct IntegerRows {
  // one row per unique image: d scaled coefficients followed by the scaled
  // z coefficient (positive; enters the constraint with a minus sign)
  std::vector<std::vector<mpz_class>> image_rows;
  mpz_class max_abs;
};

IntegerRows scale_rows(const std::vector<ObjectiveVector>& unique, int d) {
  IntegerRows rows;
  rows.max_abs = 1;
  rows.image_rows.reserve(unique.size());
  for (const ObjectiveVector& y : unique) {
    mpz_class common(1);
    for (int i = 0; i < d; ++i) {
      mpz_class den = y[i].denominator();
      mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), den.get_mpz_t());
    }
    std::vector<mpz_class> row(d + 1);
    for (int i = 0; i < d; ++i) {
      row[i] = y[i].numerator() * (common / y[i].denominator());
      mpz_class a = abs(row[i]);
      if (a > rows.max_abs) rows.max_abs = a;
    }
    row[d] = common;
    if (common > rows.max_abs) rows.max_abs = common;
    rows.image_rows.push_back(std::move(row));
  }
  return rows;
}

template <typename V>
struct KernelData {
  std::vector<std::vector<V>> image_rows;  // scaled [Y | L]
  int d = 0;
  Sense sense = Sense::minimize;
};

template <typename V>
V value_from_mpz(const mpz_class& z);

template <>
detail::int128 value_from_mpz<detail::int128>(const mpz_class& z) {
  return detail::to_int128(z);
}
template <>
mpz_class value_from_mpz<mpz_class>(const mpz_class& z) {
  return z;
}

Rational rational_from(const detail::int128& num, const detail::int128& den) {
  return Rational(detail::from_int128(num), detail::from_int128(den));
}
Rational rational_from(const mpz_class& num, const mpz_class& den) { return Rational(num, den); }

template <typename V>
KernelData<V> make_kernel(const IntegerRows& rows, int d, Sense sense) {
  KernelData<V> k;
  k.d = d;
  k.sense = sense;
  k.image_rows.reserve(rows.image_rows.size());
  for (const auto& row : rows.image_rows) {
    std::vector<V> r(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) r[i] = value_from_mpz<V>(row[i]);
    k.image_rows.push_back(std::move(r));
  }
  return k;
}

/// Solves one constraint subset and, if it defines a feasible vertex,
/// records it with its full tight set.
template <typename V>
void process_subset(const KernelData<V>& k, const ConstraintPool& pool, const std::vector<int>& subset,
                    VertexMap& out) {
  int d = k.d;
  int cols = d + 1;
  std::vector<std::vector<V>> A(cols, std::vector<V>(cols, V(0)));
  std::vector<V> b(cols, V(0));
  for (int r = 0; r < d; ++r) {
    int c = subset[r];
    if (c < d) {
      A[r][c] = V(1);
    } else {
      const std::vector<V>& row = k.image_rows[c - d];
      for (int i = 0; i < d; ++i) A[r][i] = row[i];
      A[r][d] = V(0) - row[d];
    }
  }
  for (int i = 0; i < d; ++i) A[d][i] = V(1);
  b[d] = V(1);

  std::vector<V> x;
  V det(0);
  if (!detail::cramer_solve(A, b, x, det)) return;

  for (int i = 0; i < d; ++i)
    if (x[i] < V(0)) return;

  std::vector<int> zero_weights;
  for (int i = 0; i < d; ++i)
    if (x[i] == V(0)) zero_weights.push_back(i);

  std::vector<int> tight_images;
  const V& z_num = x[d];
  for (std::size_t j = 0; j < k.image_rows.size(); ++j) {
    const std::vector<V>& row = k.image_rows[j];
    V s = V(0) - row[d] * z_num;
    for (int i = 0; i < d; ++i) s = s + row[i] * x[i];
    if (s == V(0)) {
      for (int orig : pool.carriers[j]) tight_images.push_back(orig);
    } else if (k.sense == Sense::minimize ? s < V(0) : s > V(0)) {
      return;
    }
  }
  if (tight_images.empty()) return;
  std::sort(tight_images.begin(), tight_images.end());

  std::vector<Rational> lambda(d);
  for (int i = 0; i < d; ++i) lambda[i] = rational_from(x[i], det);
  insert_vertex(out, std::move(lambda), rational_from(z_num, det), std::move(zero_weights),
                std::move(tight_images));
}

template <typename V>
std::vector<VertexMap> scan_all(const KernelData<V>& k, const ConstraintPool& pool) {
  int d = k.d;
  int pool_size = d + static_cast<int>(k.image_rows.size());
  int first_max = pool_size - d;
  std::vector<VertexMap> partial(static_cast<std::size_t>(first_max) + 1);

#pragma omp parallel for schedule(dynamic, 1)
  for (int c0 = 0; c0 <= first_max; ++c0) {
    std::vector<int> subset(d);
    for (int t = 0; t < d; ++t) subset[t] = c0 + t;
    if (subset.back() >= pool_size) continue;
    do {
      // require at least one image constraint in the tight subset
      if (subset.back() >= d) process_subset(k, pool, subset, partial[c0]);
    } while (next_combination_tail(subset, pool_size));
  }
  return partial;
}

}  // namespace

std::vector<LiftedVertex> enumerate_extreme_points(const std::vector<ObjectiveVector>& images, Sense sense) {
  if (images.empty()) throw ContractError("enumerate_extreme_points: empty image set");
  int d = static_cast<int>(images.front().dim());
  for (const ObjectiveVector& y : images)
    if (static_cast<int>(y.dim()) != d) throw ContractError("enumerate_extreme_points: dimension mismatch");

  ConstraintPool pool = dedup_images(images);
  IntegerRows rows = scale_rows(pool.unique, d);

  std::vector<VertexMap> partial;
  if (detail::int128_eligible(d + 1, rows.max_abs)) {
    partial = scan_all(make_kernel<detail::int128>(rows, d, sense), pool);
  } else {
    partial = scan_all(make_kernel<mpz_class>(rows, d, sense), pool);
  }

  VertexMap merged;
  for (VertexMap& part : partial)
    for (auto& [key, vertex] : part) merged.try_emplace(key, std::move(vertex));
  return finalize(std::move(merged));
}

std::vector<LiftedVertex> enumerate_extreme_points_serial(const std::vector<ObjectiveVector>& images, Sense sense) {
  if (images.empty()) throw ContractError("enumerate_extreme_points: empty image set");
  int d = static_cast<int>(images.front().dim());
  for (const ObjectiveVector& y : images)
    if (static_cast<int>(y.dim()) != d) throw ContractError("enumerate_extreme_points: dimension mismatch");

  ConstraintPool pool = dedup_images(images);
  int m = static_cast<int>(pool.unique.size());
  int pool_size = d + m;
  int cols = d + 1;
  VertexMap out;

  std::vector<int> subset(d);
  for (int c0 = 0; c0 <= pool_size - d; ++c0) {
    for (int t = 0; t < d; ++t) subset[t] = c0 + t;
    if (subset.back() >= pool_size) continue;
    do {
      if (subset.back() < d) continue;  // needs an image constraint
      std::vector<std::vector<Rational>> A(cols, std::vector<Rational>(cols, Rational(0)));
      std::vector<Rational> b(cols, Rational(0));
      for (int r = 0; r < d; ++r) {
        int c = subset[r];
        if (c < d) {
          A[r][c] = Rational(1);
        } else {
          const ObjectiveVector& y = pool.unique[c - d];
          for (int i = 0; i < d; ++i) A[r][i] = y[i];
          A[r][d] = Rational(-1);
        }
      }
      for (int i = 0; i < d; ++i) A[d][i] = Rational(1);
      b[d] = Rational(1);

      std::vector<Rational> x;
      if (!detail::gauss_solve(A, b, x)) continue;

      bool ok = true;
      for (int i = 0; i < d && ok; ++i) ok = x[i].sign() >= 0;
      if (!ok) continue;

      std::vector<Rational> lambda(x.begin(), x.begin() + d);
      Rational z = x[d];
      std::vector<int> zero_weights;
      for (int i = 0; i < d; ++i)
        if (x[i].is_zero()) zero_weights.push_back(i);

      std::vector<int> tight_images;
      for (int j = 0; j < m && ok; ++j) {
        Rational value;
        for (int i = 0; i < d; ++i) value += lambda[i] * pool.unique[j][i];
        if (value == z) {
          for (int orig : pool.carriers[j]) tight_images.push_back(orig);
        } else if (sense == Sense::minimize ? value < z : value > z) {
          ok = false;
        }
      }
      if (!ok || tight_images.empty()) continue;
      std::sort(tight_images.begin(), tight_images.end());
      insert_vertex(out, std::move(lambda), std::move(z), std::move(zero_weights), std::move(tight_images));
    } while (next_combination_tail(subset, pool_size));
  }
  return finalize(std::move(out));
}

bool in_compact(const WeightVector& lambda, const Rational& c) {
  if (c.sign() <= 0 || c >= Rational(1)) throw ContractError("in_compact: c must lie in (0,1)");
  std::vector<Rational> sorted(lambda.begin(), lambda.end());
  std::sort(sorted.begin(), sorted.end());
  Rational prefix;
  for (std::size_t k = 0; k + 1 < sorted.size(); ++k) {
    prefix += sorted[k];
    if (prefix < c * sorted[k + 1]) return false;
  }
  return true;
}

}  // namespace moca
