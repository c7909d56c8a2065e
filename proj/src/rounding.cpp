#include "moca/rounding.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

#include "moca/weightspace.hpp"

namespace moca {

PowerLattice::PowerLattice(Rational base, long lo, long hi, std::size_t table_cap)
    : base_(std::move(base)), lo_(lo), hi_(hi) {
  if (base_ <= Rational(1)) throw ContractError("PowerLattice: base must exceed 1");
  if (lo_ > hi_) throw ContractError("PowerLattice: empty exponent range");
  std::size_t span = static_cast<std::size_t>(hi_ - lo_ + 1);
  if (span <= table_cap) {
    table_.reserve(span);
    Rational p = pow(base_, lo_);
    table_.push_back(p);
    for (std::size_t i = 1; i < span; ++i) {
      p *= base_;
      table_.push_back(p);
    }
    table_lo_ = lo_;
  }
}

Rational PowerLattice::power(long exponent) const {
  if (!table_.empty() && exponent >= table_lo_ &&
      exponent < table_lo_ + static_cast<long>(table_.size())) {
    return table_[static_cast<std::size_t>(exponent - table_lo_)];
  }
  return pow(base_, exponent);
}

long PowerLattice::ceil_log_multiple(const Rational& x, long step) const {
  if (x.sign() <= 0) throw ContractError("PowerLattice::ceil_log_multiple: x must be positive");
  if (step < 1) throw ContractError("PowerLattice::ceil_log_multiple: step must be positive");
  auto floor_div = [](long a, long b) { return a >= 0 ? a / b : -((-a + b - 1) / b); };
  auto ceil_div = [](long a, long b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); };

  long t_lo = floor_div(lo_, step) - 1;  // power(step*t_lo) < x must hold
  long t_hi = ceil_div(hi_, step);       // power(step*t_hi) >= x must hold
  if (power(step * t_lo) >= x || power(step * t_hi) < x)
    throw ContractError("PowerLattice::ceil_log_multiple: x outside lattice coverage");
  while (t_hi - t_lo > 1) {
    long mid = t_lo + (t_hi - t_lo) / 2;
    if (power(step * mid) >= x)
      t_hi = mid;
    else
      t_lo = mid;
  }
  return step * t_hi;
}

namespace {

/// Largest rational of the form q/2^32 - 1 whose square stays below 1+eps.
Rational epsilon_prime_of(const Rational& epsilon) {
  mpz_class num = (epsilon.numerator() + epsilon.denominator()) << 64;
  mpz_class floor_val = num / epsilon.denominator();
  mpz_class q;
  mpz_sqrt(q.get_mpz_t(), floor_val.get_mpz_t());
  mpz_class granularity = mpz_class(1) << 32;
  if (q <= granularity)
    throw ConfigError("derive_parameters: epsilon too small for the 2^-32 grid granularity");
  return Rational(q - granularity, granularity);
}

mpz_class factorial(int d) {
  mpz_class f(1);
  for (int i = 2; i <= d; ++i) f *= i;
  return f;
}

}  // namespace

ApproxParams derive_parameters(const Rational& epsilon, const Rational& alpha, const Bounds& bounds, int d) {
  if (epsilon.sign() <= 0 || epsilon >= Rational(1))
    throw ContractError("derive_parameters: epsilon must lie in (0,1)");
  return derive_parameters_with(epsilon, epsilon_prime_of(epsilon), alpha, bounds, d);
}

ApproxParams derive_parameters_with(const Rational& epsilon, const Rational& epsilon_prime, const Rational& alpha,
                                    const Bounds& bounds, int d) {
  if (epsilon.sign() <= 0) throw ContractError("derive_parameters: epsilon must be positive");
  if (alpha < Rational(1)) throw ContractError("derive_parameters: alpha must be >= 1");
  if (bounds.lower.sign() <= 0 || bounds.lower > bounds.upper)
    throw ContractError("derive_parameters: invalid bounds");
  if (d < 2) throw ContractError("derive_parameters: at least 2 objectives required");
  if (epsilon_prime.sign() <= 0 || epsilon_prime >= Rational(1))
    throw ContractError("derive_parameters: epsilon_prime must lie in (0,1)");

  ApproxParams p;
  p.epsilon = epsilon;
  p.alpha = alpha;
  p.d = d;
  p.epsilon_prime = epsilon_prime;
  Rational one_plus = Rational(1) + p.epsilon_prime;
  if (one_plus * one_plus > Rational(1) + epsilon)
    throw ContractError("derive_parameters: (1+eps')^2 must stay within 1+eps");
  p.epsilon_grid = one_plus * one_plus - Rational(1);
  assert(p.epsilon_grid <= epsilon);
  p.beta = one_plus * alpha;
  p.c = p.epsilon_prime * bounds.lower / (p.beta * bounds.upper);
  p.lb = pow(p.c, d - 1) / Rational(factorial(d));
  assert(p.c.sign() > 0 && p.c < Rational(1));
  assert(p.lb.sign() > 0 && p.lb < Rational(1, d));

  // a_min: maximal exponent with base^a <= lb (exact power comparisons).
  auto le_lb = [&](long a) { return pow(one_plus, a) <= p.lb; };
  long below = -1;
  while (!le_lb(below)) below *= 2;
  long lo = below, hi = 0;  // le_lb(lo) true, le_lb(hi) false (lb < 1)
  while (hi - lo > 1) {
    long mid = lo + (hi - lo) / 2;
    (le_lb(mid) ? lo : hi) = mid;
  }
  p.a_min = lo;

  // a_max: minimal exponent with base^a >= 1 - (d-1)*lb.
  Rational top = Rational(1) - Rational(d - 1) * p.lb;
  auto ge_top = [&](long a) { return pow(one_plus, a) >= top; };
  lo = p.a_min;
  hi = 0;  // base^0 = 1 >= top
  assert(!ge_top(lo));
  while (hi - lo > 1) {
    long mid = lo + (hi - lo) / 2;
    (ge_top(mid) ? hi : lo) = mid;
  }
  p.a_max = hi;

  p.lattice = std::make_shared<PowerLattice>(one_plus, p.a_min - 2, p.a_max + 2);
  return p;
}

GridRoundResult grid_round(const WeightVector& lambda, const Rational& delta, const ApproxParams& params) {
  long step;
  if (delta == params.epsilon_prime)
    step = 1;
  else if (delta == params.epsilon_grid)
    step = 2;
  else
    throw ContractError("grid_round: delta must be epsilon_prime or epsilon_grid");

  std::size_t d = lambda.dim();
  GridRoundResult res;
  res.raw_exponents.resize(d);
  res.snapped.resize(d);
  const PowerLattice& lat = *params.lattice;
  for (std::size_t i = 0; i < d; ++i) {
    if (lambda[i] < params.lb)
      throw ContractError("grid_round: component below lb; boundary-round first");
    long e = lat.ceil_log_multiple(lambda[i], step);
    res.raw_exponents[i] = e;
    res.snapped[i] = lat.power(e);
    // sandwich: snapped/(1+delta) <= lambda_i <= snapped, exactly
    assert(lat.power(e - step) < lambda[i] || lat.power(e - step) == lambda[i]);
    assert(lambda[i] <= res.snapped[i] && res.snapped[i] / (Rational(1) + delta) <= lambda[i]);
  }

  long min_e = *std::min_element(res.raw_exponents.begin(), res.raw_exponents.end());
  res.key.exponents.resize(d);
  for (std::size_t i = 0; i < d; ++i) res.key.exponents[i] = res.raw_exponents[i] - min_e;
  res.weight = WeightVector::normalized(res.snapped);
  return res;
}

BoundaryRoundResult boundary_round(const WeightVector& lambda, const ApproxParams& params) {
  std::size_t d = lambda.dim();
  const Rational& c = params.c;

  BoundaryRoundResult res;
  res.order.resize(d);
  std::iota(res.order.begin(), res.order.end(), 0);
  std::stable_sort(res.order.begin(), res.order.end(),
                   [&](int a, int b) { return lambda[a] < lambda[b]; });

  std::vector<Rational> work(d);
  for (std::size_t i = 0; i < d; ++i) work[i] = lambda[res.order[i]];
  res.sorted_input = work;

  for (std::size_t k = 1; k < d; ++k) {
    Rational prefix;
    for (std::size_t j = 0; j < k; ++j) prefix += work[j];
    if (prefix < c * work[k]) {
      res.rounded = true;
      res.triggered.push_back(static_cast<int>(k));
      Rational target = c * work[k];
      if (prefix.sign() > 0) {
        Rational factor = target / prefix;
        for (std::size_t j = 0; j < k; ++j) work[j] *= factor;
      } else {
        Rational share = target / Rational(static_cast<long long>(k));
        for (std::size_t j = 0; j < k; ++j) work[j] = share;
      }
#ifndef NDEBUG
      // rescaling keeps the vector ascending and lands on the equality boundary
      for (std::size_t j = 0; j + 1 < d; ++j) assert(work[j] <= work[j + 1]);
      Rational check;
      for (std::size_t j = 0; j < k; ++j) check += work[j];
      assert(check == c * work[k]);
#endif
    }
  }
  res.sorted_final = work;

  std::vector<Rational> unsorted(d);
  for (std::size_t i = 0; i < d; ++i) unsorted[res.order[i]] = work[i];
  res.weight = res.rounded ? WeightVector::normalized(std::move(unsorted)) : lambda;
  assert(in_compact(res.weight, c));
  return res;
}

std::vector<Rational> project(const std::vector<Rational>& values, const std::vector<int>& zero_set) {
  if (zero_set.empty()) throw ContractError("project: index set must be nonempty");
  if (zero_set.size() >= values.size()) throw ContractError("project: index set must be a proper subset");
  std::vector<bool> mark(values.size(), false);
  for (int i : zero_set) {
    if (i < 0 || static_cast<std::size_t>(i) >= values.size())
      throw ContractError("project: index out of range");
    if (mark[i]) throw ContractError("project: duplicate index");
    mark[i] = true;
  }
  std::vector<Rational> out = values;
  for (int i : zero_set) out[i] = Rational(0);
  return out;
}

}  // namespace moca
