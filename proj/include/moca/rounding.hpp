/**
 * @file rounding.hpp
 * @brief Approximation parameters and the two weight rounding schemes.
 *
 * All quantities are exact rationals. The square root in the parameter
 * derivation is replaced by a rational lower approximation with 2^-32
 * granularity, and the coarse rounding base is (1 + eps')^2 - 1 instead of
 * the nominal eps, so every rounded weight lands on one common exponent
 * lattice with base (1 + eps') and every guarantee chain still closes at
 * (1 + eps) times the oracle factor.
 */

#ifndef MOCA_ROUNDING_HPP
#define MOCA_ROUNDING_HPP

#include <memory>
#include <vector>

#include "moca/scalarize.hpp"
#include "moca/types.hpp"

namespace moca {

/// Exact powers of a rational base > 1 on an integer exponent range.
/// Small ranges are tabulated; queries outside the table fall back to
/// repeated squaring. Immutable and safe to share across threads.
class PowerLattice {
 public:
  PowerLattice(Rational base, long lo, long hi, std::size_t table_cap = 16384);

  const Rational& base() const { return base_; }
  long lo() const { return lo_; }
  long hi() const { return hi_; }

  Rational power(long exponent) const;

  /// Smallest exponent a = step * t with base^a >= x. Requires x within the
  /// lattice coverage; used as the exact bisection step of grid rounding.
  long ceil_log_multiple(const Rational& x, long step) const;

 private:
  Rational base_;
  long lo_;
  long hi_;
  long table_lo_ = 0;
  std::vector<Rational> table_;
};

/// Canonical identifier of a grid weight vector: the exponent tuple shifted
/// so its minimum is zero (tuples differing by a constant describe the same
/// normalized weight vector).
struct GridKey {
  std::vector<long> exponents;

  friend bool operator==(const GridKey& a, const GridKey& b) { return a.exponents == b.exponents; }
  friend bool operator<(const GridKey& a, const GridKey& b) { return a.exponents < b.exponents; }
};

struct ApproxParams {
  Rational epsilon;
  Rational epsilon_prime;  ///< rational lower approximation of sqrt(1+eps)-1
  Rational epsilon_grid;   ///< (1+eps')^2 - 1, the coarse rounding base
  Rational alpha;
  Rational beta;  ///< (1+eps') * alpha
  Rational c;     ///< eps' * LB / (beta * UB)
  Rational lb;    ///< (1/d!) * c^(d-1), lower bound on compact-weight components
  long a_min = 0;
  long a_max = 0;
  int d = 0;
  std::shared_ptr<const PowerLattice> lattice;
};

/// Derives all approximation parameters from (eps, alpha, bounds, d). The
/// exponent range satisfies (1+eps')^a_min <= lb with a_min maximal and
/// (1+eps')^a_max >= 1-(d-1)*lb with a_max minimal; no logarithms are used,
/// only exact power comparisons.
ApproxParams derive_parameters(const Rational& epsilon, const Rational& alpha, const Bounds& bounds, int d);

/// Same derivation with a caller-supplied eps' (must satisfy 0 < eps' and
/// (1+eps')^2 <= 1+eps).
ApproxParams derive_parameters_with(const Rational& epsilon, const Rational& epsilon_prime, const Rational& alpha,
                                    const Bounds& bounds, int d);

struct GridRoundResult {
  WeightVector weight;  ///< normalized grid weight vector
  GridKey key;          ///< canonical exponent tuple (base 1+eps')
  std::vector<Rational> snapped;       ///< per-component powers before normalization
  std::vector<long> raw_exponents;     ///< exponents on the (1+eps') lattice before canonicalization
};

/// Snaps each component up to the next power of (1+delta) and normalizes.
/// delta must be params.epsilon_prime or params.epsilon_grid; the result key
/// always lives on the common (1+eps') lattice (exponents doubled for the
/// coarse base). Every component must be >= params.lb (boundary-round first).
GridRoundResult grid_round(const WeightVector& lambda, const Rational& delta, const ApproxParams& params);

struct BoundaryRoundResult {
  WeightVector weight;
  bool rounded = false;
  // diagnostics for the property suites
  std::vector<int> order;              ///< ascending sort permutation (original indices)
  std::vector<Rational> sorted_input;  ///< components after sorting, before rescaling
  std::vector<Rational> sorted_final;  ///< components after all rescales, before normalization
  std::vector<int> triggered;          ///< prefix sizes k whose rescale fired
};

/// Pulls a weight vector into the compact subset: ascending prefixes that
/// fall below c times the next component are rescaled onto the equality
/// boundary (positive prefixes proportionally, all-zero prefixes uniformly
/// with factor c/k). Untriggered inputs pass through unchanged.
BoundaryRoundResult boundary_round(const WeightVector& lambda, const ApproxParams& params);

/// Zeroes the components with indices in `zero_set` (0-based, nonempty,
/// proper subset).
std::vector<Rational> project(const std::vector<Rational>& values, const std::vector<int>& zero_set);

}  // namespace moca

#endif  // MOCA_ROUNDING_HPP
