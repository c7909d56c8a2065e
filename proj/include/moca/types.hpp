/**
 * @file types.hpp
 * @brief Optimization sense, objective vectors, and weight vectors.
 */

#ifndef MOCA_TYPES_HPP
#define MOCA_TYPES_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "moca/errors.hpp"
#include "moca/rational.hpp"

namespace moca {

/// Optimization sense carried by every instance; comparisons, half-spaces,
/// and indicators dispatch on it.
enum class Sense { minimize, maximize };

inline const char* to_string(Sense s) { return s == Sense::minimize ? "minimize" : "maximize"; }

/// "a is at least as good as b" under the given sense.
inline bool at_least_as_good(const Rational& a, const Rational& b, Sense sense) {
  return sense == Sense::minimize ? a <= b : a >= b;
}

/// A point of the image set: a d-tuple of nonnegative exact rationals.
class ObjectiveVector {
 public:
  ObjectiveVector() = default;
  explicit ObjectiveVector(std::vector<Rational> values);

  std::size_t dim() const { return values_.size(); }
  const Rational& operator[](std::size_t i) const { return values_[i]; }
  const std::vector<Rational>& values() const { return values_; }

  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  std::string str() const;

  friend bool operator==(const ObjectiveVector& a, const ObjectiveVector& b) { return a.values_ == b.values_; }
  friend bool operator!=(const ObjectiveVector& a, const ObjectiveVector& b) { return !(a == b); }
  /// Lexicographic order; used for canonical sorting and deduplication.
  friend bool operator<(const ObjectiveVector& a, const ObjectiveVector& b);

 private:
  std::vector<Rational> values_;
};

/// A normalized point of the weight set: nonnegative components summing to 1.
class WeightVector {
 public:
  WeightVector() = default;
  /// Requires components >= 0 summing to exactly 1.
  explicit WeightVector(std::vector<Rational> weights);

  /// Scales a nonnegative, nonzero tuple onto the weight set.
  static WeightVector normalized(std::vector<Rational> raw);

  /// The barycenter (1/d, ..., 1/d).
  static WeightVector uniform(std::size_t d);

  std::size_t dim() const { return weights_.size(); }
  const Rational& operator[](std::size_t i) const { return weights_[i]; }
  const std::vector<Rational>& weights() const { return weights_; }

  auto begin() const { return weights_.begin(); }
  auto end() const { return weights_.end(); }

  std::string str() const;

  friend bool operator==(const WeightVector& a, const WeightVector& b) { return a.weights_ == b.weights_; }
  friend bool operator!=(const WeightVector& a, const WeightVector& b) { return !(a == b); }
  friend bool operator<(const WeightVector& a, const WeightVector& b);

 private:
  std::vector<Rational> weights_;
};

/// Exact inner product lambda^T y.
Rational weighted_value(const WeightVector& lambda, const ObjectiveVector& y);

/// Pareto dominance under the given sense (strict: y != y' required).
bool dominates(const ObjectiveVector& y, const ObjectiveVector& yp, Sense sense);

}  // namespace moca

#endif  // MOCA_TYPES_HPP
