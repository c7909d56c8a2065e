#include "moca/types.hpp"

#include <sstream>

namespace moca {

namespace {

std::string tuple_str(const std::vector<Rational>& v) {
  std::ostringstream oss;
  oss << "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    oss << v[i].str();
    if (i + 1 < v.size()) oss << ", ";
  }
  oss << ")";
  return oss.str();
}

bool lex_less(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::size_t n = a.size() < b.size() ? a.size() : b.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return a.size() < b.size();
}

}  // namespace

ObjectiveVector::ObjectiveVector(std::vector<Rational> values) : values_(std::move(values)) {
  for (const Rational& v : values_) {
    if (v.sign() < 0) throw ContractError("ObjectiveVector: negative component");
  }
}

std::string ObjectiveVector::str() const { return tuple_str(values_); }

bool operator<(const ObjectiveVector& a, const ObjectiveVector& b) { return lex_less(a.values_, b.values_); }

WeightVector::WeightVector(std::vector<Rational> weights) : weights_(std::move(weights)) {
  Rational sum;
  for (const Rational& w : weights_) {
    if (w.sign() < 0) throw ContractError("WeightVector: negative component");
    sum += w;
  }
  if (sum != Rational(1)) throw ContractError("WeightVector: components must sum to 1, got " + sum.str());
}

WeightVector WeightVector::normalized(std::vector<Rational> raw) {
  Rational sum;
  for (const Rational& w : raw) {
    if (w.sign() < 0) throw ContractError("WeightVector::normalized: negative component");
    sum += w;
  }
  if (sum.is_zero()) throw ContractError("WeightVector::normalized: zero vector");
  for (Rational& w : raw) w /= sum;
  return WeightVector(std::move(raw));
}

WeightVector WeightVector::uniform(std::size_t d) {
  if (d == 0) throw ContractError("WeightVector::uniform: d must be positive");
  std::vector<Rational> w(d, Rational(1, static_cast<long long>(d)));
  return WeightVector(std::move(w));
}

std::string WeightVector::str() const { return tuple_str(weights_); }

bool operator<(const WeightVector& a, const WeightVector& b) { return lex_less(a.weights_, b.weights_); }

Rational weighted_value(const WeightVector& lambda, const ObjectiveVector& y) {
  if (lambda.dim() != y.dim())
    throw ContractError("weighted_value: dimension mismatch (" + std::to_string(lambda.dim()) + " vs " +
                        std::to_string(y.dim()) + ")");
  Rational acc;
  for (std::size_t i = 0; i < y.dim(); ++i) acc += lambda[i] * y[i];
  return acc;
}

bool dominates(const ObjectiveVector& y, const ObjectiveVector& yp, Sense sense) {
  if (y.dim() != yp.dim()) throw ContractError("dominates: dimension mismatch");
  if (y == yp) return false;
  for (std::size_t i = 0; i < y.dim(); ++i) {
    if (!at_least_as_good(y[i], yp[i], sense)) return false;
  }
  return true;
}

}  // namespace moca
