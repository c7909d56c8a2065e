/**
 * @file rational.hpp
 * @brief Exact rational arithmetic used by all core algorithms.
 *
 * Backed by GMP's mpq. The wrapper guarantees the representation
 * invariant (denominator > 0, fraction in lowest terms) on every
 * construction path; arithmetic then preserves it. No operation here
 * ever rounds -- floating point appears only in report rendering.
 */

#ifndef MOCA_RATIONAL_HPP
#define MOCA_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>

#include "moca/errors.hpp"

namespace moca {

class Rational {
 public:
  Rational() : q_(0) {}
  Rational(int n) : q_(n) {}                  // NOLINT(google-explicit-constructor)
  Rational(long n) : q_(static_cast<signed long>(n)) {}  // NOLINT
  Rational(long long n) : q_(mpz_from_ll(n)) {}          // NOLINT

  Rational(long long num, long long den) : q_(mpz_from_ll(num), mpz_from_ll(den)) {
    if (den == 0) throw ContractError("Rational: zero denominator");
    q_.canonicalize();
  }

  Rational(mpz_class num, mpz_class den) : q_(std::move(num), std::move(den)) {
    if (q_.get_den() == 0) throw ContractError("Rational: zero denominator");
    q_.canonicalize();
  }

  explicit Rational(mpz_class n) : q_(std::move(n)) {}

  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Parses "p/q", a plain integer, or a decimal literal like "0.25".
  static Rational parse(const std::string& text);

  const mpq_class& raw() const { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }

  double to_double() const { return q_.get_d(); }
  std::string str() const;

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw ContractError("Rational: division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
  friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
  friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
  friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.q_.get_mpq_t(), b.q_.get_mpq_t()) != 0; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) < 0; }
  friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) <= 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) > 0; }
  friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) >= 0; }

 private:
  static mpz_class mpz_from_ll(long long v);

  mpq_class q_;
};

inline Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }
inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// base^e for integer e (exact; e may be negative when base != 0).
Rational pow(const Rational& base, long e);

}  // namespace moca

#endif  // MOCA_RATIONAL_HPP
