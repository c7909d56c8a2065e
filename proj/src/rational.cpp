#include "moca/rational.hpp"

#include <cctype>

namespace moca {

mpz_class Rational::mpz_from_ll(long long v) {
  if (v >= 0) {
    mpz_class z;
    mpz_import(z.get_mpz_t(), 1, 1, sizeof(unsigned long long), 0, 0, &v);
    return z;
  }
  unsigned long long mag = ~static_cast<unsigned long long>(v) + 1ULL;
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(unsigned long long), 0, 0, &mag);
  return -z;
}

Rational Rational::parse(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) throw ContractError("Rational::parse: empty string");

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    mpz_class num, den;
    if (num.set_str(s.substr(0, slash), 10) != 0 || den.set_str(s.substr(slash + 1), 10) != 0)
      throw ContractError("Rational::parse: bad fraction '" + text + "'");
    return Rational(std::move(num), std::move(den));
  }

  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac_len = s.size() - dot - 1;
    mpz_class num;
    if (digits.empty() || num.set_str(digits, 10) != 0)
      throw ContractError("Rational::parse: bad decimal '" + text + "'");
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    return Rational(std::move(num), std::move(den));
  }

  mpz_class num;
  if (num.set_str(s, 10) != 0) throw ContractError("Rational::parse: bad integer '" + text + "'");
  return Rational(std::move(num));
}

std::string Rational::str() const {
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational pow(const Rational& base, long e) {
  if (e == 0) return Rational(1);
  if (base.is_zero()) {
    if (e < 0) throw ContractError("pow: zero base with negative exponent");
    return Rational(0);
  }
  unsigned long mag = static_cast<unsigned long>(e < 0 ? -e : e);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.numerator().get_mpz_t(), mag);
  mpz_pow_ui(den.get_mpz_t(), base.denominator().get_mpz_t(), mag);
  if (e < 0) std::swap(num, den);
  return Rational(std::move(num), std::move(den));
}

}  // namespace moca
