// Internal helpers for oracle implementations: integer rescaling of weight
// vectors and conversions between GMP integers and __int128.

#ifndef MOCA_SRC_SCAL_UTIL_HPP
#define MOCA_SRC_SCAL_UTIL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "moca/types.hpp"

namespace moca::detail {

using int128 = __int128;

/// Rescales lambda by the lcm of its denominators. The result is a
/// nonnegative integer direction vector defining the same scalarization.
inline std::vector<mpz_class> integer_direction(const WeightVector& lambda) {
  mpz_class common(1);
  for (std::size_t i = 0; i < lambda.dim(); ++i) {
    mpz_class den = lambda[i].denominator();
    mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), den.get_mpz_t());
  }
  std::vector<mpz_class> dir(lambda.dim());
  for (std::size_t i = 0; i < lambda.dim(); ++i) {
    dir[i] = lambda[i].numerator() * (common / lambda[i].denominator());
  }
  return dir;
}

inline std::size_t bit_width(const mpz_class& z) { return mpz_sizeinbase(z.get_mpz_t(), 2); }

/// True when |z| is representable with `margin` spare bits in int128.
inline bool fits_int128(const mpz_class& z, unsigned margin = 2) { return bit_width(z) + margin <= 126; }

inline int128 to_int128(const mpz_class& z) {
  std::uint64_t limbs[2] = {0, 0};
  std::size_t count = 0;
  mpz_export(limbs, &count, -1, sizeof(std::uint64_t), 0, 0, z.get_mpz_t());
  int128 mag = (static_cast<int128>(limbs[1]) << 64) | static_cast<int128>(limbs[0]);
  return sgn(z) < 0 ? -mag : mag;
}

inline mpz_class from_int128(int128 v) {
  bool neg = v < 0;
  unsigned __int128 mag = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  std::uint64_t limbs[2] = {static_cast<std::uint64_t>(mag), static_cast<std::uint64_t>(mag >> 64)};
  mpz_class z;
  mpz_import(z.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, limbs);
  return neg ? mpz_class(-z) : z;
}

}  // namespace moca::detail

#endif  // MOCA_SRC_SCAL_UTIL_HPP
