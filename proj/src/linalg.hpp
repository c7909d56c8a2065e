// Internal exact linear algebra: fraction-free determinants and Cramer
// solves over an integer value type (mpz or __int128), plus a plain
// rational Gaussian elimination used by the serial reference kernels.

#ifndef MOCA_SRC_LINALG_HPP
#define MOCA_SRC_LINALG_HPP

#include <cmath>
#include <vector>

#include "moca/rational.hpp"
#include "scal_util.hpp"

namespace moca::detail {

/// Fraction-free (Bareiss) determinant; destroys its argument.
template <typename V>
V bareiss_determinant(std::vector<std::vector<V>>& a) {
  int k = static_cast<int>(a.size());
  V prev(1);
  int sign = 1;
  for (int col = 0; col < k - 1; ++col) {
    int piv = -1;
    for (int r = col; r < k; ++r)
      if (a[r][col] != V(0)) {
        piv = r;
        break;
      }
    if (piv < 0) return V(0);
    if (piv != col) {
      std::swap(a[piv], a[col]);
      sign = -sign;
    }
    for (int r = col + 1; r < k; ++r) {
      for (int c = col + 1; c < k; ++c) a[r][c] = (a[r][c] * a[col][col] - a[r][col] * a[col][c]) / prev;
      a[r][col] = V(0);
    }
    prev = a[col][col];
  }
  V det = a[k - 1][k - 1];
  return sign < 0 ? V(-det) : det;
}

/// Solves A x = b by Cramer's rule with Bareiss determinants. Returns false
/// when A is singular. On success x holds integer numerators and det the
/// common (positive) denominator.
template <typename V>
bool cramer_solve(const std::vector<std::vector<V>>& A, const std::vector<V>& b, std::vector<V>& x, V& det) {
  int k = static_cast<int>(A.size());
  std::vector<std::vector<V>> work = A;
  det = bareiss_determinant(work);
  if (det == V(0)) return false;
  x.assign(k, V(0));
  for (int col = 0; col < k; ++col) {
    work = A;
    for (int r = 0; r < k; ++r) work[r][col] = b[r];
    x[col] = bareiss_determinant(work);
  }
  if (det < V(0)) {
    det = V(-det);
    for (V& xi : x) xi = V(-xi);
  }
  return true;
}

/// Rational Gaussian elimination for the serial reference path. Returns
/// false when the system is singular.
inline bool gauss_solve(std::vector<std::vector<Rational>> a, std::vector<Rational> rhs,
                        std::vector<Rational>& out) {
  int k = static_cast<int>(a.size());
  for (int col = 0; col < k; ++col) {
    int piv = -1;
    for (int r = col; r < k; ++r)
      if (!a[r][col].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) return false;
    std::swap(a[piv], a[col]);
    std::swap(rhs[piv], rhs[col]);
    for (int r = col + 1; r < k; ++r) {
      if (a[r][col].is_zero()) continue;
      Rational factor = a[r][col] / a[col][col];
      for (int c = col; c < k; ++c) a[r][c] -= factor * a[col][c];
      rhs[r] -= factor * rhs[col];
    }
  }
  out.assign(k, Rational(0));
  for (int r = k - 1; r >= 0; --r) {
    Rational acc = rhs[r];
    for (int c = r + 1; c < k; ++c) acc -= a[r][c] * out[c];
    out[r] = acc / a[r][r];
  }
  return true;
}

/// Conservative check that a k x k Cramer solve plus (k+1)-term feasibility
/// dot products over entries bounded by `max_abs` stays within __int128.
inline bool int128_eligible(int k, const mpz_class& max_abs) {
  double bits = static_cast<double>(bit_width(max_abs == 0 ? mpz_class(1) : max_abs));
  double minor_bits = 0.5 * k * (std::log2(static_cast<double>(k)) + 2.0 * bits);
  double worst = std::max(2.0 * minor_bits, minor_bits + bits + std::log2(static_cast<double>(k + 1)));
  return worst + 6.0 <= 126.0;
}

}  // namespace moca::detail

#endif  // MOCA_SRC_LINALG_HPP
