#pragma once

// Division-free determinants over commutative rings.
//
// Berkowitz's algorithm builds the characteristic polynomial of each leading
// principal submatrix from the previous one through a Toeplitz product, using
// only ring additions and multiplications (O(n^4) of them). That makes it
// usable over rings without exact division: cyclotomic integers, truncated
// power series, Laurent polynomials.

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace ztower {

template <typename Ring>
using Matrix = std::vector<std::vector<Ring>>;

template <typename Ring>
Ring berkowitz_determinant(const Matrix<Ring>& a, const Ring& zero, const Ring& one) {
  const std::size_t n = a.size();
  for (const auto& row : a) {
    if (row.size() != n) throw std::invalid_argument("determinant of a non-square matrix");
  }
  if (n == 0) return one;

  // charpoly[i] is the coefficient of x^(k - i) in det(x I - A_k).
  std::vector<Ring> charpoly{one};
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t m = k - 1;  // size of the previous block
    // Toeplitz column: 1, -a_kk, -R C, -R A C, ..., -R A^(k-2) C
    std::vector<Ring> toeplitz;
    toeplitz.reserve(k + 1);
    toeplitz.push_back(one);
    toeplitz.push_back(-a[m][m]);
    std::vector<Ring> v(m, zero);
    for (std::size_t i = 0; i < m; ++i) v[i] = a[i][m];
    for (std::size_t step = 0; step + 2 <= k; ++step) {
      Ring acc = zero;
      for (std::size_t j = 0; j < m; ++j) acc = acc + a[m][j] * v[j];
      toeplitz.push_back(-acc);
      if (step + 3 <= k) {
        std::vector<Ring> next(m, zero);
        for (std::size_t i = 0; i < m; ++i) {
          Ring s = zero;
          for (std::size_t j = 0; j < m; ++j) s = s + a[i][j] * v[j];
          next[i] = std::move(s);
        }
        v = std::move(next);
      }
    }
    std::vector<Ring> next_poly(k + 1, zero);
    for (std::size_t i = 0; i <= k; ++i) {
      Ring s = zero;
      for (std::size_t j = 0; j < charpoly.size() && j <= i; ++j) {
        s = s + toeplitz[i - j] * charpoly[j];
      }
      next_poly[i] = std::move(s);
    }
    charpoly = std::move(next_poly);
  }
  Ring det = charpoly[n];
  if (n % 2 == 1) det = -det;
  return det;
}

}  // namespace ztower
