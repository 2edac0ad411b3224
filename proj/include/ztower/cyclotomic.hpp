#pragma once

// Exact arithmetic in Z[zeta] for zeta a primitive ell^n-th root of unity.
//
// Elements are residue classes modulo the cyclotomic polynomial
//   Phi_{ell^n}(x) = sum_{j < ell} x^(j * ell^(n-1)),
// stored as coefficient vectors of length phi(ell^n) in the power basis.
// Level n = 0 is Z itself. No complex embedding is ever chosen.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ztower/int_poly.hpp"

namespace ztower {

struct CycLevel {
  std::uint32_t ell = 2;
  std::uint32_t n = 0;

  /// ell^n
  std::uint64_t order() const;
  /// phi(ell^n), or 1 at level 0
  std::size_t phi() const;

  friend bool operator==(const CycLevel&, const CycLevel&) = default;
};

class CycInt {
 public:
  CycInt() = default;
  explicit CycInt(CycLevel level);                    // zero
  CycInt(CycLevel level, const BigInt& integer);      // rational integer
  CycInt(CycLevel level, IntPoly coeffs);             // reduces an arbitrary polynomial

  const CycLevel& level() const { return level_; }
  const IntPoly& coeffs() const { return coeffs_; }

  bool is_zero() const;
  /// True if the element lies in Z (only the constant coefficient is set).
  bool is_integer() const;

  friend CycInt operator+(const CycInt& a, const CycInt& b);
  friend CycInt operator-(const CycInt& a, const CycInt& b);
  friend CycInt operator*(const CycInt& a, const CycInt& b);
  friend CycInt operator-(const CycInt& a);
  CycInt& operator+=(const CycInt& b);
  CycInt& operator-=(const CycInt& b);

  friend bool operator==(const CycInt& a, const CycInt& b);

 private:
  CycLevel level_;
  IntPoly coeffs_;
};

/// Reduces a polynomial of any degree modulo Phi_{ell^n} into phi(ell^n)
/// coefficients, using only the sparse relation for x^phi.
IntPoly reduce_mod_cyclotomic(IntPoly p, const CycLevel& level);

/// Phi_{ell^n} as a dense polynomial.
IntPoly cyclotomic_polynomial(const CycLevel& level);

/// zeta^k, k taken modulo ell^n.
CycInt zeta_power(const CycLevel& level, std::int64_t k);

/// eps(a) = (1 - zeta^a)(1 - zeta^-a) = 2 - zeta^a - zeta^-a.
CycInt epsilon(const CycLevel& level, std::int64_t a);

/// The automorphism zeta -> zeta^u, u coprime to ell.
CycInt galois_conjugate(const CycInt& x, std::uint64_t u);

/// Relative norm from level n to level n - 1 (n >= 2): the product of the
/// ell conjugates under zeta -> zeta^(1 + j ell^(n-1)), rewritten in the basis
/// of the subring generated by zeta^ell.
CycInt relative_norm_down(const CycInt& x);

/// Absolute norm N(x) = product of all conjugates, computed through the
/// tower of relative norms. Equals Res(Phi_{ell^n}, x).
BigInt norm_to_int(const CycInt& x);

/// Same quantity through the subresultant of Phi_{ell^n} and the
/// representative polynomial; independent of the tower route.
BigInt norm_by_resultant(const CycInt& x);

/// ell-adic valuation normalised so v(ell) = 1. Throws std::domain_error
/// on zero.
Rational v_ell(const CycInt& x);

}  // namespace ztower
