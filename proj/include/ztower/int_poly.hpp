#pragma once

// Dense univariate integer polynomials, low degree first.

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace ztower {

using BigInt = mpz_class;
using Rational = mpq_class;
using IntPoly = std::vector<BigInt>;

/// Drops trailing zero coefficients. The zero polynomial becomes empty.
void trim(IntPoly& p);

/// Degree of p, or -1 for the zero polynomial.
long degree(const IntPoly& p);

/// Product of two polynomials. Switches to Kronecker substitution on top of
/// GMP multiplication once both operands are long enough.
IntPoly multiply(const IntPoly& a, const IntPoly& b);

/// Schoolbook product; kept public so the fast path can be checked against it.
IntPoly multiply_schoolbook(const IntPoly& a, const IntPoly& b);

IntPoly derivative(const IntPoly& p);

BigInt evaluate(const IntPoly& p, const BigInt& x);

/// Resultant Res(f, g) by the subresultant PRS. Exact over Z.
BigInt resultant(IntPoly f, IntPoly g);

}  // namespace ztower
