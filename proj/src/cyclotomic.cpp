#include "ztower/cyclotomic.hpp"

#include <limits>
#include <stdexcept>
#include <utility>

#include "ztower/spanning_trees.hpp"

namespace ztower {

std::uint64_t CycLevel::order() const {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / ell) {
      throw std::overflow_error("ell^n does not fit in 64 bits");
    }
    r *= ell;
  }
  return r;
}

std::size_t CycLevel::phi() const {
  if (n == 0) return 1;
  return static_cast<std::size_t>(order() / ell * (ell - 1));
}

namespace {

void check_same_level(const CycInt& a, const CycInt& b) {
  if (!(a.level() == b.level())) throw std::invalid_argument("cyclotomic level mismatch");
}

// Adds c * zeta^e (0 <= e < ell^n) into a reduced coefficient vector.
void add_monomial(IntPoly& acc, const CycLevel& level, std::uint64_t e, const BigInt& c) {
  if (level.n == 0) {
    acc[0] += c;
    return;
  }
  const std::size_t phi = acc.size();
  if (e < phi) {
    acc[e] += c;
    return;
  }
  // x^e = -sum_{i=1}^{ell-1} x^(e - i m) once e >= phi; all targets are < phi.
  const std::uint64_t m = level.order() / level.ell;
  for (std::uint32_t i = 1; i < level.ell; ++i) acc[e - i * m] -= c;
}

}  // namespace

IntPoly reduce_mod_cyclotomic(IntPoly p, const CycLevel& level) {
  const std::size_t phi = level.phi();
  if (level.n == 0) {
    BigInt sum = 0;
    for (const auto& c : p) sum += c;
    return IntPoly{sum};
  }
  const std::size_t m = static_cast<std::size_t>(level.order() / level.ell);
  for (std::size_t e = p.size(); e-- > phi;) {
    if (sgn(p[e]) == 0) continue;
    for (std::uint32_t i = 1; i < level.ell; ++i) p[e - i * m] -= p[e];
  }
  p.resize(phi);
  return p;
}

IntPoly cyclotomic_polynomial(const CycLevel& level) {
  if (level.n == 0) return IntPoly{-1, 1};
  const std::size_t m = static_cast<std::size_t>(level.order() / level.ell);
  IntPoly p((level.ell - 1) * m + 1, 0);
  for (std::uint32_t j = 0; j < level.ell; ++j) p[j * m] = 1;
  return p;
}

CycInt::CycInt(CycLevel level) : level_(level), coeffs_(level.phi(), 0) {}

CycInt::CycInt(CycLevel level, const BigInt& integer) : CycInt(level) { coeffs_[0] = integer; }

CycInt::CycInt(CycLevel level, IntPoly coeffs)
    : level_(level), coeffs_(reduce_mod_cyclotomic(std::move(coeffs), level)) {
  coeffs_.resize(level_.phi(), 0);
}

bool CycInt::is_zero() const {
  for (const auto& c : coeffs_) {
    if (sgn(c) != 0) return false;
  }
  return true;
}

bool CycInt::is_integer() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) != 0) return false;
  }
  return true;
}

CycInt operator+(const CycInt& a, const CycInt& b) {
  CycInt r = a;
  r += b;
  return r;
}

CycInt operator-(const CycInt& a, const CycInt& b) {
  CycInt r = a;
  r -= b;
  return r;
}

CycInt& CycInt::operator+=(const CycInt& b) {
  check_same_level(*this, b);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += b.coeffs_[i];
  return *this;
}

CycInt& CycInt::operator-=(const CycInt& b) {
  check_same_level(*this, b);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= b.coeffs_[i];
  return *this;
}

CycInt operator-(const CycInt& a) {
  CycInt r = a;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

CycInt operator*(const CycInt& a, const CycInt& b) {
  check_same_level(a, b);
  return CycInt(a.level_, multiply(a.coeffs_, b.coeffs_));
}

bool operator==(const CycInt& a, const CycInt& b) {
  return a.level_ == b.level_ && a.coeffs_ == b.coeffs_;
}

CycInt zeta_power(const CycLevel& level, std::int64_t k) {
  const auto ord = static_cast<std::int64_t>(level.order());
  std::int64_t e = k % ord;
  if (e < 0) e += ord;
  IntPoly coeffs(level.phi(), 0);
  add_monomial(coeffs, level, static_cast<std::uint64_t>(e), BigInt(1));
  return CycInt(level, std::move(coeffs));
}

CycInt epsilon(const CycLevel& level, std::int64_t a) {
  CycInt r(level, BigInt(2));
  r -= zeta_power(level, a);
  r -= zeta_power(level, -a);
  return r;
}

CycInt galois_conjugate(const CycInt& x, std::uint64_t u) {
  const CycLevel& level = x.level();
  if (level.n == 0) return x;
  if (u % level.ell == 0) throw std::invalid_argument("Galois exponent must be a unit");
  const std::uint64_t ord = level.order();
  const std::uint64_t step = u % ord;
  IntPoly acc(level.phi(), 0);
  std::uint64_t e = 0;
  for (std::size_t i = 0; i < x.coeffs().size(); ++i) {
    if (sgn(x.coeffs()[i]) != 0) add_monomial(acc, level, e, x.coeffs()[i]);
    e += step;
    if (e >= ord) e -= ord;
  }
  return CycInt(level, std::move(acc));
}

CycInt relative_norm_down(const CycInt& x) {
  const CycLevel& level = x.level();
  if (level.n < 2) throw std::invalid_argument("relative norm needs level n >= 2");
  const std::uint64_t m = level.order() / level.ell;
  CycInt prod = x;
  for (std::uint32_t j = 1; j < level.ell; ++j) prod = prod * galois_conjugate(x, 1 + j * m);
  const CycLevel lower{level.ell, level.n - 1};
  IntPoly down(lower.phi(), 0);
  const auto& c = prod.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i % level.ell == 0) {
      down[i / level.ell] = c[i];
    } else if (sgn(c[i]) != 0) {
      throw std::logic_error("relative norm left the subfield");
    }
  }
  return CycInt(lower, std::move(down));
}

BigInt norm_to_int(const CycInt& x) {
  CycInt y = x;
  while (y.level().n >= 2) y = relative_norm_down(y);
  if (y.level().n == 0 || y.level().ell == 2) return y.coeffs()[0];
  CycInt prod = y;
  for (std::uint32_t u = 2; u < y.level().ell; ++u) prod = prod * galois_conjugate(y, u);
  if (!prod.is_integer()) throw std::logic_error("absolute norm is not a rational integer");
  return prod.coeffs()[0];
}

BigInt norm_by_resultant(const CycInt& x) {
  if (x.level().n == 0) return x.coeffs()[0];
  return resultant(cyclotomic_polynomial(x.level()), x.coeffs());
}

Rational v_ell(const CycInt& x) {
  if (x.is_zero()) throw std::domain_error("valuation of zero");
  BigInt norm = norm_to_int(x);
  Rational v(BigInt(ord_prime(norm, x.level().ell)), BigInt(x.level().phi()));
  v.canonicalize();
  return v;
}

}  // namespace ztower
