#pragma once

// The character rho(a) = prod_i (1 - T_i)^(a_i) and the multivariable series
// Q(T) = det(D - A_rho).
//
// Q is handled two ways. As a truncated power series in T_1..T_d (for
// inspecting coefficients and the d = 1 Iwasawa invariants), and exactly as a
// Laurent polynomial in Z_i = 1 - T_i, which is what evaluation at classical
// points t_psi = (1 - zeta^(a_1), ..., 1 - zeta^(a_d)) uses: there Z_i becomes
// zeta^(a_i) and nothing is truncated.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "ztower/cyclotomic.hpp"
#include "ztower/voltage.hpp"

namespace ztower {

using Exponent = std::vector<int>;

class TruncatedSeries {
 public:
  TruncatedSeries(std::uint32_t d, std::uint32_t bound);
  static TruncatedSeries constant(std::uint32_t d, std::uint32_t bound, const BigInt& c);

  std::uint32_t variables() const { return d_; }
  std::uint32_t bound() const { return bound_; }
  const std::map<Exponent, BigInt>& terms() const { return terms_; }

  BigInt coefficient(const Exponent& e) const;
  /// Adds c T^e; terms of total degree above the bound are dropped.
  void add_term(const Exponent& e, const BigInt& c);
  bool is_zero() const { return terms_.empty(); }

  /// Copy truncated to a smaller bound.
  TruncatedSeries truncated(std::uint32_t bound) const;

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator-(const TruncatedSeries& a);
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);

 private:
  std::uint32_t d_;
  std::uint32_t bound_;
  std::map<Exponent, BigInt> terms_;  // nonzero coefficients only
};

/// Q_a(T) = rho(a) to total degree `bound`. Negative exponents use the
/// geometric series of (1 - T)^-1.
TruncatedSeries rho_series(const Voltage& a, std::uint32_t bound);

/// Q(T) = det(D - A_rho) to total degree `bound`.
TruncatedSeries q_series(const VoltageSpec& spec, std::uint32_t bound);

/// 2 * (largest l1-norm of a voltage) * ell + 8.
std::uint32_t default_truncation(const VoltageSpec& spec);

/// Laurent polynomial in Z_1..Z_d with integer coefficients.
class LaurentPoly {
 public:
  explicit LaurentPoly(std::uint32_t d) : d_(d) {}
  static LaurentPoly monomial(std::uint32_t d, const Voltage& e, const BigInt& c);

  std::uint32_t variables() const { return d_; }
  const std::map<Voltage, BigInt>& terms() const { return terms_; }
  void add_term(const Voltage& e, const BigInt& c);

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(const LaurentPoly& a);
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) = default;

 private:
  std::uint32_t d_;
  std::map<Voltage, BigInt> terms_;
};

/// det(D - A_rho) with every rho(b) kept as the monomial Z^b.
LaurentPoly q_laurent(const VoltageSpec& spec);

/// Expansion of a Laurent polynomial in Z = 1 - T as a truncated series in T.
TruncatedSeries expand_in_t(const LaurentPoly& p, std::uint32_t bound);

struct ClassicalPoint {
  CycLevel level;
  Voltage a;  // t_i = 1 - zeta^(a_i)
};

/// Substitutes Z_i -> zeta^(a_i), i.e. evaluates at t_psi.
CycInt evaluate_laurent(const LaurentPoly& p, const ClassicalPoint& point);

/// Q(t_psi), exactly.
CycInt evaluate_at_classical_point(const VoltageSpec& spec, const ClassicalPoint& point);

struct IwasawaInvariants {
  enum class Status { Certified, InsufficientPrecision };
  Status status = Status::InsufficientPrecision;
  std::uint64_t mu = 0;
  std::uint64_t lambda = 0;
};

/// mu = least coefficient valuation, lambda = least degree whose coefficient
/// has valuation exactly mu. Needs d = 1; throws std::domain_error when the
/// series vanishes to the computed precision.
IwasawaInvariants iwasawa_invariants_d1(const TruncatedSeries& q, std::uint32_t ell);

/// Same invariants, certified: Q = (1 - T)^-m G(1 - T) with G a polynomial,
/// and the unit factor changes neither mu nor lambda.
IwasawaInvariants iwasawa_invariants_exact_d1(const VoltageSpec& spec);

}  // namespace ztower
