#include "ztower/power_series.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "ztower/determinant.hpp"
#include "ztower/multigraph.hpp"
#include "ztower/spanning_trees.hpp"

namespace ztower {

namespace {

std::uint32_t total_degree(const Exponent& e) {
  return static_cast<std::uint32_t>(std::accumulate(e.begin(), e.end(), 0));
}

void check_compatible(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.variables() != b.variables()) throw std::invalid_argument("series in different variables");
}

BigInt binomial(long n, long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

}  // namespace

TruncatedSeries::TruncatedSeries(std::uint32_t d, std::uint32_t bound) : d_(d), bound_(bound) {}

TruncatedSeries TruncatedSeries::constant(std::uint32_t d, std::uint32_t bound, const BigInt& c) {
  TruncatedSeries s(d, bound);
  s.add_term(Exponent(d, 0), c);
  return s;
}

BigInt TruncatedSeries::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? BigInt(0) : it->second;
}

void TruncatedSeries::add_term(const Exponent& e, const BigInt& c) {
  if (e.size() != d_) throw std::invalid_argument("exponent has the wrong number of variables");
  if (total_degree(e) > bound_ || sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

TruncatedSeries TruncatedSeries::truncated(std::uint32_t bound) const {
  TruncatedSeries out(d_, std::min(bound, bound_));
  for (const auto& [e, c] : terms_) out.add_term(e, c);
  return out;
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
  check_compatible(a, b);
  TruncatedSeries out(a.d_, std::min(a.bound_, b.bound_));
  for (const auto& [e, c] : a.terms_) out.add_term(e, c);
  for (const auto& [e, c] : b.terms_) out.add_term(e, c);
  return out;
}

TruncatedSeries operator-(const TruncatedSeries& a) {
  TruncatedSeries out = a;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return a + (-b); }

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  check_compatible(a, b);
  const std::uint32_t bound = std::min(a.bound_, b.bound_);
  TruncatedSeries out(a.d_, bound);
  Exponent e(a.d_);
  for (const auto& [ea, ca] : a.terms_) {
    const std::uint32_t da = total_degree(ea);
    if (da > bound) continue;
    for (const auto& [eb, cb] : b.terms_) {
      if (da + total_degree(eb) > bound) continue;
      for (std::uint32_t i = 0; i < a.d_; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
  return a.d_ == b.d_ && a.bound_ == b.bound_ && a.terms_ == b.terms_;
}

TruncatedSeries rho_series(const Voltage& a, std::uint32_t bound) {
  const auto d = static_cast<std::uint32_t>(a.size());
  TruncatedSeries out = TruncatedSeries::constant(d, bound, 1);
  for (std::uint32_t i = 0; i < d; ++i) {
    TruncatedSeries factor(d, bound);
    Exponent e(d, 0);
    for (std::uint32_t k = 0; k <= bound; ++k) {
      e[i] = static_cast<int>(k);
      BigInt c;
      if (a[i] >= 0) {
        // (1 - T)^a = sum C(a, k) (-T)^k
        if (k > static_cast<std::uint64_t>(a[i])) break;
        c = binomial(a[i], k);
        if (k % 2 == 1) c = -c;
      } else {
        // (1 - T)^-m = sum C(m + k - 1, k) T^k
        c = binomial(-a[i] + static_cast<long>(k) - 1, k);
      }
      factor.add_term(e, c);
    }
    out = out * factor;
  }
  return out;
}

TruncatedSeries q_series(const VoltageSpec& spec, std::uint32_t bound) {
  check_spec_shape(spec);
  const std::size_t g = spec.base.vertex_count();
  const TruncatedSeries zero(spec.d, bound);
  Matrix<TruncatedSeries> m(g, std::vector<TruncatedSeries>(g, zero));
  const auto volt = directed_voltages(spec);
  for (EdgeId e = 0; e < spec.base.directed_edge_count(); ++e) {
    auto& entry = m[spec.base.origin(e)][spec.base.terminus(e)];
    entry = entry - rho_series(volt[e], bound);
  }
  for (std::size_t i = 0; i < g; ++i) {
    m[i][i] = m[i][i] + TruncatedSeries::constant(
                            spec.d, bound, BigInt(static_cast<unsigned long>(spec.base.valency(static_cast<VertexId>(i)))));
  }
  return berkowitz_determinant(m, zero, TruncatedSeries::constant(spec.d, bound, 1));
}

std::uint32_t default_truncation(const VoltageSpec& spec) {
  std::int64_t largest = 0;
  for (const auto& a : spec.alpha) {
    std::int64_t l1 = 0;
    for (auto x : a) l1 += x < 0 ? -x : x;
    largest = std::max(largest, l1);
  }
  return static_cast<std::uint32_t>(2 * largest * spec.ell + 8);
}

LaurentPoly LaurentPoly::monomial(std::uint32_t d, const Voltage& e, const BigInt& c) {
  LaurentPoly p(d);
  p.add_term(e, c);
  return p;
}

void LaurentPoly::add_term(const Voltage& e, const BigInt& c) {
  if (e.size() != d_) throw std::invalid_argument("exponent has the wrong number of variables");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(e, c);
  return out;
}

LaurentPoly operator-(const LaurentPoly& a) {
  LaurentPoly out = a;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly out(a.d_);
  Voltage e(a.d_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::uint32_t i = 0; i < a.d_; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

LaurentPoly q_laurent(const VoltageSpec& spec) {
  check_spec_shape(spec);
  const std::size_t g = spec.base.vertex_count();
  const LaurentPoly zero(spec.d);
  Matrix<LaurentPoly> m(g, std::vector<LaurentPoly>(g, zero));
  const auto volt = directed_voltages(spec);
  for (EdgeId e = 0; e < spec.base.directed_edge_count(); ++e) {
    m[spec.base.origin(e)][spec.base.terminus(e)].add_term(volt[e], -1);
  }
  for (std::size_t i = 0; i < g; ++i) {
    m[i][i].add_term(Voltage(spec.d, 0),
                     BigInt(static_cast<unsigned long>(spec.base.valency(static_cast<VertexId>(i)))));
  }
  return berkowitz_determinant(m, zero, LaurentPoly::monomial(spec.d, Voltage(spec.d, 0), 1));
}

TruncatedSeries expand_in_t(const LaurentPoly& p, std::uint32_t bound) {
  TruncatedSeries out(p.variables(), bound);
  for (const auto& [e, c] : p.terms()) {
    out = out + rho_series(e, bound) * TruncatedSeries::constant(p.variables(), bound, c);
  }
  return out;
}

CycInt evaluate_laurent(const LaurentPoly& p, const ClassicalPoint& point) {
  if (point.a.size() != p.variables()) throw std::invalid_argument("point has the wrong dimension");
  const auto ord = static_cast<std::int64_t>(point.level.order());
  IntPoly acc(static_cast<std::size_t>(ord), 0);
  for (const auto& [e, c] : p.terms()) {
    __int128 x = 0;
    for (std::size_t i = 0; i < e.size(); ++i) x = (x + static_cast<__int128>(point.a[i]) * e[i]) % ord;
    if (x < 0) x += ord;
    acc[static_cast<std::size_t>(x)] += c;
  }
  return CycInt(point.level, std::move(acc));
}

CycInt evaluate_at_classical_point(const VoltageSpec& spec, const ClassicalPoint& point) {
  return evaluate_laurent(q_laurent(spec), point);
}

namespace {

IwasawaInvariants invariants_from_coefficients(const std::vector<BigInt>& coeffs, std::uint32_t ell) {
  std::optional<std::uint64_t> mu;
  for (const auto& c : coeffs) {
    if (sgn(c) == 0) continue;
    const auto v = ord_prime(c, ell);
    if (!mu || v < *mu) mu = v;
  }
  if (!mu) throw std::domain_error("series vanishes to the computed precision");
  IwasawaInvariants out;
  out.mu = *mu;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (sgn(coeffs[i]) != 0 && ord_prime(coeffs[i], ell) == *mu) {
      out.lambda = i;
      out.status = IwasawaInvariants::Status::Certified;
      return out;
    }
  }
  out.status = IwasawaInvariants::Status::InsufficientPrecision;
  return out;
}

}  // namespace

IwasawaInvariants iwasawa_invariants_d1(const TruncatedSeries& q, std::uint32_t ell) {
  if (q.variables() != 1) throw std::invalid_argument("Iwasawa invariants need a one-variable series");
  std::vector<BigInt> coeffs(q.bound() + 1, 0);
  for (const auto& [e, c] : q.terms()) coeffs[static_cast<std::size_t>(e[0])] = c;
  return invariants_from_coefficients(coeffs, ell);
}

IwasawaInvariants iwasawa_invariants_exact_d1(const VoltageSpec& spec) {
  if (spec.d != 1) throw std::invalid_argument("Iwasawa invariants need d = 1");
  const LaurentPoly q = q_laurent(spec);
  if (q.terms().empty()) throw std::domain_error("Q vanishes identically");
  std::int64_t low = 0, high = 0;
  for (const auto& [e, c] : q.terms()) {
    low = std::min(low, e[0]);
    high = std::max(high, e[0]);
  }
  // G(Z) = Z^-low Q(Z); expand G(1 - T) = sum_k g_k sum_j C(k, j) (-T)^j.
  const auto degree = static_cast<std::size_t>(high - low);
  std::vector<BigInt> coeffs(degree + 1, 0);
  for (const auto& [e, c] : q.terms()) {
    const long k = e[0] - low;
    for (long j = 0; j <= k; ++j) {
      BigInt term = c * binomial(k, j);
      if (j % 2 == 1) term = -term;
      coeffs[static_cast<std::size_t>(j)] += term;
    }
  }
  return invariants_from_coefficients(coeffs, spec.ell);
}

}  // namespace ztower
