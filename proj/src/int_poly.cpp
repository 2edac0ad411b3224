#include "ztower/int_poly.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace ztower {

void trim(IntPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) {
    p.pop_back();
  }
}

long degree(const IntPoly& p) {
  for (std::size_t i = p.size(); i > 0; --i) {
    if (sgn(p[i - 1]) != 0) return static_cast<long>(i) - 1;
  }
  return -1;
}

IntPoly multiply_schoolbook(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  return out;
}

namespace {

using Limb = std::uint64_t;

std::size_t max_bits(const IntPoly& p) {
  std::size_t bits = 0;
  for (const auto& c : p) {
    if (sgn(c) != 0) bits = std::max(bits, mpz_sizeinbase(c.get_mpz_t(), 2));
  }
  return bits;
}

// ORs |c| into buf starting at bit offset `bit`.
void write_bits(std::vector<Limb>& buf, std::size_t bit, const mpz_class& c) {
  std::size_t count = 0;
  std::vector<Limb> words((mpz_sizeinbase(c.get_mpz_t(), 2) + 63) / 64 + 1, 0);
  mpz_export(words.data(), &count, -1, sizeof(Limb), 0, 0, c.get_mpz_t());
  std::size_t li = bit / 64;
  unsigned sh = static_cast<unsigned>(bit % 64);
  for (std::size_t w = 0; w < count; ++w) {
    buf[li + w] |= words[w] << sh;
    if (sh != 0) buf[li + w + 1] |= words[w] >> (64 - sh);
  }
}

// Packs p(2^width) as a signed integer.
mpz_class pack(const IntPoly& p, std::size_t width) {
  std::size_t limbs = (p.size() * width) / 64 + 2;
  std::vector<Limb> pos(limbs, 0), neg(limbs, 0);
  bool any_neg = false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    int s = sgn(p[i]);
    if (s > 0) {
      write_bits(pos, i * width, p[i]);
    } else if (s < 0) {
      any_neg = true;
      write_bits(neg, i * width, mpz_class(-p[i]));
    }
  }
  mpz_class result, tmp;
  mpz_import(result.get_mpz_t(), limbs, -1, sizeof(Limb), 0, 0, pos.data());
  if (any_neg) {
    mpz_import(tmp.get_mpz_t(), limbs, -1, sizeof(Limb), 0, 0, neg.data());
    result -= tmp;
  }
  return result;
}

// Reads bits [bit, bit + width) of a limb array as a non-negative integer.
mpz_class read_bits(const std::vector<Limb>& buf, std::size_t bit, std::size_t width) {
  std::size_t li = bit / 64;
  unsigned sh = static_cast<unsigned>(bit % 64);
  std::size_t out_words = (width + 63) / 64;
  std::vector<Limb> tmp(out_words, 0);
  for (std::size_t w = 0; w < out_words; ++w) {
    Limb lo = li + w < buf.size() ? buf[li + w] : 0;
    Limb hi = li + w + 1 < buf.size() ? buf[li + w + 1] : 0;
    tmp[w] = sh == 0 ? lo : (lo >> sh) | (hi << (64 - sh));
  }
  unsigned top = static_cast<unsigned>(width % 64);
  if (top != 0) tmp.back() &= (Limb{1} << top) - 1;
  mpz_class v;
  mpz_import(v.get_mpz_t(), out_words, -1, sizeof(Limb), 0, 0, tmp.data());
  return v;
}

IntPoly multiply_kronecker(const IntPoly& a, const IntPoly& b) {
  std::size_t ba = max_bits(a);
  std::size_t bb = max_bits(b);
  if (ba == 0 || bb == 0) return IntPoly(a.size() + b.size() - 1);
  std::size_t len = std::min(a.size(), b.size());
  std::size_t log_len = 0;
  while ((std::size_t{1} << log_len) < len) ++log_len;
  // Every product coefficient is bounded by 2^(width-2) in absolute value.
  std::size_t width = ba + bb + log_len + 2;

  mpz_class r = pack(a, width) * pack(b, width);
  int sign = sgn(r);
  IntPoly out(a.size() + b.size() - 1);
  if (sign == 0) return out;
  if (sign < 0) r = -r;

  std::size_t words = (mpz_sizeinbase(r.get_mpz_t(), 2) + 63) / 64;
  std::vector<Limb> buf(words, 0);
  std::size_t count = 0;
  mpz_export(buf.data(), &count, -1, sizeof(Limb), 0, 0, r.get_mpz_t());

  mpz_class half, full;
  mpz_ui_pow_ui(full.get_mpz_t(), 2, width);
  half = full / 2;
  int carry = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    mpz_class v = read_bits(buf, i * width, width);
    v += carry;
    if (v >= half) {
      v -= full;
      carry = 1;
    } else {
      carry = 0;
    }
    out[i] = sign > 0 ? v : mpz_class(-v);
  }
  if (carry != 0) throw std::logic_error("Kronecker unpack left a carry");
  return out;
}

}  // namespace

IntPoly multiply(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  if (std::min(a.size(), b.size()) < 24) return multiply_schoolbook(a, b);
  return multiply_kronecker(a, b);
}

IntPoly derivative(const IntPoly& p) {
  if (p.size() <= 1) return {};
  IntPoly out(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) out[i - 1] = p[i] * static_cast<unsigned long>(i);
  return out;
}

BigInt evaluate(const IntPoly& p, const BigInt& x) {
  BigInt acc = 0;
  for (std::size_t i = p.size(); i > 0; --i) acc = acc * x + p[i - 1];
  return acc;
}

namespace {

BigInt content(const IntPoly& p) {
  BigInt g = 0;
  for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

BigInt power(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
IntPoly pseudo_remainder(IntPoly a, const IntPoly& b) {
  long db = degree(b);
  const BigInt& lb = b[static_cast<std::size_t>(db)];
  long da = degree(a);
  long e = da - db + 1;
  while (da >= db && da >= 0) {
    BigInt lead = a[static_cast<std::size_t>(da)];
    for (auto& c : a) c *= lb;
    for (long i = 0; i <= db; ++i) {
      a[static_cast<std::size_t>(da - db + i)] -= lead * b[static_cast<std::size_t>(i)];
    }
    --e;
    trim(a);
    da = degree(a);
  }
  if (e > 0) {
    BigInt f = power(lb, static_cast<unsigned long>(e));
    for (auto& c : a) c *= f;
  }
  return a;
}

}  // namespace

BigInt resultant(IntPoly a, IntPoly b) {
  trim(a);
  trim(b);
  if (a.empty() || b.empty()) return 0;
  long da = degree(a);
  long db = degree(b);
  if (da == 0) return power(a[0], static_cast<unsigned long>(db));
  if (db == 0) return power(b[0], static_cast<unsigned long>(da));

  BigInt ca = content(a), cb = content(b);
  for (auto& c : a) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), ca.get_mpz_t());
  for (auto& c : b) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), cb.get_mpz_t());
  BigInt g = 1, h = 1;
  int s = 1;
  BigInt t = power(ca, static_cast<unsigned long>(db)) * power(cb, static_cast<unsigned long>(da));
  if (da < db) {
    std::swap(a, b);
    std::swap(da, db);
    if ((da % 2 == 1) && (db % 2 == 1)) s = -s;
  }

  while (true) {
    long delta = da - db;
    if ((da % 2 == 1) && (db % 2 == 1)) s = -s;
    IntPoly r = pseudo_remainder(a, b);
    if (r.empty()) return 0;
    a = std::move(b);
    BigInt divisor = g * power(h, static_cast<unsigned long>(delta));
    for (auto& c : r) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), divisor.get_mpz_t());
    b = std::move(r);
    g = a.back();
    // h <- g^delta / h^(delta-1), exact
    if (delta != 0) {
      BigInt num = power(g, static_cast<unsigned long>(delta));
      BigInt den = power(h, static_cast<unsigned long>(delta - 1));
      mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
    da = degree(a);
    db = degree(b);
    if (db <= 0) break;
  }
  // b is a nonzero constant
  BigInt num = power(b[0], static_cast<unsigned long>(da));
  BigInt den = power(h, static_cast<unsigned long>(da - 1));
  BigInt last;
  if (da >= 1) {
    mpz_divexact(last.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  } else {
    last = num;
  }
  return s * t * last;
}

}  // namespace ztower
