#pragma once

// Univariate polynomials over an arbitrary commutative coefficient ring, used
// as the entry ring for three-term determinants in the variable u. The ring's
// zero is carried explicitly since cyclotomic integers need a level.

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

namespace ztower {

template <typename Coef>
class UPoly {
 public:
  UPoly(std::vector<Coef> coeffs, Coef zero) : coeffs_(std::move(coeffs)), zero_(std::move(zero)) {}
  explicit UPoly(Coef zero) : zero_(std::move(zero)) {}

  const std::vector<Coef>& coeffs() const { return coeffs_; }
  const Coef& zero() const { return zero_; }

  /// Coefficient of u^i; zero past the stored length.
  Coef operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : zero_; }

  std::size_t size() const { return coeffs_.size(); }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<Coef> out(std::max(a.size(), b.size()), a.zero_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i];
    return UPoly(std::move(out), a.zero_);
  }

  friend UPoly operator-(const UPoly& a, const UPoly& b) {
    std::vector<Coef> out(std::max(a.size(), b.size()), a.zero_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] - b[i];
    return UPoly(std::move(out), a.zero_);
  }

  friend UPoly operator-(const UPoly& a) {
    std::vector<Coef> out;
    out.reserve(a.size());
    for (const auto& c : a.coeffs_) out.push_back(-c);
    return UPoly(std::move(out), a.zero_);
  }

  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.coeffs_.empty() || b.coeffs_.empty()) return UPoly(a.zero_);
    std::vector<Coef> out(a.size() + b.size() - 1, a.zero_);
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = out[i + j] + a.coeffs_[i] * b.coeffs_[j];
    }
    return UPoly(std::move(out), a.zero_);
  }

 private:
  std::vector<Coef> coeffs_;
  Coef zero_;
};

}  // namespace ztower
