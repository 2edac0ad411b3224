#pragma once

// Valuation sequences ord_ell(kappa_n) along a tower and exact rational fits
// of P(ell^n, n) over the monomials X^k (k <= d) and Y X^k (k < d).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ztower/artin_ihara.hpp"
#include "ztower/int_poly.hpp"
#include "ztower/voltage.hpp"

namespace ztower {

enum class Route { MatrixTree, LFunction, BothAgree };

std::string to_string(Route r);

struct ValuationEntry {
  std::uint32_t n = 0;
  std::int64_t ord = 0;
  Route route = Route::LFunction;
  double seconds = 0.0;
};

struct ValuationSequence {
  std::uint32_t ell = 2;
  std::uint32_t d = 1;
  std::vector<ValuationEntry> entries;
};

/// Layers n_min..n_max. The L-function route runs on every layer; layers
/// whose derived graph fits `vertex_budget` are also counted by Matrix-Tree
/// and the two tree counts must agree exactly (RouteMismatch otherwise).
ValuationSequence valuation_sequence(TowerEvaluator& eval, std::uint32_t n_min,
                                     std::uint32_t n_max, std::size_t vertex_budget);

ValuationSequence valuation_sequence(const VoltageSpec& spec, std::uint32_t n_max,
                                     std::size_t vertex_budget = kDefaultVertexBudget,
                                     unsigned jobs = 1);

/// X^x_power Y^y_power with X = ell^n and Y = n.
struct Monomial {
  std::uint32_t x_power = 0;
  std::uint32_t y_power = 0;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// X^d, Y X^(d-1), X^(d-1), ..., X, Y, 1; for d = 2 this is
/// ell^2n, n ell^n, ell^n, n, 1.
std::vector<Monomial> greenberg_monomials(std::uint32_t d);

BigInt monomial_value(const Monomial& m, std::uint32_t ell, std::uint32_t n);

/// "2^{2n}", "n·2^n", "2^n", "n", "1".
std::string monomial_label(const Monomial& m, std::uint32_t ell);

struct GreenbergFit {
  std::uint32_t ell = 2;
  std::uint32_t d = 1;
  std::vector<Monomial> monomials;
  std::vector<Rational> coefficients;  // parallel to monomials
  std::uint32_t window_start = 0;
  std::uint32_t window_end = 0;

  Rational coefficient(const Monomial& m) const;
  Rational evaluate(std::uint32_t n) const;
  /// Coefficients of X^d and Y X^(d-1) are non-negative integers.
  bool leading_coefficients_integral() const;
  /// Human-readable P(ell^n, n), e.g. "4·3^n - 2n - 4".
  std::string formula() const;
};

/// Solves the square system on entries [first, first + 2d + 1) exactly by
/// Cramer's rule over fraction-free determinants. nullopt when singular or
/// when the window runs past the data or is not consecutive.
std::optional<GreenbergFit> fit_window(const ValuationSequence& seq, std::size_t first);

struct FitVerification {
  std::vector<std::pair<std::uint32_t, Rational>> residuals;  // ord - P(ell^n, n)
  std::optional<std::pair<std::uint32_t, std::uint32_t>> verified_range;  // maximal zero suffix
};

FitVerification verify_fit(const GreenbergFit& fit, const ValuationSequence& seq);

struct FitReport {
  std::optional<GreenbergFit> fit;           // window ending at the last entry
  std::optional<GreenbergFit> previous_fit;  // window one step earlier
  FitVerification verification;
  bool stable = false;  // both windows give the same coefficients
  bool suspect = false;  // leading coefficients fail the integrality check
};

FitReport fit_sequence(const ValuationSequence& seq);

}  // namespace ztower
