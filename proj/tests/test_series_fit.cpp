#include <random>

#include <doctest.h>

#include "oracles.hpp"
#include "ztower/greenberg.hpp"
#include "ztower/power_series.hpp"

using namespace ztower;

namespace {

VoltageSpec bouquet_spec(std::uint32_t ell, std::vector<Voltage> alpha) {
  VoltageSpec spec;
  spec.base = build_graph(1, std::vector<std::pair<VertexId, VertexId>>(alpha.size(), {0, 0}));
  spec.section = default_section(spec.base);
  spec.alpha = std::move(alpha);
  spec.ell = ell;
  spec.d = static_cast<std::uint32_t>(spec.alpha.front().size());
  return spec;
}

TruncatedSeries one_variable(std::uint32_t bound, const std::vector<long>& coeffs) {
  TruncatedSeries s(1, bound);
  for (std::size_t i = 0; i < coeffs.size(); ++i) s.add_term({static_cast<int>(i)}, coeffs[i]);
  return s;
}

ValuationSequence sequence(std::uint32_t ell, std::uint32_t d, std::uint32_t first,
                           const std::vector<std::int64_t>& ords) {
  ValuationSequence seq;
  seq.ell = ell;
  seq.d = d;
  for (std::size_t i = 0; i < ords.size(); ++i) {
    seq.entries.push_back({first + static_cast<std::uint32_t>(i), ords[i], Route::LFunction, 0.0});
  }
  return seq;
}

std::vector<Rational> coefficients(const std::vector<std::string>& text) {
  std::vector<Rational> out;
  for (const auto& t : text) out.emplace_back(t);
  for (auto& q : out) q.canonicalize();
  return out;
}

const std::vector<std::int64_t> kFirstExample{5, 19, 61, 167, 417, 987, 2261, 5071, 11209, 24515};
const std::vector<std::int64_t> kThirdExample{5, 19, 65, 179, 403, 887, 1923, 4127, 8795, 18647};
const std::vector<std::int64_t> kFifthExample{10, 48, 166, 524, 1602, 4840, 14558};

}  // namespace

TEST_CASE("rho series") {
  CHECK(rho_series({0, 0}, 5) == TruncatedSeries::constant(2, 5, 1));
  CHECK(rho_series({2}, 2) == one_variable(2, {1, -2, 1}));
  CHECK(rho_series({-1}, 3) == one_variable(3, {1, 1, 1, 1}));
  CHECK(rho_series({-2}, 3) == one_variable(3, {1, 2, 3, 4}));
  // rho(a) rho(-a) = 1
  CHECK(rho_series({3, -2}, 6) * rho_series({-3, 2}, 6) == TruncatedSeries::constant(2, 6, 1));
}

TEST_CASE("Q series of the first example") {
  const auto spec = bouquet_spec(2, {{1, 0}, {0, 1}});
  const TruncatedSeries q = q_series(spec, 4);
  CHECK(q.coefficient({0, 0}) == 0);
  CHECK(q.coefficient({1, 0}) == 0);
  CHECK(q.coefficient({2, 0}) == -1);
  CHECK(q.coefficient({0, 2}) == -1);
  CHECK(q.coefficient({1, 1}) == 0);
  CHECK(q.coefficient({3, 0}) == -1);
  CHECK(q.coefficient({4, 0}) == -1);
}

TEST_CASE("Q series: truncated and exact routes agree") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 8; ++trial) {
    const auto spec = oracle::random_spec(rng, 3, 2, trial % 2 ? 1 : 2);
    const TruncatedSeries q = q_series(spec, 6);
    CHECK(q.coefficient(Exponent(spec.d, 0)) == 0);
    CHECK(q == expand_in_t(q_laurent(spec), 6));
    CHECK(q.truncated(3) == q_series(spec, 3));
  }
}

TEST_CASE("default truncation") {
  CHECK(default_truncation(bouquet_spec(2, {{1, 5}, {0, -3}})) == 2 * 6 * 2 + 8);
}

TEST_CASE("one-variable Iwasawa invariants") {
  // ell^2 (T^3 + ell T): the T coefficient has valuation 3 > mu, so lambda = 3.
  const auto a = iwasawa_invariants_d1(one_variable(6, {0, 8, 0, 4}), 2);
  CHECK(a.status == IwasawaInvariants::Status::Certified);
  CHECK(a.mu == 2);
  CHECK(a.lambda == 3);
  const auto b = iwasawa_invariants_d1(one_variable(6, {0, 0, 1, 0, 3}), 3);
  CHECK(b.mu == 0);
  CHECK(b.lambda == 2);
  const auto c = iwasawa_invariants_d1(one_variable(6, {5, 3, 1}), 3);
  CHECK(c.mu == 0);
  CHECK(c.lambda == 0);
  CHECK_THROWS_AS(iwasawa_invariants_d1(TruncatedSeries(1, 4), 2), std::domain_error);
}

TEST_CASE("Iwasawa invariants from the exact polynomial match a long truncation") {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 10; ++trial) {
    const std::uint32_t ell = trial % 2 ? 3 : 2;
    const auto spec = oracle::random_spec(rng, 3, ell, 1);
    if (!check_tower_connectivity(spec).connected_tower) continue;
    const auto exact = iwasawa_invariants_exact_d1(spec);
    CHECK(exact.status == IwasawaInvariants::Status::Certified);
    const auto approx = iwasawa_invariants_d1(q_series(spec, 40), ell);
    if (approx.status == IwasawaInvariants::Status::Certified) {
      CHECK(approx.mu == exact.mu);
      CHECK(approx.lambda == exact.lambda);
    }
  }
}

TEST_CASE("one-variable towers: fitted slope matches lambda") {
  // For d = 1 the fit is mu ell^n + (lambda - 1) n + nu, because Q vanishes at
  // T = 0 and the trivial character is not counted.
  std::mt19937_64 rng(71);
  int checked = 0;
  for (int trial = 0; trial < 20 && checked < 6; ++trial) {
    const std::uint32_t ell = trial % 2 ? 3 : 2;
    const auto spec = oracle::random_spec(rng, 3, ell, 1);
    if (!check_tower_connectivity(spec).connected_tower) continue;
    ++checked;
    const auto inv = iwasawa_invariants_exact_d1(spec);
    const auto seq = valuation_sequence(spec, 9, 0);
    const auto report = fit_sequence(seq);
    REQUIRE(report.fit);
    CHECK(report.fit->coefficient({1, 0}) == Rational(inv.mu));
    CHECK(report.fit->coefficient({0, 1}) == Rational(static_cast<long>(inv.lambda) - 1));
  }
}

TEST_CASE("monomial basis") {
  const auto m = greenberg_monomials(2);
  REQUIRE(m.size() == 5);
  CHECK(m[0] == Monomial{2, 0});
  CHECK(m[1] == Monomial{1, 1});
  CHECK(m[2] == Monomial{1, 0});
  CHECK(m[3] == Monomial{0, 1});
  CHECK(m[4] == Monomial{0, 0});
  CHECK(greenberg_monomials(1).size() == 3);
  CHECK(greenberg_monomials(3).size() == 7);
  CHECK(monomial_value({1, 1}, 3, 2) == 18);
  CHECK(monomial_label({2, 0}, 2) == "2^{2n}");
  CHECK(monomial_label({1, 1}, 3) == "n·3^n");
  CHECK(monomial_label({0, 0}, 3) == "1");
}

TEST_CASE("fits of the published sequences") {
  const auto seq1 = sequence(2, 2, 1, kFirstExample);
  const auto fit1 = fit_window(seq1, 5);
  REQUIRE(fit1);
  CHECK(fit1->window_start == 6);
  CHECK(fit1->window_end == 10);
  CHECK(fit1->coefficients == coefficients({"0", "2", "4", "-6", "-1"}));
  CHECK(fit1->formula() == "2n·2^n + 4·2^n - 6n - 1");

  const auto seq3 = sequence(2, 2, 1, kThirdExample);
  const auto fit3 = fit_window(seq3, 5);
  REQUIRE(fit3);
  CHECK(fit3->coefficients == coefficients({"0", "1", "33/4", "-4", "-1"}));
  CHECK(fit3->formula() == "n·2^n + (33/4)·2^n - 4n - 1");

  const auto seq5 = sequence(3, 2, 1, kFifthExample);
  const auto fit5 = fit_window(seq5, 2);
  REQUIRE(fit5);
  CHECK(fit5->window_start == 3);
  CHECK(fit5->coefficients == coefficients({"0", "0", "20/3", "-2", "-8"}));
}

TEST_CASE("verification ranges") {
  const auto seq1 = sequence(2, 2, 1, kFirstExample);
  const auto v1 = verify_fit(*fit_window(seq1, 5), seq1);
  REQUIRE(v1.verified_range);
  CHECK(*v1.verified_range == std::make_pair(1u, 10u));
  for (const auto& [n, r] : v1.residuals) CHECK(r == 0);

  const auto seq3 = sequence(2, 2, 1, kThirdExample);
  const auto v3 = verify_fit(*fit_window(seq3, 5), seq3);
  REQUIRE(v3.verified_range);
  CHECK(*v3.verified_range == std::make_pair(4u, 10u));
  for (const auto& [n, r] : v3.residuals) CHECK((r != 0) == (n <= 3));

  const auto constant = sequence(2, 2, 1, {7, 7, 7, 7, 7, 7});
  const auto report = fit_sequence(constant);
  REQUIRE(report.fit);
  CHECK(report.fit->coefficients == coefficients({"0", "0", "0", "0", "7"}));
  CHECK(report.fit->formula() == "7");
  CHECK(*report.verification.verified_range == std::make_pair(1u, 6u));
  CHECK(report.stable);
  CHECK_FALSE(report.suspect);
}

TEST_CASE("fit guards") {
  CHECK_FALSE(fit_window(sequence(2, 2, 1, {1, 2, 3, 4}), 0));
  auto gap = sequence(2, 2, 1, {1, 2, 3, 4, 5});
  gap.entries[4].n = 7;
  CHECK_FALSE(fit_window(gap, 0));
  CHECK_FALSE(fit_sequence(sequence(2, 2, 1, {1, 2})).fit);
}

TEST_CASE("non-integral leading coefficients are flagged") {
  // ord = n 2^n / 2 is fitted exactly with Y X coefficient 1/2.
  std::vector<std::int64_t> ords;
  for (std::int64_t n = 1; n <= 6; ++n) ords.push_back(n * (std::int64_t{1} << n) / 2);
  const auto report = fit_sequence(sequence(2, 2, 1, ords));
  REQUIRE(report.fit);
  CHECK(report.fit->coefficient({1, 1}) == Rational(1, 2));
  CHECK(report.suspect);
}

TEST_CASE("valuation sequence cross-checks both routes") {
  const auto seq = valuation_sequence(bouquet_spec(2, {{1, 0}, {0, 1}}), 4, 300);
  REQUIRE(seq.entries.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(seq.entries[i].ord == kFirstExample[i]);
    CHECK(seq.entries[i].route == Route::BothAgree);
  }
  const auto small = valuation_sequence(bouquet_spec(2, {{1, 0}, {0, 1}}), 4, 20);
  CHECK(small.entries[1].route == Route::BothAgree);
  CHECK(small.entries[2].route == Route::LFunction);
  const auto base = valuation_sequence(bouquet_spec(3, {{1, 0}, {0, 1}}), 0);
  REQUIRE(base.entries.size() == 1);
  CHECK(base.entries[0].n == 0);
  CHECK(base.entries[0].ord == 0);
}
