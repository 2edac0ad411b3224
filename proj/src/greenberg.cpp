#include "ztower/greenberg.hpp"

#include <chrono>
#include <sstream>
#include <stdexcept>

#include "ztower/errors.hpp"
#include "ztower/spanning_trees.hpp"

namespace ztower {

std::string to_string(Route r) {
  switch (r) {
    case Route::MatrixTree:
      return "matrix-tree";
    case Route::LFunction:
      return "l-function";
    case Route::BothAgree:
      return "both-agree";
  }
  return "unknown";
}

ValuationSequence valuation_sequence(TowerEvaluator& eval, std::uint32_t n_min,
                                     std::uint32_t n_max, std::size_t vertex_budget) {
  const VoltageSpec& spec = eval.spec();
  ValuationSequence seq;
  seq.ell = spec.ell;
  seq.d = spec.d;
  for (std::uint32_t n = n_min; n <= n_max; ++n) {
    const auto start = std::chrono::steady_clock::now();
    ValuationEntry entry;
    entry.n = n;
    entry.ord = eval.ord_kappa(n);
    entry.route = Route::LFunction;
    if (layer_vertex_count(spec, n) <= vertex_budget) {
      const TreeCount direct = kappa_matrix_tree(derived_graph(spec, n, vertex_budget).graph, spec.ell);
      const TreeCount via_l = eval.kappa(n);
      if (direct.kappa != via_l.kappa || static_cast<std::int64_t>(via_l.ord_ell) != entry.ord) {
        std::ostringstream msg;
        msg << "layer " << n << ": Matrix-Tree gives ord " << direct.ord_ell
            << ", product formula gives ord " << entry.ord;
        throw RouteMismatch(msg.str());
      }
      entry.route = Route::BothAgree;
    }
    entry.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    seq.entries.push_back(entry);
  }
  return seq;
}

ValuationSequence valuation_sequence(const VoltageSpec& spec, std::uint32_t n_max,
                                     std::size_t vertex_budget, unsigned jobs) {
  TowerEvaluator eval(spec, jobs);
  return valuation_sequence(eval, n_max == 0 ? 0 : 1, n_max, vertex_budget);
}

std::vector<Monomial> greenberg_monomials(std::uint32_t d) {
  std::vector<Monomial> out;
  for (std::uint32_t k = d + 1; k-- > 0;) {
    out.push_back({k, 0});
    if (k >= 1) out.push_back({k - 1, 1});
  }
  return out;
}

BigInt monomial_value(const Monomial& m, std::uint32_t ell, std::uint32_t n) {
  BigInt x;
  mpz_ui_pow_ui(x.get_mpz_t(), ell, static_cast<unsigned long>(m.x_power) * n);
  if (m.y_power == 1) x *= n;
  return x;
}

Rational GreenbergFit::coefficient(const Monomial& m) const {
  for (std::size_t i = 0; i < monomials.size(); ++i) {
    if (monomials[i] == m) return coefficients[i];
  }
  return 0;
}

Rational GreenbergFit::evaluate(std::uint32_t n) const {
  Rational sum = 0;
  for (std::size_t i = 0; i < monomials.size(); ++i) {
    sum += coefficients[i] * Rational(monomial_value(monomials[i], ell, n));
  }
  return sum;
}

bool GreenbergFit::leading_coefficients_integral() const {
  for (const Monomial& m : {Monomial{d, 0}, Monomial{d - 1, 1}}) {
    const Rational c = coefficient(m);
    if (c.get_den() != 1 || sgn(c) < 0) return false;
  }
  return true;
}

std::string monomial_label(const Monomial& m, std::uint32_t ell) {
  std::string power;
  if (m.x_power == 1) {
    power = std::to_string(ell) + "^n";
  } else if (m.x_power > 1) {
    power = std::to_string(ell) + "^{" + std::to_string(m.x_power) + "n}";
  }
  std::string label = m.y_power == 1 ? "n" : "";
  if (!power.empty()) label += (label.empty() ? "" : "·") + power;
  return label.empty() ? "1" : label;
}

std::string GreenbergFit::formula() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < monomials.size(); ++i) {
    Rational c = coefficients[i];
    if (sgn(c) == 0) continue;
    const Monomial& m = monomials[i];
    if (first) {
      if (sgn(c) < 0) out << "-";
    } else {
      out << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    c = abs(c);

    const bool constant = m.x_power == 0 && m.y_power == 0;
    const std::string factors = monomial_label(m, ell);
    if (constant) {
      out << c.get_str();
    } else if (c == 1) {
      out << factors;
    } else if (c.get_den() == 1) {
      out << c.get_str() << (m.y_power == 1 ? "" : "·") << factors;
    } else {
      out << "(" << c.get_str() << ")·" << factors;
    }
  }
  if (first) out << "0";
  return out.str();
}

std::optional<GreenbergFit> fit_window(const ValuationSequence& seq, std::size_t first) {
  const auto monomials = greenberg_monomials(seq.d);
  const std::size_t m = monomials.size();
  if (first + m > seq.entries.size()) return std::nullopt;
  for (std::size_t i = 1; i < m; ++i) {
    if (seq.entries[first + i].n != seq.entries[first].n + i) return std::nullopt;
  }
  std::vector<BigInt> a(m * m);
  std::vector<BigInt> rhs(m);
  for (std::size_t r = 0; r < m; ++r) {
    const auto& e = seq.entries[first + r];
    for (std::size_t c = 0; c < m; ++c) a[r * m + c] = monomial_value(monomials[c], seq.ell, e.n);
    rhs[r] = e.ord;
  }
  const BigInt det = bareiss_determinant(a, m);
  if (sgn(det) == 0) return std::nullopt;

  GreenbergFit fit;
  fit.ell = seq.ell;
  fit.d = seq.d;
  fit.monomials = monomials;
  fit.window_start = seq.entries[first].n;
  fit.window_end = seq.entries[first + m - 1].n;
  for (std::size_t c = 0; c < m; ++c) {
    std::vector<BigInt> replaced = a;
    for (std::size_t r = 0; r < m; ++r) replaced[r * m + c] = rhs[r];
    Rational coef(bareiss_determinant(std::move(replaced), m), det);
    coef.canonicalize();
    fit.coefficients.push_back(coef);
  }
  return fit;
}

FitVerification verify_fit(const GreenbergFit& fit, const ValuationSequence& seq) {
  FitVerification out;
  for (const auto& e : seq.entries) {
    out.residuals.emplace_back(e.n, Rational(e.ord) - fit.evaluate(e.n));
  }
  for (std::size_t i = out.residuals.size(); i-- > 0;) {
    if (sgn(out.residuals[i].second) != 0) break;
    const std::uint32_t hi = out.residuals.back().first;
    out.verified_range = std::make_pair(out.residuals[i].first, hi);
  }
  return out;
}

FitReport fit_sequence(const ValuationSequence& seq) {
  FitReport report;
  const std::size_t m = greenberg_monomials(seq.d).size();
  if (seq.entries.size() < m) return report;
  const std::size_t last = seq.entries.size() - m;
  report.fit = fit_window(seq, last);
  if (last > 0) report.previous_fit = fit_window(seq, last - 1);
  if (report.fit) {
    report.verification = verify_fit(*report.fit, seq);
    report.suspect = !report.fit->leading_coefficients_integral();
    report.stable = report.previous_fit &&
                    report.previous_fit->coefficients == report.fit->coefficients;
  }
  return report;
}

}  // namespace ztower
