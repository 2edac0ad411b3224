// ztower: spanning-tree valuations along Z_ell^d towers of graphs.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ztower/artin_ihara.hpp"
#include "ztower/errors.hpp"
#include "ztower/greenberg.hpp"
#include "ztower/io.hpp"
#include "ztower/power_series.hpp"
#include "ztower/voltage.hpp"

namespace {

using namespace ztower;
using nlohmann::json;

constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
  std::string spec_path;
  std::uint32_t n_max = 5;
  std::size_t budget = kDefaultVertexBudget;
  std::optional<std::uint32_t> trunc;
  std::string format = "csv";
  std::string out_path;
  unsigned jobs = 1;
  std::uint32_t layer = 0;
  std::size_t max_digits = 40;
  bool timing = false;
};

std::size_t budget_from_env() {
  const char* env = std::getenv("ZTOWER_BUDGET");
  if (env == nullptr || *env == '\0') return kDefaultVertexBudget;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument(env);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw ParseError(std::string("ZTOWER_BUDGET: not a vertex count: ") + env);
  }
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.out_path);
  if (!out) throw ParseError("cannot write " + cfg.out_path);
  out << text;
}

std::string voltage_text(const Voltage& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s + ")";
}

std::string rational_text(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

int cmd_validate(const RunConfig& cfg) {
  const VoltageSpec spec = load_spec(cfg.spec_path);
  const ValidationReport base = validate_base(spec.base);
  std::vector<std::string> failures = base.failures;
  std::optional<ConnectivityReport> tower;
  if (base.connected) {
    tower = check_tower_connectivity(spec);
    if (!tower->connected_tower) {
      failures.push_back("voltages do not generate mod " + std::to_string(spec.ell) + " (rank " +
                         std::to_string(tower->rank_mod_ell) + " of " + std::to_string(spec.d) +
                         "); layers are disconnected");
    }
  }
  std::ostringstream out;
  if (cfg.format == "json") {
    json doc{{"ok", failures.empty()},
             {"connected", base.connected},
             {"min_valency", base.min_valency},
             {"euler_characteristic", base.euler_characteristic},
             {"failures", failures}};
    if (tower) doc["rank_mod_ell"] = tower->rank_mod_ell;
    out << doc.dump(2) << "\n";
  } else {
    out << "status," << (failures.empty() ? "ok" : "failed") << "\n";
    out << "vertices," << spec.base.vertex_count() << "\n";
    out << "edges," << spec.base.undirected_edge_count() << "\n";
    out << "euler_characteristic," << base.euler_characteristic << "\n";
    out << "min_valency," << base.min_valency << "\n";
    if (tower) out << "rank_mod_ell," << tower->rank_mod_ell << "\n";
  }
  emit(cfg, out.str());
  for (const auto& f : failures) std::cerr << "ztower: " << f << "\n";
  return failures.empty() ? 0 : kExitDomain;
}

void dump_orbit_values(TowerEvaluator& eval, std::uint32_t n) {
  std::cerr << "per-orbit values at layer " << n << ":\n";
  for (const auto& r : eval.layer_records(n)) {
    std::cerr << "  " << voltage_text(r.orbit.representative.a) << " size " << r.orbit.size
              << " value " << r.integer_value.get_str() << " ord " << r.ord_ell << "\n";
  }
}

ValuationSequence compute_table(const RunConfig& cfg, TowerEvaluator& eval) {
  require_valid_base(eval.spec().base);
  const std::uint32_t first = cfg.n_max == 0 ? 0 : 1;
  std::uint32_t n = first;
  try {
    ValuationSequence seq;
    seq.ell = eval.spec().ell;
    seq.d = eval.spec().d;
    for (; n <= cfg.n_max; ++n) {
      const auto row = valuation_sequence(eval, n, n, cfg.budget);
      seq.entries.push_back(row.entries.front());
    }
    return seq;
  } catch (const RouteMismatch&) {
    dump_orbit_values(eval, n);
    throw;
  }
}

int cmd_table(const RunConfig& cfg) {
  TowerEvaluator eval(load_spec(cfg.spec_path), cfg.jobs);
  const ValuationSequence seq = compute_table(cfg, eval);
  std::ostringstream out;
  if (cfg.format == "json") {
    json rows = json::array();
    for (const auto& e : seq.entries) {
      json row{{"n", e.n},
               {"ord", e.ord},
               {"route", to_string(e.route)},
               {"agree", e.route == Route::BothAgree}};
      if (cfg.timing) row["seconds"] = e.seconds;
      rows.push_back(row);
    }
    out << json{{"ell", seq.ell}, {"d", seq.d}, {"rows", rows}}.dump(2) << "\n";
  } else {
    out << "n,ord,route,agree" << (cfg.timing ? ",seconds" : "") << "\n";
    for (const auto& e : seq.entries) {
      out << e.n << "," << e.ord << "," << to_string(e.route) << ","
          << (e.route == Route::BothAgree ? "yes" : "n/a");
      if (cfg.timing) out << "," << e.seconds;
      out << "\n";
    }
  }
  emit(cfg, out.str());
  return 0;
}

int cmd_fit(const RunConfig& cfg) {
  TowerEvaluator eval(load_spec(cfg.spec_path), cfg.jobs);
  const ValuationSequence seq = compute_table(cfg, eval);
  const FitReport report = fit_sequence(seq);
  if (!report.fit) {
    std::cerr << "ztower: need " << greenberg_monomials(seq.d).size()
              << " consecutive layers with a nonsingular system; raise --n-max\n";
    return kExitDomain;
  }
  const GreenbergFit& fit = *report.fit;
  const auto& range = report.verification.verified_range;
  std::ostringstream out;
  if (cfg.format == "json") {
    json coeffs = json::array();
    for (std::size_t i = 0; i < fit.monomials.size(); ++i) {
      coeffs.push_back({{"monomial", monomial_label(fit.monomials[i], fit.ell)},
                        {"coefficient", rational_text(fit.coefficients[i])}});
    }
    json residuals = json::array();
    for (const auto& [n, r] : report.verification.residuals) {
      residuals.push_back({{"n", n}, {"residual", rational_text(r)}});
    }
    json doc{{"ell", fit.ell},
             {"d", fit.d},
             {"formula", fit.formula()},
             {"coefficients", coeffs},
             {"window", {fit.window_start, fit.window_end}},
             {"verified_range", range ? json{range->first, range->second} : json(nullptr)},
             {"stable", report.stable},
             {"leading_integral", fit.leading_coefficients_integral()},
             {"suspect", report.suspect},
             {"residuals", residuals}};
    out << doc.dump(2) << "\n";
  } else {
    out << "monomial,coefficient\n";
    for (std::size_t i = 0; i < fit.monomials.size(); ++i) {
      out << monomial_label(fit.monomials[i], fit.ell) << "," << rational_text(fit.coefficients[i])
          << "\n";
    }
    out << "\nfield,value\n";
    out << "formula," << fit.formula() << "\n";
    out << "window," << fit.window_start << ".." << fit.window_end << "\n";
    out << "verified_range,";
    if (range) out << range->first << ".." << range->second;
    out << "\nstable," << (report.stable ? "yes" : "no") << "\n";
    out << "suspect," << (report.suspect ? "yes" : "no") << "\n";
  }
  emit(cfg, out.str());
  if (report.suspect) {
    std::cerr << "ztower: leading coefficients are not nonnegative integers; the window may be too "
                 "early\n";
  }
  return 0;
}

int cmd_lvalues(const RunConfig& cfg) {
  TowerEvaluator eval(load_spec(cfg.spec_path), cfg.jobs);
  require_valid_base(eval.spec().base);
  const auto records = eval.layer_records(cfg.n_max);
  auto value_text = [&](const BigInt& v) {
    const std::string s = v.get_str();
    if (cfg.max_digits != 0 && s.size() > cfg.max_digits) {
      return "<" + std::to_string(s.size()) + " digits>";
    }
    return s;
  };
  std::ostringstream out;
  if (cfg.format == "json") {
    json rows = json::array();
    for (const auto& r : records) {
      rows.push_back({{"representative", r.orbit.representative.a},
                      {"exact_level", r.orbit.exact_level},
                      {"size", r.orbit.size},
                      {"value", value_text(r.integer_value)},
                      {"ord", r.ord_ell}});
    }
    out << json{{"n", cfg.n_max}, {"ell", eval.spec().ell}, {"orbits", rows}}.dump(2) << "\n";
  } else {
    out << "representative,exact_level,size,value,ord\n";
    for (const auto& r : records) {
      out << voltage_text(r.orbit.representative.a) << "," << r.orbit.exact_level << ","
          << r.orbit.size << "," << value_text(r.integer_value) << "," << r.ord_ell << "\n";
    }
  }
  emit(cfg, out.str());
  return 0;
}

int cmd_qseries(const RunConfig& cfg) {
  const VoltageSpec spec = load_spec(cfg.spec_path);
  const std::uint32_t bound = cfg.trunc.value_or(default_truncation(spec));
  const TruncatedSeries q = expand_in_t(q_laurent(spec), bound);
  std::ostringstream out;
  if (cfg.format == "json") {
    out << series_to_json(q).dump(2) << "\n";
  } else {
    for (std::uint32_t i = 0; i < spec.d; ++i) out << "e" << (i + 1) << ",";
    out << "coefficient\n";
    for (const auto& [e, c] : q.terms()) {
      for (int x : e) out << x << ",";
      out << c.get_str() << "\n";
    }
  }
  emit(cfg, out.str());
  return 0;
}

int cmd_export_dot(const RunConfig& cfg) {
  const VoltageSpec spec = load_spec(cfg.spec_path);
  if (cfg.layer == 0) {
    emit(cfg, to_dot(spec.base, "X"));
  } else {
    const DerivedGraph layer = derived_graph(spec, cfg.layer, cfg.budget, true);
    emit(cfg, to_dot(layer, "X" + std::to_string(cfg.layer)));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spanning-tree valuations along Z_ell^d towers of graphs"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--spec", cfg.spec_path, "Tower spec (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out_path, "Write output here instead of stdout");
  };
  auto add_budget = [&](CLI::App* sub) {
    sub->add_option("--budget", cfg.budget,
                    "Largest derived graph (vertices) built explicitly; default 3000 or "
                    "$ZTOWER_BUDGET");
  };
  auto add_tower = [&](CLI::App* sub) {
    sub->add_option("--n-max", cfg.n_max, "Last layer");
    sub->add_option("--jobs", cfg.jobs, "Worker threads for orbit evaluation")
        ->check(CLI::PositiveNumber);
  };

  auto* validate = app.add_subcommand("validate", "Check the base graph and tower connectivity");
  add_common(validate);

  auto* table = app.add_subcommand("table", "ord_ell of the tree number of every layer");
  add_common(table);
  add_budget(table);
  add_tower(table);
  table->add_flag("--timing", cfg.timing, "Add a wall-time column");

  auto* fit = app.add_subcommand("fit", "Fit P(ell^n, n) to the last layers of the table");
  add_common(fit);
  add_budget(fit);
  add_tower(fit);

  auto* lvalues = app.add_subcommand("lvalues", "Per-orbit L-values h_X(1, psi) of layer --n-max");
  add_common(lvalues);
  add_tower(lvalues);
  lvalues->add_option("--max-digits", cfg.max_digits, "Abbreviate longer values; 0 prints all");

  auto* qseries = app.add_subcommand("qseries", "Coefficients of Q(T)");
  add_common(qseries);
  qseries->add_option("--trunc", cfg.trunc, "Total degree bound");

  auto* dot = app.add_subcommand("export-dot", "DOT rendering of one layer");
  add_common(dot);
  add_budget(dot);
  dot->add_option("--layer", cfg.layer, "Layer to draw; 0 is the base graph");

  try {
    cfg.budget = budget_from_env();
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "ztower: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*validate) return cmd_validate(cfg);
    if (*table) return cmd_table(cfg);
    if (*fit) return cmd_fit(cfg);
    if (*lvalues) return cmd_lvalues(cfg);
    if (*qseries) return cmd_qseries(cfg);
    if (*dot) return cmd_export_dot(cfg);
  } catch (const ParseError& e) {
    std::cerr << "ztower: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "ztower: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}
