#pragma once

// Spec and graph documents (JSON) and DOT rendering.
//
//   graph: {"vertices": N, "edges": [[i, j], ...]}      a loop is [i, i]
//   tower: {"graph": {...}, "ell": 2, "d": 2, "alpha": [[1, 0], [0, 1]]}
//
// alpha lists one voltage per edge, in edge order; edge k is oriented from
// its first listed endpoint to its second.

#include <string>

#include <json.hpp>

#include "ztower/multigraph.hpp"
#include "ztower/power_series.hpp"
#include "ztower/voltage.hpp"

namespace ztower {

/// Throws ParseError naming the offending field.
MultiGraph graph_from_json(const nlohmann::json& doc);
VoltageSpec spec_from_json(const nlohmann::json& doc);

/// Parses text; syntax errors carry line and column.
VoltageSpec parse_spec(const std::string& text);
VoltageSpec load_spec(const std::string& path);

nlohmann::json graph_to_json(const MultiGraph& g);
nlohmann::json spec_to_json(const VoltageSpec& spec);

/// Undirected DOT, one line per undirected edge so multiplicities show.
std::string to_dot(const MultiGraph& g, const std::string& name = "X");

/// DOT of a layer, vertices labelled (v; g) and coloured by fibre.
std::string to_dot(const DerivedGraph& layer, const std::string& name);

/// Coefficients keyed by exponent tuple, values as decimal strings.
nlohmann::json series_to_json(const TruncatedSeries& s);

}  // namespace ztower
