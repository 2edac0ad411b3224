#include "ztower/io.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include "ztower/errors.hpp"

namespace ztower {

using nlohmann::json;

namespace {

const json& require(const json& doc, const char* key, const std::string& where) {
  if (!doc.is_object()) throw ParseError(where + ": expected an object");
  auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(where + ": missing field \"" + key + "\"");
  return *it;
}

std::int64_t as_integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError(where + ": expected an integer");
  return v.get<std::int64_t>();
}

}  // namespace

MultiGraph graph_from_json(const json& doc) {
  const auto n = as_integer(require(doc, "vertices", "graph"), "graph.vertices");
  if (n <= 0) throw ParseError("graph.vertices: must be positive");
  const json& edges = require(doc, "edges", "graph");
  if (!edges.is_array()) throw ParseError("graph.edges: expected an array");
  std::vector<std::pair<VertexId, VertexId>> list;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string where = "graph.edges[" + std::to_string(i) + "]";
    const json& e = edges[i];
    if (!e.is_array() || e.size() != 2) throw ParseError(where + ": expected a pair [i, j]");
    const auto a = as_integer(e[0], where + "[0]");
    const auto b = as_integer(e[1], where + "[1]");
    if (a < 0 || b < 0 || a >= n || b >= n) {
      throw ParseError(where + ": vertex index out of range [0, " + std::to_string(n) + ")");
    }
    list.emplace_back(static_cast<VertexId>(a), static_cast<VertexId>(b));
  }
  if (list.empty()) throw ParseError("graph.edges: graph needs at least one edge");
  return build_graph(static_cast<std::size_t>(n), list);
}

VoltageSpec spec_from_json(const json& doc) {
  VoltageSpec spec;
  spec.base = graph_from_json(require(doc, "graph", "spec"));
  spec.section = default_section(spec.base);
  const auto ell = as_integer(require(doc, "ell", "spec"), "spec.ell");
  if (ell < 2 || !is_prime(static_cast<std::uint64_t>(ell))) throw ParseError("spec.ell: must be a prime");
  spec.ell = static_cast<std::uint32_t>(ell);
  const auto d = as_integer(require(doc, "d", "spec"), "spec.d");
  if (d <= 0) throw ParseError("spec.d: must be positive");
  spec.d = static_cast<std::uint32_t>(d);
  const json& alpha = require(doc, "alpha", "spec");
  if (!alpha.is_array()) throw ParseError("spec.alpha: expected an array");
  if (alpha.size() != spec.base.undirected_edge_count()) {
    throw ParseError("spec.alpha: has " + std::to_string(alpha.size()) + " entries, graph has " +
                     std::to_string(spec.base.undirected_edge_count()) + " edges");
  }
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    const std::string where = "spec.alpha[" + std::to_string(i) + "]";
    if (!alpha[i].is_array() || alpha[i].size() != spec.d) {
      throw ParseError(where + ": expected " + std::to_string(spec.d) + " integers");
    }
    Voltage v;
    for (std::size_t k = 0; k < alpha[i].size(); ++k) {
      v.push_back(as_integer(alpha[i][k], where + "[" + std::to_string(k) + "]"));
    }
    spec.alpha.push_back(std::move(v));
  }
  return spec;
}

VoltageSpec parse_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  return spec_from_json(doc);
}

VoltageSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

json graph_to_json(const MultiGraph& g) {
  json edges = json::array();
  for (EdgeId e = 0; e < g.directed_edge_count(); ++e) {
    if (e < g.inverse(e)) edges.push_back({g.origin(e), g.terminus(e)});
  }
  return json{{"vertices", g.vertex_count()}, {"edges", edges}};
}

json spec_to_json(const VoltageSpec& spec) {
  json edges = json::array();
  for (EdgeId s : spec.section.edges) edges.push_back({spec.base.origin(s), spec.base.terminus(s)});
  return json{{"graph", {{"vertices", spec.base.vertex_count()}, {"edges", edges}}},
              {"ell", spec.ell},
              {"d", spec.d},
              {"alpha", spec.alpha}};
}

std::string to_dot(const MultiGraph& g, const std::string& name) {
  std::ostringstream out;
  out << "graph " << name << " {\n";
  for (VertexId v = 0; v < g.vertex_count(); ++v) out << "  " << v << ";\n";
  for (EdgeId e = 0; e < g.directed_edge_count(); ++e) {
    if (e < g.inverse(e)) out << "  " << g.origin(e) << " -- " << g.terminus(e) << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string to_dot(const DerivedGraph& layer, const std::string& name) {
  static constexpr std::array<const char*, 8> kPalette{"#1b9e77", "#d95f02", "#7570b3", "#e7298a",
                                                      "#66a61e", "#e6ab02", "#a6761d", "#666666"};
  const MultiGraph& g = layer.graph;
  std::ostringstream out;
  out << "graph " << name << " {\n";
  out << "  node [style=filled, fontcolor=white];\n";
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const auto& label = layer.vertex_labels[v];
    const Voltage elem = layer.group.decode(label.group);
    out << "  " << v << " [label=\"" << label.base_vertex << "; (";
    for (std::size_t i = 0; i < elem.size(); ++i) out << (i ? "," : "") << elem[i];
    out << ")\", fillcolor=\"" << kPalette[label.base_vertex % kPalette.size()] << "\"];\n";
  }
  for (EdgeId e = 0; e < g.directed_edge_count(); ++e) {
    if (e < g.inverse(e)) out << "  " << g.origin(e) << " -- " << g.terminus(e) << ";\n";
  }
  out << "}\n";
  return out.str();
}

json series_to_json(const TruncatedSeries& s) {
  json coeffs = json::object();
  for (const auto& [e, c] : s.terms()) {
    std::string key;
    for (std::size_t i = 0; i < e.size(); ++i) key += (i ? "," : "") + std::to_string(e[i]);
    coeffs[key] = c.get_str();
  }
  return json{{"variables", s.variables()}, {"truncation", s.bound()}, {"coefficients", coeffs}};
}

}  // namespace ztower
