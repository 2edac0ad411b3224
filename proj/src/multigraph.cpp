#include "ztower/multigraph.hpp"

#include <algorithm>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "ztower/determinant.hpp"
#include "ztower/errors.hpp"
#include "ztower/upoly.hpp"

namespace ztower {

MultiGraph::MultiGraph(std::size_t vertex_count, std::vector<DirectedEdge> edges,
                       std::vector<EdgeId> inversion)
    : vertex_count_(vertex_count), edges_(std::move(edges)), inversion_(std::move(inversion)) {
  if (vertex_count_ == 0) throw std::invalid_argument("graph must have at least one vertex");
  if (edges_.empty()) throw std::invalid_argument("graph must have at least one edge");
  if (inversion_.size() != edges_.size()) {
    throw std::invalid_argument("inversion table size differs from edge count");
  }
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    if (edges_[e].origin >= vertex_count_ || edges_[e].terminus >= vertex_count_) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    EdgeId inv = inversion_[e];
    if (inv >= edges_.size()) throw std::invalid_argument("inversion target out of range");
    if (inv == e) throw std::invalid_argument("inversion has a fixed point");
    if (inversion_[inv] != e) throw std::invalid_argument("inversion is not an involution");
    if (edges_[e].origin != edges_[inv].terminus) {
      throw std::invalid_argument("o(e) != t(inverse(e))");
    }
  }

  out_offsets_.assign(vertex_count_ + 1, 0);
  for (const auto& e : edges_) ++out_offsets_[e.origin + 1];
  for (std::size_t v = 0; v < vertex_count_; ++v) out_offsets_[v + 1] += out_offsets_[v];
  out_list_.resize(edges_.size());
  std::vector<std::size_t> cursor(out_offsets_.begin(), out_offsets_.end() - 1);
  for (EdgeId e = 0; e < edges_.size(); ++e) out_list_[cursor[edges_[e].origin]++] = e;
}

std::span<const EdgeId> MultiGraph::out_edges(VertexId v) const {
  return std::span<const EdgeId>(out_list_).subspan(out_offsets_[v],
                                                    out_offsets_[v + 1] - out_offsets_[v]);
}

long MultiGraph::euler_characteristic() const {
  return static_cast<long>(vertex_count_) - static_cast<long>(undirected_edge_count());
}

bool MultiGraph::is_connected() const {
  std::vector<char> seen(vertex_count_, 0);
  std::queue<VertexId> todo;
  todo.push(0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!todo.empty()) {
    VertexId v = todo.front();
    todo.pop();
    for (EdgeId e : out_edges(v)) {
      VertexId w = edges_[e].terminus;
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        todo.push(w);
      }
    }
  }
  return reached == vertex_count_;
}

MultiGraph build_graph(std::size_t vertex_count,
                       const std::vector<std::pair<VertexId, VertexId>>& undirected_edges) {
  std::vector<DirectedEdge> edges;
  std::vector<EdgeId> inversion;
  edges.reserve(2 * undirected_edges.size());
  inversion.reserve(2 * undirected_edges.size());
  for (std::size_t i = 0; i < undirected_edges.size(); ++i) {
    auto [a, b] = undirected_edges[i];
    if (a >= vertex_count || b >= vertex_count) {
      std::ostringstream msg;
      msg << "edge " << i << " (" << a << ", " << b << ") references a vertex outside [0, "
          << vertex_count << ")";
      throw std::out_of_range(msg.str());
    }
    auto id = static_cast<EdgeId>(2 * i);
    edges.push_back({a, b});
    edges.push_back({b, a});
    inversion.push_back(id + 1);
    inversion.push_back(id);
  }
  return MultiGraph(vertex_count, std::move(edges), std::move(inversion));
}

ValidationReport validate_base(const MultiGraph& g) {
  ValidationReport report;
  report.connected = g.is_connected();
  report.euler_characteristic = g.euler_characteristic();
  report.min_valency = g.valency(0);
  for (VertexId v = 1; v < g.vertex_count(); ++v) {
    report.min_valency = std::min(report.min_valency, g.valency(v));
  }
  if (!report.connected) report.failures.emplace_back("graph is not connected");
  if (report.min_valency < 2) {
    report.failures.emplace_back("graph has a vertex of valency " +
                                 std::to_string(report.min_valency) + " (need at least 2)");
  }
  if (report.euler_characteristic == 0) {
    report.failures.emplace_back("Euler characteristic is 0");
  }
  return report;
}

void require_valid_base(const MultiGraph& g) {
  auto report = validate_base(g);
  if (report.ok()) return;
  std::string msg = "invalid base graph:";
  for (const auto& f : report.failures) msg += " " + f + ";";
  throw ValidationError(msg);
}

GraphMatrices matrices(const MultiGraph& g) {
  const std::size_t n = g.vertex_count();
  GraphMatrices m;
  m.adjacency.assign(n, std::vector<long>(n, 0));
  m.degree.assign(n, 0);
  for (const auto& e : g.edges()) {
    ++m.adjacency[e.origin][e.terminus];
    ++m.degree[e.origin];
  }
  m.euler_characteristic = g.euler_characteristic();
  return m;
}

IntPoly ihara_h(const MultiGraph& g) {
  using P = UPoly<BigInt>;
  const auto m = matrices(g);
  const std::size_t n = g.vertex_count();
  const P zero(BigInt(0));
  Matrix<P> entries(n, std::vector<P>(n, zero));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<BigInt> c(3, 0);
      if (i == j) {
        c[0] = 1;
        c[2] = m.degree[i] - 1;
      }
      c[1] = -m.adjacency[i][j];
      entries[i][j] = P(std::move(c), BigInt(0));
    }
  }
  P det = berkowitz_determinant(entries, zero, P({BigInt(1)}, BigInt(0)));
  IntPoly out = det.coeffs();
  trim(out);
  return out;
}

}  // namespace ztower
