#pragma once

// Finite multigraphs in Serre's formalism: every undirected edge is a pair of
// directed edges exchanged by a fixed-point-free inversion. Loops and
// parallel edges are allowed.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ztower/int_poly.hpp"

namespace ztower {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

struct DirectedEdge {
  VertexId origin;
  VertexId terminus;
};

class MultiGraph {
 public:
  MultiGraph() = default;

  /// Builds a graph from explicit directed edges and an inversion table.
  /// Throws std::invalid_argument when the inversion is not a fixed-point-free
  /// involution compatible with incidence, or when ids are out of range.
  MultiGraph(std::size_t vertex_count, std::vector<DirectedEdge> edges,
             std::vector<EdgeId> inversion);

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t directed_edge_count() const { return edges_.size(); }
  std::size_t undirected_edge_count() const { return edges_.size() / 2; }

  VertexId origin(EdgeId e) const { return edges_[e].origin; }
  VertexId terminus(EdgeId e) const { return edges_[e].terminus; }
  EdgeId inverse(EdgeId e) const { return inversion_[e]; }

  std::span<const DirectedEdge> edges() const { return edges_; }

  /// Directed edges with origin v, in increasing id order.
  std::span<const EdgeId> out_edges(VertexId v) const;

  /// Number of directed edges leaving v; a loop counts twice.
  std::size_t valency(VertexId v) const { return out_edges(v).size(); }

  /// chi(X) = |V| - |E| with E the undirected edges.
  long euler_characteristic() const;

  bool is_connected() const;

 private:
  std::size_t vertex_count_ = 0;
  std::vector<DirectedEdge> edges_;
  std::vector<EdgeId> inversion_;
  std::vector<std::size_t> out_offsets_;
  std::vector<EdgeId> out_list_;
};

/// Undirected edge i becomes directed edges 2i (a -> b) and 2i+1 (b -> a).
MultiGraph build_graph(std::size_t vertex_count,
                       const std::vector<std::pair<VertexId, VertexId>>& undirected_edges);

struct ValidationReport {
  bool connected = false;
  std::size_t min_valency = 0;
  long euler_characteristic = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// Checks the standing hypotheses for tower computations: connected, no vertex
/// of valency below two, and non-zero Euler characteristic.
ValidationReport validate_base(const MultiGraph& g);

/// Throws ValidationError carrying the report's failures unless it passes.
void require_valid_base(const MultiGraph& g);

struct GraphMatrices {
  std::vector<std::vector<long>> adjacency;
  std::vector<long> degree;  // diagonal of D
  long euler_characteristic = 0;
};

/// A[i][j] counts directed edges from v_i to v_j, so an undirected loop adds 2
/// to the diagonal; D[i][i] is the valency.
GraphMatrices matrices(const MultiGraph& g);

/// h_X(u) = det(I - A u + (D - I) u^2) as an integer polynomial in u.
IntPoly ihara_h(const MultiGraph& g);

}  // namespace ztower
