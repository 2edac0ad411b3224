#pragma once

// Voltage assignments in Z^d and the derived graphs X(G(n), S, alpha_n) with
// G(n) = (Z/ell^n Z)^d.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ztower/multigraph.hpp"

namespace ztower {

using Voltage = std::vector<std::int64_t>;

inline constexpr std::size_t kDefaultVertexBudget = 3000;

/// One chosen directed edge per undirected edge, listed in the order of the
/// undirected edges (the order voltages are given in).
struct Section {
  std::vector<EdgeId> edges;
};

/// Picks the smaller directed edge id of every inversion orbit.
Section default_section(const MultiGraph& g);

struct VoltageSpec {
  MultiGraph base;
  Section section;
  std::vector<Voltage> alpha;  // alpha[i] is the voltage of section.edges[i]
  std::uint32_t ell = 2;
  std::uint32_t d = 1;
};

bool is_prime(std::uint64_t p);

/// Throws std::invalid_argument when the section, voltages, prime or rank are
/// inconsistent with the base graph.
void check_spec_shape(const VoltageSpec& spec);

/// Voltage of every directed edge of the base: alpha on the section,
/// negated alpha on the inverses.
std::vector<Voltage> directed_voltages(const VoltageSpec& spec);

/// Dense indexing of G(n) = (Z/ell^n)^d in mixed radix, first coordinate
/// most significant.
class GroupIndexer {
 public:
  GroupIndexer(std::uint32_t ell, std::uint32_t n, std::uint32_t d);

  std::uint64_t modulus() const { return modulus_; }  // ell^n
  std::uint64_t size() const { return size_; }        // ell^(n d)
  std::uint32_t rank() const { return d_; }

  std::uint64_t encode(const Voltage& v) const;  // reduces mod ell^n first
  Voltage decode(std::uint64_t index) const;
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const;

 private:
  std::uint64_t modulus_;
  std::uint64_t size_;
  std::uint32_t d_;
};

/// Componentwise reduction of the section voltages into [0, ell^n).
std::vector<Voltage> reduce_voltage(const VoltageSpec& spec, std::uint32_t n);

struct VertexLabel {
  VertexId base_vertex;
  std::uint64_t group;  // GroupIndexer index
};

struct EdgeLabel {
  EdgeId base_edge;  // directed base edge: a section edge or its inverse
  std::uint64_t group;
};

struct DerivedGraph {
  MultiGraph graph;
  GroupIndexer group;
  std::vector<VertexLabel> vertex_labels;
  std::vector<EdgeLabel> edge_labels;
};

/// Number of vertices layer n would have.
std::uint64_t layer_vertex_count(const VoltageSpec& spec, std::uint32_t n);

/// Builds layer n. Vertex (v, g) gets id v * |G| + g; the lift (s, g) of the
/// i-th section edge is undirected edge i * |G| + g, running from (o(s), g) to
/// (t(s), g + alpha_n(s)), with its inverse (s-bar, g + alpha_n(s)) next to it.
/// Throws BudgetExceeded when the layer has more than `vertex_budget`
/// vertices and DisconnectedLayer when it is disconnected, unless allowed.
DerivedGraph derived_graph(const VoltageSpec& spec, std::uint32_t n,
                           std::size_t vertex_budget = kDefaultVertexBudget,
                           bool allow_disconnected = false);

struct ConnectivityReport {
  bool connected_tower = false;
  std::size_t rank_mod_ell = 0;
  std::vector<Voltage> cycle_voltages;  // one per section edge
};

/// Decides connectivity of every layer at once: the cycle voltages of the
/// base (relative to a BFS spanning tree from vertex 0) must span
/// (Z/ell)^d. Base must be connected.
ConnectivityReport check_tower_connectivity(const VoltageSpec& spec);

struct GraphMorphism {
  std::vector<VertexId> vertex_map;
  std::vector<EdgeId> edge_map;
};

/// Projection from layer n onto layer m < n, (v, g) -> (v, g mod ell^m).
GraphMorphism intermediate_projection(const VoltageSpec& spec, std::uint32_t n, std::uint32_t m,
                                      std::size_t vertex_budget = kDefaultVertexBudget);

/// The covering map from a layer onto the base graph itself.
GraphMorphism cover_map_to_base(const DerivedGraph& layer);

/// Checks that `f` maps edges compatibly with incidence and inversion and is a
/// bijection from the edges at each vertex of `from` onto the edges at its
/// image.
bool is_covering_map(const MultiGraph& from, const MultiGraph& to, const GraphMorphism& f);

}  // namespace ztower
