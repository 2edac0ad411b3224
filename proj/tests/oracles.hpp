#pragma once

// Brute-force reference computations used by the tests. Nothing here calls
// the library's determinant, norm or orbit code.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "ztower/int_poly.hpp"
#include "ztower/multigraph.hpp"
#include "ztower/voltage.hpp"

namespace oracle {

using ztower::BigInt;
using Edges = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

/// Counts spanning trees by trying every (V-1)-subset of the undirected edges.
inline BigInt count_spanning_trees(std::size_t vertices, const Edges& edges) {
  const std::size_t m = edges.size();
  if (vertices == 1) return 1;
  const std::size_t k = vertices - 1;
  if (m < k) return 0;
  std::vector<bool> pick(m, false);
  std::fill(pick.end() - static_cast<long>(k), pick.end(), true);
  BigInt count = 0;
  do {
    UnionFind uf(vertices);
    bool tree = true;
    for (std::size_t i = 0; i < m && tree; ++i) {
      if (pick[i]) tree = uf.unite(edges[i].first, edges[i].second);
    }
    if (tree) ++count;
  } while (std::next_permutation(pick.begin(), pick.end()));
  return count;
}

inline Edges undirected_edges(const ztower::MultiGraph& g) {
  Edges out;
  for (ztower::EdgeId e = 0; e < g.directed_edge_count(); ++e) {
    if (e < g.inverse(e)) out.emplace_back(g.origin(e), g.terminus(e));
  }
  return out;
}

inline std::size_t component_count(const ztower::MultiGraph& g) {
  UnionFind uf(g.vertex_count());
  std::size_t comps = g.vertex_count();
  for (const auto& [a, b] : undirected_edges(g)) {
    if (uf.unite(a, b)) --comps;
  }
  return comps;
}

/// Leibniz expansion over all permutations; only for tiny matrices.
template <typename Ring>
Ring leibniz_determinant(const std::vector<std::vector<Ring>>& m, const Ring& zero, const Ring& one) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Ring total = zero;
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    }
    Ring term = one;
    for (std::size_t i = 0; i < n; ++i) term = term * m[i][perm[i]];
    total = inversions % 2 ? Ring(total - term) : Ring(total + term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Random connected multigraph with loops and parallel edges allowed:
/// a random spanning tree plus extra random edges.
inline Edges random_connected_edges(std::mt19937_64& rng, std::size_t vertices, std::size_t extra) {
  Edges edges;
  for (std::uint32_t v = 1; v < vertices; ++v) {
    std::uniform_int_distribution<std::uint32_t> pick(0, v - 1);
    edges.emplace_back(pick(rng), v);
  }
  std::uniform_int_distribution<std::uint32_t> any(0, static_cast<std::uint32_t>(vertices - 1));
  for (std::size_t i = 0; i < extra; ++i) edges.emplace_back(any(rng), any(rng));
  std::shuffle(edges.begin(), edges.end(), rng);
  return edges;
}

/// Random graph passing the base-graph validation (connected, valency >= 2,
/// chi != 0). Retries until one is found.
inline ztower::MultiGraph random_valid_graph(std::mt19937_64& rng, std::size_t max_vertices) {
  std::uniform_int_distribution<std::size_t> nv(1, max_vertices);
  for (;;) {
    const std::size_t v = nv(rng);
    std::uniform_int_distribution<std::size_t> ne(1, v + 4);
    auto g = ztower::build_graph(v, random_connected_edges(rng, v, ne(rng)));
    if (ztower::validate_base(g).ok()) return g;
  }
}

/// Random spec on a validated base with voltages in [-5, 5]^d.
inline ztower::VoltageSpec random_spec(std::mt19937_64& rng, std::size_t max_vertices,
                                       std::uint32_t ell, std::uint32_t d) {
  ztower::VoltageSpec spec;
  spec.base = random_valid_graph(rng, max_vertices);
  spec.section = ztower::default_section(spec.base);
  spec.ell = ell;
  spec.d = d;
  std::uniform_int_distribution<int> volt(-5, 5);
  for (std::size_t i = 0; i < spec.section.edges.size(); ++i) {
    ztower::Voltage a(d);
    for (auto& x : a) x = volt(rng);
    spec.alpha.push_back(a);
  }
  return spec;
}

inline std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

/// Orbits of (Z/ell^n)^x acting diagonally on (Z/ell^n)^d minus 0, found by
/// applying every unit to every vector. Each orbit is a sorted set of
/// vectors; orbits are returned sorted.
inline std::vector<std::set<std::vector<std::int64_t>>> brute_force_orbits(std::uint32_t ell,
                                                                         std::uint32_t n,
                                                                         std::uint32_t d) {
  const std::uint64_t mod = ipow(ell, n);
  const std::uint64_t total = ipow(mod, d);
  std::set<std::set<std::vector<std::int64_t>>> orbits;
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    std::vector<std::int64_t> v(d);
    std::uint64_t x = idx;
    for (std::uint32_t i = d; i-- > 0;) {
      v[i] = static_cast<std::int64_t>(x % mod);
      x /= mod;
    }
    std::set<std::vector<std::int64_t>> orbit;
    for (std::uint64_t u = 1; u < mod; ++u) {
      if (u % ell == 0) continue;
      std::vector<std::int64_t> w(d);
      for (std::uint32_t i = 0; i < d; ++i) w[i] = static_cast<std::int64_t>((u * v[i]) % mod);
      orbit.insert(w);
    }
    orbits.insert(orbit);
  }
  return {orbits.begin(), orbits.end()};
}

}  // namespace oracle
