#include "ztower/voltage.hpp"

#include <algorithm>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "ztower/errors.hpp"

namespace ztower {

Section default_section(const MultiGraph& g) {
  Section s;
  s.edges.reserve(g.undirected_edge_count());
  for (EdgeId e = 0; e < g.directed_edge_count(); ++e) {
    if (e < g.inverse(e)) s.edges.push_back(e);
  }
  return s;
}

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t q = 2; q * q <= p; ++q) {
    if (p % q == 0) return false;
  }
  return true;
}

void check_spec_shape(const VoltageSpec& spec) {
  if (!is_prime(spec.ell)) throw std::invalid_argument("ell must be prime");
  if (spec.d == 0) throw std::invalid_argument("d must be positive");
  const MultiGraph& g = spec.base;
  if (spec.section.edges.size() != g.undirected_edge_count()) {
    throw std::invalid_argument("section must pick one directed edge per undirected edge");
  }
  std::vector<char> covered(g.directed_edge_count(), 0);
  for (EdgeId e : spec.section.edges) {
    if (e >= g.directed_edge_count()) throw std::invalid_argument("section edge out of range");
    if (covered[e] || covered[g.inverse(e)]) {
      throw std::invalid_argument("section picks both orientations of an edge");
    }
    covered[e] = 1;
  }
  if (spec.alpha.size() != spec.section.edges.size()) {
    std::ostringstream msg;
    msg << "alpha has " << spec.alpha.size() << " entries but the graph has "
        << spec.section.edges.size() << " edges";
    throw std::invalid_argument(msg.str());
  }
  for (std::size_t i = 0; i < spec.alpha.size(); ++i) {
    if (spec.alpha[i].size() != spec.d) {
      std::ostringstream msg;
      msg << "alpha[" << i << "] has length " << spec.alpha[i].size() << ", expected d = " << spec.d;
      throw std::invalid_argument(msg.str());
    }
  }
}

std::vector<Voltage> directed_voltages(const VoltageSpec& spec) {
  std::vector<Voltage> out(spec.base.directed_edge_count(), Voltage(spec.d, 0));
  for (std::size_t i = 0; i < spec.section.edges.size(); ++i) {
    EdgeId s = spec.section.edges[i];
    out[s] = spec.alpha[i];
    Voltage neg = spec.alpha[i];
    for (auto& x : neg) x = -x;
    out[spec.base.inverse(s)] = std::move(neg);
  }
  return out;
}

GroupIndexer::GroupIndexer(std::uint32_t ell, std::uint32_t n, std::uint32_t d)
    : modulus_(1), size_(1), d_(d) {
  for (std::uint32_t i = 0; i < n; ++i) modulus_ *= ell;
  for (std::uint32_t i = 0; i < d; ++i) {
    if (size_ > (std::uint64_t{1} << 62) / std::max<std::uint64_t>(modulus_, 1)) {
      throw std::overflow_error("group G(n) too large to index");
    }
    size_ *= modulus_;
  }
}

std::uint64_t GroupIndexer::encode(const Voltage& v) const {
  const auto m = static_cast<std::int64_t>(modulus_);
  std::uint64_t idx = 0;
  for (std::uint32_t i = 0; i < d_; ++i) {
    std::int64_t r = v[i] % m;
    if (r < 0) r += m;
    idx = idx * modulus_ + static_cast<std::uint64_t>(r);
  }
  return idx;
}

Voltage GroupIndexer::decode(std::uint64_t index) const {
  Voltage v(d_, 0);
  for (std::uint32_t i = d_; i-- > 0;) {
    v[i] = static_cast<std::int64_t>(index % modulus_);
    index /= modulus_;
  }
  return v;
}

std::uint64_t GroupIndexer::add(std::uint64_t a, std::uint64_t b) const {
  std::uint64_t idx = 0, place = 1;
  for (std::uint32_t i = 0; i < d_; ++i) {
    std::uint64_t s = a % modulus_ + b % modulus_;
    if (s >= modulus_) s -= modulus_;
    idx += s * place;
    place *= modulus_;
    a /= modulus_;
    b /= modulus_;
  }
  return idx;
}

std::vector<Voltage> reduce_voltage(const VoltageSpec& spec, std::uint32_t n) {
  GroupIndexer group(spec.ell, n, spec.d);
  std::vector<Voltage> out;
  out.reserve(spec.alpha.size());
  for (const auto& a : spec.alpha) out.push_back(group.decode(group.encode(a)));
  return out;
}

std::uint64_t layer_vertex_count(const VoltageSpec& spec, std::uint32_t n) {
  return spec.base.vertex_count() * GroupIndexer(spec.ell, n, spec.d).size();
}

DerivedGraph derived_graph(const VoltageSpec& spec, std::uint32_t n, std::size_t vertex_budget,
                           bool allow_disconnected) {
  check_spec_shape(spec);
  GroupIndexer group(spec.ell, n, spec.d);
  const std::uint64_t vertices = spec.base.vertex_count() * group.size();
  if (vertices > vertex_budget) {
    std::ostringstream msg;
    msg << "layer " << n << " has " << vertices << " vertices, over the budget of "
        << vertex_budget;
    throw BudgetExceeded(msg.str());
  }
  const std::uint64_t gsize = group.size();
  const MultiGraph& base = spec.base;

  std::vector<DirectedEdge> edges;
  std::vector<EdgeId> inversion;
  std::vector<EdgeLabel> edge_labels;
  const std::size_t m = spec.section.edges.size();
  edges.reserve(2 * m * gsize);
  inversion.reserve(2 * m * gsize);
  edge_labels.reserve(2 * m * gsize);
  for (std::size_t i = 0; i < m; ++i) {
    const EdgeId s = spec.section.edges[i];
    const EdgeId sbar = base.inverse(s);
    const std::uint64_t shift = group.encode(spec.alpha[i]);
    for (std::uint64_t g = 0; g < gsize; ++g) {
      const std::uint64_t h = group.add(g, shift);
      const auto from = static_cast<VertexId>(base.origin(s) * gsize + g);
      const auto to = static_cast<VertexId>(base.terminus(s) * gsize + h);
      const auto id = static_cast<EdgeId>(edges.size());
      edges.push_back({from, to});
      edges.push_back({to, from});
      inversion.push_back(id + 1);
      inversion.push_back(id);
      edge_labels.push_back({s, g});
      edge_labels.push_back({sbar, h});
    }
  }
  std::vector<VertexLabel> vertex_labels;
  vertex_labels.reserve(vertices);
  for (VertexId v = 0; v < base.vertex_count(); ++v) {
    for (std::uint64_t g = 0; g < gsize; ++g) vertex_labels.push_back({v, g});
  }
  DerivedGraph out{MultiGraph(vertices, std::move(edges), std::move(inversion)), group,
                   std::move(vertex_labels), std::move(edge_labels)};
  if (!allow_disconnected && !out.graph.is_connected()) {
    throw DisconnectedLayer("layer " + std::to_string(n) + " is not connected");
  }
  return out;
}

namespace {

std::int64_t mod_pos(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t inverse_mod_prime(std::int64_t a, std::int64_t p) {
  // a^(p-2) mod p
  std::int64_t result = 1, base = mod_pos(a, p), e = p - 2;
  while (e > 0) {
    if (e & 1) result = static_cast<std::int64_t>((__int128)result * base % p);
    base = static_cast<std::int64_t>((__int128)base * base % p);
    e >>= 1;
  }
  return result;
}

std::size_t rank_mod_prime(std::vector<Voltage> rows, std::int64_t p, std::size_t cols) {
  for (auto& r : rows) {
    for (auto& x : r) x = mod_pos(x, p);
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const std::int64_t inv = inverse_mod_prime(rows[rank][c], p);
    for (auto& x : rows[rank]) x = static_cast<std::int64_t>((__int128)x * inv % p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const std::int64_t f = rows[r][c];
      for (std::size_t k = 0; k < cols; ++k) {
        rows[r][k] = mod_pos(rows[r][k] - static_cast<std::int64_t>((__int128)f * rows[rank][k] % p), p);
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace

ConnectivityReport check_tower_connectivity(const VoltageSpec& spec) {
  check_spec_shape(spec);
  const MultiGraph& g = spec.base;
  if (!g.is_connected()) throw ValidationError("base graph is not connected");
  const auto volt = directed_voltages(spec);

  // Potentials along a BFS tree from vertex 0: p(t(e)) = p(o(e)) + alpha(e).
  std::vector<Voltage> potential(g.vertex_count());
  std::vector<char> seen(g.vertex_count(), 0);
  std::queue<VertexId> todo;
  potential[0] = Voltage(spec.d, 0);
  seen[0] = 1;
  todo.push(0);
  while (!todo.empty()) {
    VertexId v = todo.front();
    todo.pop();
    for (EdgeId e : g.out_edges(v)) {
      VertexId w = g.terminus(e);
      if (seen[w]) continue;
      seen[w] = 1;
      potential[w] = potential[v];
      for (std::uint32_t k = 0; k < spec.d; ++k) potential[w][k] += volt[e][k];
      todo.push(w);
    }
  }

  ConnectivityReport report;
  for (std::size_t i = 0; i < spec.section.edges.size(); ++i) {
    EdgeId s = spec.section.edges[i];
    Voltage c(spec.d, 0);
    for (std::uint32_t k = 0; k < spec.d; ++k) {
      c[k] = potential[g.origin(s)][k] + spec.alpha[i][k] - potential[g.terminus(s)][k];
    }
    report.cycle_voltages.push_back(std::move(c));
  }
  report.rank_mod_ell = rank_mod_prime(report.cycle_voltages, spec.ell, spec.d);
  report.connected_tower = report.rank_mod_ell == spec.d;
  return report;
}

GraphMorphism intermediate_projection(const VoltageSpec& spec, std::uint32_t n, std::uint32_t m,
                                      std::size_t vertex_budget) {
  if (m >= n) throw std::invalid_argument("projection needs m < n");
  GroupIndexer upper(spec.ell, n, spec.d);
  GroupIndexer lower(spec.ell, m, spec.d);
  if (spec.base.vertex_count() * upper.size() > vertex_budget) {
    throw BudgetExceeded("layer " + std::to_string(n) + " exceeds the vertex budget");
  }
  auto project = [&](std::uint64_t g) { return lower.encode(upper.decode(g)); };
  GraphMorphism f;
  f.vertex_map.resize(spec.base.vertex_count() * upper.size());
  for (VertexId v = 0; v < spec.base.vertex_count(); ++v) {
    for (std::uint64_t g = 0; g < upper.size(); ++g) {
      f.vertex_map[v * upper.size() + g] = static_cast<VertexId>(v * lower.size() + project(g));
    }
  }
  const std::size_t edges = spec.section.edges.size();
  f.edge_map.resize(2 * edges * upper.size());
  for (std::size_t i = 0; i < edges; ++i) {
    for (std::uint64_t g = 0; g < upper.size(); ++g) {
      const std::uint64_t u = i * upper.size() + g;
      const std::uint64_t image = i * lower.size() + project(g);
      f.edge_map[2 * u] = static_cast<EdgeId>(2 * image);
      f.edge_map[2 * u + 1] = static_cast<EdgeId>(2 * image + 1);
    }
  }
  return f;
}

GraphMorphism cover_map_to_base(const DerivedGraph& layer) {
  GraphMorphism f;
  f.vertex_map.reserve(layer.vertex_labels.size());
  for (const auto& v : layer.vertex_labels) f.vertex_map.push_back(v.base_vertex);
  f.edge_map.reserve(layer.edge_labels.size());
  for (const auto& e : layer.edge_labels) f.edge_map.push_back(e.base_edge);
  return f;
}

bool is_covering_map(const MultiGraph& from, const MultiGraph& to, const GraphMorphism& f) {
  if (f.vertex_map.size() != from.vertex_count()) return false;
  if (f.edge_map.size() != from.directed_edge_count()) return false;
  for (EdgeId e = 0; e < from.directed_edge_count(); ++e) {
    const EdgeId img = f.edge_map[e];
    if (img >= to.directed_edge_count()) return false;
    if (to.origin(img) != f.vertex_map[from.origin(e)]) return false;
    if (to.terminus(img) != f.vertex_map[from.terminus(e)]) return false;
    if (f.edge_map[from.inverse(e)] != to.inverse(img)) return false;
  }
  std::vector<EdgeId> images;
  for (VertexId w = 0; w < from.vertex_count(); ++w) {
    const auto star = from.out_edges(w);
    const auto target = to.out_edges(f.vertex_map[w]);
    if (star.size() != target.size()) return false;
    images.clear();
    for (EdgeId e : star) images.push_back(f.edge_map[e]);
    std::sort(images.begin(), images.end());
    if (!std::equal(images.begin(), images.end(), target.begin(), target.end())) return false;
  }
  return true;
}

}  // namespace ztower
