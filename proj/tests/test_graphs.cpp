#include <random>

#include <doctest.h>

#include "oracles.hpp"
#include "ztower/errors.hpp"
#include "ztower/multigraph.hpp"
#include "ztower/spanning_trees.hpp"

using namespace ztower;

namespace {

MultiGraph bouquet(std::size_t loops) {
  return build_graph(1, std::vector<std::pair<VertexId, VertexId>>(loops, {0, 0}));
}

MultiGraph doubled_four_cycle() {
  return build_graph(4, {{0, 1}, {0, 1}, {1, 2}, {1, 2}, {2, 3}, {2, 3}, {3, 0}, {3, 0}});
}

}  // namespace

TEST_CASE("build_graph bookkeeping") {
  const MultiGraph b = bouquet(2);
  CHECK(b.directed_edge_count() == 4);
  CHECK(b.euler_characteristic() == -1);
  CHECK(b.valency(0) == 4);
  for (EdgeId e = 0; e < 4; ++e) CHECK(b.inverse(b.inverse(e)) == e);

  const MultiGraph two = build_graph(2, {{0, 1}, {0, 1}});
  CHECK(two.euler_characteristic() == 0);
  CHECK(two.origin(0) == 0);
  CHECK(two.terminus(0) == 1);
  CHECK(two.inverse(0) == 1);

  const MultiGraph c = doubled_four_cycle();
  CHECK(c.undirected_edge_count() == 8);
  CHECK(c.euler_characteristic() == -4);

  CHECK_THROWS_AS(build_graph(2, {{0, 2}}), std::out_of_range);
}

TEST_CASE("explicit inversion tables are checked") {
  const std::vector<DirectedEdge> edges{{0, 1}, {1, 0}};
  CHECK_NOTHROW(MultiGraph(2, edges, {1, 0}));
  CHECK_THROWS_AS(MultiGraph(2, edges, {0, 1}), std::invalid_argument);  // fixed points
  CHECK_THROWS_AS(MultiGraph(2, {{0, 1}, {0, 1}}, {1, 0}), std::invalid_argument);  // incidence
  CHECK_THROWS_AS(MultiGraph(2, edges, {1, 5}), std::invalid_argument);
  // A loop is a pair of directed edges, never an edge inverse to itself.
  CHECK_NOTHROW(MultiGraph(1, {{0, 0}, {0, 0}}, {1, 0}));
}

TEST_CASE("validate_base") {
  const auto b = validate_base(bouquet(2));
  CHECK(b.ok());
  CHECK(b.connected);
  CHECK(b.min_valency == 4);
  CHECK(b.euler_characteristic == -1);

  const auto single = validate_base(build_graph(2, {{0, 1}}));
  CHECK_FALSE(single.ok());
  CHECK(single.min_valency == 1);

  const auto c3 = validate_base(build_graph(3, {{0, 1}, {1, 2}, {2, 0}}));
  CHECK_FALSE(c3.ok());
  CHECK(c3.euler_characteristic == 0);

  const auto split = validate_base(build_graph(2, {{0, 0}, {0, 0}, {1, 1}, {1, 1}}));
  CHECK_FALSE(split.connected);
  CHECK_FALSE(split.ok());

  CHECK_THROWS_AS(require_valid_base(build_graph(2, {{0, 1}})), ValidationError);
}

TEST_CASE("adjacency and degree matrices") {
  const auto b = matrices(bouquet(2));
  CHECK(b.adjacency == std::vector<std::vector<long>>{{4}});
  CHECK(b.degree == std::vector<long>{4});

  const auto two = matrices(build_graph(2, {{0, 1}, {0, 1}}));
  CHECK(two.adjacency == std::vector<std::vector<long>>{{0, 2}, {2, 0}});
  CHECK(two.degree == std::vector<long>{2, 2});

  const auto c = matrices(doubled_four_cycle());
  CHECK(c.degree == std::vector<long>{4, 4, 4, 4});
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const bool adjacent = (i + 1) % 4 == j || (j + 1) % 4 == i;
      CHECK(c.adjacency[i][j] == (adjacent ? 2 : 0));
    }
  }
}

TEST_CASE("Ihara h polynomial") {
  CHECK(ihara_h(bouquet(2)) == IntPoly{1, -4, 3});
  const IntPoly h = ihara_h(doubled_four_cycle());
  CHECK(evaluate(h, 1) == 0);
  // h'(1) = -2 chi kappa = -2 * (-4) * 32
  CHECK(evaluate(derivative(h), 1) == 256);
}

TEST_CASE("Matrix-Tree on small graphs") {
  const TreeCount c = kappa_matrix_tree(doubled_four_cycle(), 2);
  CHECK(c.kappa == 32);
  CHECK(c.ord_ell == 5);
  CHECK(kappa_matrix_tree(bouquet(3), 2).kappa == 1);
  CHECK(kappa_matrix_tree(build_graph(2, {{0, 1}, {0, 1}}), 3).kappa == 2);
  CHECK_THROWS_AS(kappa_matrix_tree(build_graph(2, {{0, 0}, {1, 1}}), 2), DisconnectedLayer);
}

TEST_CASE("Matrix-Tree agrees with exhaustive enumeration") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<std::size_t> nv(1, 7);
    const std::size_t v = nv(rng);
    std::uniform_int_distribution<std::size_t> extra(v == 1 ? 1 : 0, 12 - (v - 1));
    const auto edges = oracle::random_connected_edges(rng, v, extra(rng));
    const MultiGraph g = build_graph(v, edges);
    CHECK(kappa_matrix_tree(g, 2).kappa == oracle::count_spanning_trees(v, edges));
  }
}

TEST_CASE("reduced Laplacian does not depend on the deleted vertex") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const MultiGraph g = oracle::random_valid_graph(rng, 6);
    const std::size_t n = g.vertex_count();
    if (n < 2) continue;
    const BigInt d0 = bareiss_determinant(reduced_laplacian(g, 0), n - 1);
    CHECK(bareiss_determinant(reduced_laplacian(g, n - 1), n - 1) == d0);
  }
}

TEST_CASE("class number formula on random graphs") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 25; ++trial) {
    const MultiGraph g = oracle::random_valid_graph(rng, 6);
    const IntPoly h = ihara_h(g);
    CHECK(evaluate(h, 1) == 0);
    const BigInt kappa = oracle::count_spanning_trees(g.vertex_count(), oracle::undirected_edges(g));
    CHECK(evaluate(derivative(h), 1) == -2 * g.euler_characteristic() * kappa);
  }
}

TEST_CASE("connectivity matches union-find") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<std::uint32_t> pick(0, 5);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (int i = 0; i < 5; ++i) edges.emplace_back(pick(rng), pick(rng));
    const MultiGraph g = build_graph(6, edges);
    CHECK(g.is_connected() == (oracle::component_count(g) == 1));
  }
}
