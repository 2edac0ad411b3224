#include <string>

#include <doctest.h>

#include "ztower/errors.hpp"
#include "ztower/io.hpp"

using namespace ztower;

namespace {

std::string parse_failure(const std::string& text) {
  try {
    parse_spec(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

const char* kExample1 =
    R"({"graph": {"vertices": 1, "edges": [[0, 0], [0, 0]]}, "ell": 2, "d": 2, "alpha": [[1, 0], [0, 1]]})";

}  // namespace

TEST_CASE("spec parsing") {
  const VoltageSpec spec = parse_spec(kExample1);
  CHECK(spec.base.vertex_count() == 1);
  CHECK(spec.base.undirected_edge_count() == 2);
  CHECK(spec.ell == 2);
  CHECK(spec.d == 2);
  CHECK(spec.alpha == std::vector<Voltage>{{1, 0}, {0, 1}});
  CHECK(spec.section.edges == std::vector<EdgeId>{0, 2});
}

TEST_CASE("spec round trip") {
  const VoltageSpec spec = parse_spec(
      R"({"graph": {"vertices": 2, "edges": [[0, 1], [1, 1], [1, 0]]}, "ell": 3, "d": 1, "alpha": [[2], [-1], [4]]})");
  const VoltageSpec again = spec_from_json(spec_to_json(spec));
  CHECK(again.alpha == spec.alpha);
  CHECK(again.section.edges == spec.section.edges);
  CHECK(graph_to_json(again.base) == graph_to_json(spec.base));
  CHECK(graph_to_json(spec.base)["edges"][2] == nlohmann::json{1, 0});
}

TEST_CASE("parse errors name the problem") {
  CHECK(contains(parse_failure("{\"graph\": {"), "line 1"));
  CHECK(contains(parse_failure("{\n\"graph\": 3,\n"), "line 3"));
  CHECK(contains(parse_failure(R"({"ell": 2, "d": 1, "alpha": []})"), "missing field \"graph\""));
  CHECK(contains(
      parse_failure(R"({"graph": {"vertices": 1, "edges": [[0, 1]]}, "ell": 2, "d": 1, "alpha": [[1]]})"),
      "graph.edges[0]"));
  CHECK(contains(
      parse_failure(R"({"graph": {"vertices": 1, "edges": [[0, 0]]}, "ell": 6, "d": 1, "alpha": [[1]]})"),
      "spec.ell"));
  CHECK(contains(
      parse_failure(R"({"graph": {"vertices": 1, "edges": [[0, 0]]}, "ell": 2, "d": 2, "alpha": [[1]]})"),
      "spec.alpha[0]"));
  CHECK(contains(
      parse_failure(R"({"graph": {"vertices": 1, "edges": [[0, 0]]}, "ell": 2, "d": 1, "alpha": [[1], [2]]})"),
      "spec.alpha"));
  CHECK(contains(
      parse_failure(R"({"graph": {"vertices": 1, "edges": [[0, 0]]}, "ell": 2, "d": 1, "alpha": [["x"]]})"),
      "spec.alpha[0][0]"));
  CHECK_THROWS_AS(load_spec("/nonexistent/spec.json"), ParseError);
}

TEST_CASE("DOT export") {
  const VoltageSpec spec = parse_spec(kExample1);
  const std::string base = to_dot(spec.base, "X");
  CHECK(base == "graph X {\n  0;\n  0 -- 0;\n  0 -- 0;\n}\n");
  const std::string layer = to_dot(derived_graph(spec, 1), "X1");
  CHECK(contains(layer, "label=\"0; (1,1)\""));
  std::size_t edges = 0;
  for (std::size_t pos = 0; (pos = layer.find(" -- ", pos)) != std::string::npos; ++pos) ++edges;
  CHECK(edges == 8);
  CHECK(layer == to_dot(derived_graph(spec, 1), "X1"));
}

TEST_CASE("series JSON is keyed by exponent tuple") {
  TruncatedSeries s(2, 3);
  s.add_term({2, 0}, -1);
  s.add_term({1, 2}, BigInt("123456789012345678901234567890"));
  const auto doc = series_to_json(s);
  CHECK(doc["variables"] == 2);
  CHECK(doc["truncation"] == 3);
  CHECK(doc["coefficients"]["2,0"] == "-1");
  CHECK(doc["coefficients"]["1,2"] == "123456789012345678901234567890");
}
