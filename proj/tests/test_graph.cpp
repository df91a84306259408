#include <doctest.h>

#include <algorithm>

#include "generators.hpp"
#include "grkit/graph.hpp"
#include "oracles.hpp"

using namespace grkit;

namespace {

std::vector<std::vector<std::string>> named_sets(const Graph& g, const std::vector<VertexSet>& sets) {
  std::vector<std::vector<std::string>> out;
  for (const auto& s : sets) {
    std::vector<std::string> names;
    for (VertexId v : s) names.push_back(g.vertex_name(v));
    out.push_back(names);
  }
  return out;
}

}  // namespace

TEST_CASE("parse: parallel edges keep declaration order") {
  const Graph g = parse_graph("vertex u\nvertex v\nedge e1 u v\nedge e2 u v\n");
  CHECK(g.vertex_count() == 2);
  CHECK(g.edge_count() == 2);
  CHECK(g.vertex_name(0) == "u");
  CHECK(g.out_degree(g.vertex("u")) == 2);
  CHECK(g.in_edges(g.vertex("v")).size() == 2);
}

TEST_CASE("parse: comments, blank lines and forward references") {
  const Graph g = parse_graph("# header\n\nedge e a b  # trailing\nvertex a\nvertex b\n");
  CHECK(g.vertex_count() == 2);
  CHECK(g.edge(0).source == g.vertex("a"));
}

TEST_CASE("parse: single vertex is a sink") {
  const Graph g = parse_graph("vertex v");
  CHECK(sinks(g) == VertexSet{0});
}

TEST_CASE("parse errors carry line numbers") {
  try {
    parse_graph("vertex u\nedge e u w\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("'w'") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_graph("vertex u\nvertex u\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("vertex u\nedge e u u\nedge e u u\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("node u\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("vertex\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("vertex u\nedge e u\n"), ParseError);
}

TEST_CASE("JSON graphs match their text counterparts") {
  const Graph text = oracle::load_fixture("graphs/fibonacci.graph");
  const Graph json = oracle::load_fixture("graphs/fibonacci.json");
  CHECK(text == json);
  CHECK_THROWS_AS(parse_graph_json("{\"vertices\":[\"u\"],\"edges\":[[\"e\",\"u\",\"w\"]]}"), ParseError);
  CHECK_THROWS_AS(parse_graph_json("[1,2"), ParseError);
  CHECK_THROWS_AS(parse_graph_json("{\"edges\":[]}"), ParseError);
}

TEST_CASE("format_graph round-trips") {
  const Graph g = oracle::load_fixture("graphs/hub_three_heads.graph");
  CHECK(parse_graph(format_graph(g)) == g);
}

TEST_CASE("load_graph reports missing files") {
  CHECK_THROWS_AS(load_graph(oracle::fixture("graphs/does_not_exist.graph")), ParseError);
}

TEST_CASE("sinks") {
  CHECK(sinks(oracle::load_fixture("graphs/loop1.graph")).empty());
  CHECK(sinks(oracle::load_fixture("graphs/single_sink.graph")).size() == 1);
  CHECK(sinks(oracle::load_fixture("graphs/hub_three_heads.graph")).empty());
}

TEST_CASE("paths_into small cases") {
  const Graph g = oracle::load_fixture("graphs/acyclic_uv.graph");
  const auto paths = paths_into(g, g.vertex("v"));
  REQUIRE(paths.size() == 2);
  CHECK(paths[0].is_trivial());
  CHECK(paths[1].length() == 1);
  CHECK(paths_into(g, g.vertex("u")).size() == 1);
  CHECK(path_length_profile(g, g.vertex("v")).to_string() == "(0,1)");
  CHECK_THROWS_AS(paths_into(oracle::load_fixture("graphs/loop1.graph"), 0), CycleError);
}

TEST_CASE("paths_into: rose vertex of the reduced hub graph") {
  Graph g = oracle::load_fixture("graphs/hub_three_heads.graph");
  // Reduced graph: drop the loop at w, the edge c1 -> c2 and the rose loops.
  Graph reduced;
  for (VertexId v = 0; v < g.vertex_count(); ++v) reduced.add_vertex(g.vertex_name(v));
  for (const Edge& e : g.edges())
    if (e.name != "lw" && e.name != "c12" && e.name != "p1" && e.name != "p2") reduced.add_edge(e.name, e.source, e.range);
  const auto lengths = path_length_profile(reduced, reduced.vertex("r"));
  CHECK(lengths.expand() == std::vector<std::size_t>{0, 1, 1, 1, 2, 2, 2});
  CHECK(lengths.expand() == oracle::path_lengths_into(reduced, reduced.vertex("r")));
}

TEST_CASE("property: path multisets agree with brute-force enumeration") {
  gen::Rng rng(gen::kSeed);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = gen::random_polycephaly(rng, std::vector<gen::HeadSpec>{{gen::HeadSpec::Sink, 1}},
                                            std::uniform_int_distribution<std::size_t>(0, 5)(rng), 3);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      const auto paths = paths_into(g, v);
      const auto expected = oracle::path_lengths_into(g, v);
      std::vector<std::size_t> got;
      for (const auto& p : paths) {
        got.push_back(p.length());
        CHECK(p.range == v);
        // consecutive edges compose
        for (std::size_t i = 0; i + 1 < p.edges.size(); ++i)
          CHECK(g.edge(p.edges[i]).range == g.edge(p.edges[i + 1]).source);
      }
      std::sort(got.begin(), got.end());
      CHECK(got == expected);
      CHECK(path_length_profile(g, v).expand() == expected);
      CHECK(std::count(got.begin(), got.end(), 0u) == 1);
    }
  }
}

TEST_CASE("simple cycles") {
  CHECK(simple_cycles(oracle::load_fixture("graphs/two_cycle.graph")).size() == 1);
  CHECK(simple_cycles(oracle::load_fixture("graphs/two_cycle.graph"))[0].length() == 2);
  const auto rose = simple_cycles(oracle::load_fixture("graphs/rose2.graph"));
  REQUIRE(rose.size() == 2);
  CHECK(rose[0].length() == 1);
  CHECK(simple_cycles(oracle::load_fixture("graphs/parallel_uv.graph")).empty());
  // The triangle has three 2-cycles and two 3-cycles.
  CHECK(simple_cycles(oracle::load_fixture("graphs/triangle.graph")).size() == 5);
}

TEST_CASE("property: cycles in acyclic graphs and after adding a loop") {
  gen::Rng rng(gen::kSeed + 1);
  for (int trial = 0; trial < 100; ++trial) {
    Graph g = gen::random_polycephaly(rng, std::vector<gen::HeadSpec>{{gen::HeadSpec::Sink, 1}},
                                      std::uniform_int_distribution<std::size_t>(0, 5)(rng), 2);
    CHECK(is_acyclic(g));
    CHECK(simple_cycles(g).empty());
    const VertexId v = std::uniform_int_distribution<VertexId>(0, g.vertex_count() - 1)(rng);
    g.add_edge("extra_loop", v, v);
    CHECK(simple_cycles(g).size() == 1);
  }
  for (int trial = 0; trial < 100; ++trial) {
    Graph g = gen::random_graph(rng, 4, 2, 0.4);
    const std::size_t before = simple_cycles(g).size();
    g.add_edge("extra_loop", 0, 0);
    CHECK(simple_cycles(g).size() == before + 1);
  }
}

TEST_CASE("property: sinks are never edge sources") {
  gen::Rng rng(gen::kSeed + 2);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = gen::random_graph(rng, 5, 2, 0.3);
    const VertexSet s = sinks(g);
    for (const Edge& e : g.edges()) CHECK(!std::binary_search(s.begin(), s.end(), e.source));
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      CHECK(std::binary_search(s.begin(), s.end(), v) == (g.out_degree(v) == 0));
  }
}

TEST_CASE("hereditary saturated sets of the small example graphs") {
  const Graph e2 = oracle::load_fixture("graphs/loop_to_loop.graph");
  CHECK(named_sets(e2, hereditary_saturated_sets(e2)) ==
        std::vector<std::vector<std::string>>{{}, {"v"}, {"u", "v"}});
  const Graph e1 = oracle::load_fixture("graphs/fibonacci.graph");
  CHECK(named_sets(e1, hereditary_saturated_sets(e1)) == std::vector<std::vector<std::string>>{{}, {"u", "v"}});
  const Graph single = oracle::load_fixture("graphs/single_sink.graph");
  CHECK(hereditary_saturated_sets(single).size() == 2);
  CHECK(format_vertex_set(e2, VertexSet{0, 1}) == "{u,v}");
}

TEST_CASE("hereditary saturated enumeration respects the vertex cap") {
  gen::Rng rng(gen::kSeed + 3);
  const Graph g = gen::random_graph(rng, 6, 1, 0.3);
  CHECK_THROWS_AS(hereditary_saturated_sets(g, 5), GraphError);
  CHECK_NOTHROW(hereditary_saturated_sets(g, 6));
}

TEST_CASE("property: hereditary saturated sets form an intersection-closed family") {
  gen::Rng rng(gen::kSeed + 4);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    const Graph g = gen::random_graph(rng, n, 2, 0.35);
    const auto sets = hereditary_saturated_sets(g);
    auto mask = [](const VertexSet& s) {
      unsigned m = 0;
      for (VertexId v : s) m |= 1u << v;
      return m;
    };
    std::vector<unsigned> masks;
    for (const auto& s : sets) masks.push_back(mask(s));
    std::sort(masks.begin(), masks.end());
    CHECK(std::binary_search(masks.begin(), masks.end(), 0u));
    CHECK(std::binary_search(masks.begin(), masks.end(), (1u << n) - 1));
    for (unsigned a : masks)
      for (unsigned b : masks) CHECK(std::binary_search(masks.begin(), masks.end(), a & b));
    // Every subset passing the independent checks is listed, and nothing else.
    std::size_t expected = 0;
    for (unsigned m = 0; m < (1u << n); ++m) {
      std::vector<bool> in(n);
      for (std::size_t i = 0; i < n; ++i) in[i] = (m >> i) & 1;
      const bool ok = oracle::is_hereditary(g, in) && oracle::is_saturated(g, in);
      expected += ok;
      CHECK(ok == std::binary_search(masks.begin(), masks.end(), m));
    }
    CHECK(expected == sets.size());
  }
}

TEST_CASE("LengthProfile") {
  const std::vector<std::size_t> lengths{2, 0, 1, 1};
  const auto p = LengthProfile::from_lengths(lengths);
  CHECK(p.to_string() == "(0,1,1,2)");
  CHECK(p.total() == 4);
  CHECK(p.count(1) == 2);
  CHECK(p.count(7) == 0);
  CHECK(p.max_length() == 2);
  CHECK(LengthProfile(IntVector{1, 0, 0}) == LengthProfile(IntVector{1}));
  CHECK_THROWS(LengthProfile(IntVector{1, 5}).expand(3));
}
