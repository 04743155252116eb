#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "netsens/edge_list.hpp"
#include "oracles.hpp"

using namespace netsens;

namespace {

LoadedGraph parse(const std::string& text, bool directed = false) {
  std::istringstream in(text);
  return load_edge_list(in, directed);
}

}  // namespace

TEST(LoadEdgeList, DuplicateDropped) {
  auto lg = parse("a b\nb c\na b\n");
  EXPECT_EQ(lg.graph.n(), 3u);
  EXPECT_EQ(lg.graph.m(), 2u);
  EXPECT_EQ(lg.dropped.duplicates, 1u);
  EXPECT_EQ(lg.graph.label(0), "a");
  EXPECT_EQ(lg.graph.label(2), "c");
}

TEST(LoadEdgeList, LoopOnlyIsEmptyEdgeSet) {
  EXPECT_THROW(parse("a a\n"), parse_error);
}

TEST(LoadEdgeList, EmptyInputIsError) {
  EXPECT_THROW(parse("# nothing\n"), parse_error);
}

TEST(LoadEdgeList, CommentsAndBlankLinesSkipped) {
  auto lg = parse("% konect header\n# snap header\n\n  \n1 2\n\t2 3 \r\n");
  EXPECT_EQ(lg.graph.m(), 2u);
}

TEST(LoadEdgeList, MalformedLineReportsLineNumber) {
  try {
    parse("1 2\n2 3\n4 5 6\n");
    FAIL() << "expected parse_error";
  } catch (const parse_error& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  try {
    parse("1 2\n7\n");
    FAIL() << "expected parse_error";
  } catch (const parse_error& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(LoadEdgeList, LoopVertexIsRetained) {
  auto lg = parse("x x\na b\n");
  EXPECT_EQ(lg.graph.n(), 3u);
  EXPECT_EQ(lg.graph.m(), 1u);
  EXPECT_EQ(lg.dropped.loops, 1u);
}

TEST(LoadEdgeList, DirectedKeepsOrientation) {
  auto lg = parse("a b\nb a\nb c\n", true);
  EXPECT_TRUE(lg.graph.directed());
  EXPECT_EQ(lg.graph.m(), 3u);
  EXPECT_TRUE(lg.graph.has_edge(1, 2));
  EXPECT_FALSE(lg.graph.has_edge(2, 1));
}

TEST(LoadEdgeList, IsolatedDirective) {
  auto lg = parse("#@isolated z\na b\n");
  EXPECT_EQ(lg.graph.n(), 3u);
  EXPECT_EQ(lg.graph.label(0), "z");
  EXPECT_EQ(lg.graph.out_degree(0), 0u);
  EXPECT_THROW(parse("#@isolated\na b\n"), parse_error);
}

TEST(LoadEdgeList, MissingFileIsError) {
  EXPECT_THROW(load_edge_list_file("/nonexistent/graph.txt", false), error);
}

TEST(WriteEdgeList, RoundTripIsIdentityOnSimplifiedGraphs) {
  std::mt19937_64 rng(29);
  for (int rep = 0; rep < 20; ++rep) {
    bool directed = rep % 2 == 1;
    Graph g = oracle::random_graph(rng, 30, 0.08, directed);
    if (g.m() == 0) continue;
    std::ostringstream out;
    write_edge_list(out, g);
    auto back = parse(out.str(), directed);
    EXPECT_EQ(back.dropped.duplicates, 0u);
    EXPECT_EQ(back.dropped.loops, 0u);
    ASSERT_EQ(back.graph.n(), g.n());
    ASSERT_EQ(back.graph.m(), g.m());
    for (vertex_id u = 0; u < g.n(); ++u)
      for (vertex_id v = 0; v < g.n(); ++v) {
        auto bu = static_cast<vertex_id>(std::stoul(back.graph.label(u)));
        auto bv = static_cast<vertex_id>(std::stoul(back.graph.label(v)));
        EXPECT_EQ(back.graph.has_edge(u, v), g.has_edge(bu, bv));
      }
  }
}

TEST(WriteEdgeList, ModifiedGraphKeepsIsolatedSurvivors) {
  Subgraph s = remove_vertices(oracle::star(3), VertexSet({0}));
  std::ostringstream out;
  write_edge_list(out, s.graph);
  std::istringstream in(out.str());
  // No edges remain, so reading back reports an empty edge set while the
  // text still lists every survivor.
  EXPECT_THROW(load_edge_list(in, false), parse_error);
  EXPECT_NE(out.str().find("#@isolated 1"), std::string::npos);
  EXPECT_NE(out.str().find("#@isolated 3"), std::string::npos);
}

TEST(WriteIdMap, MapsSurvivorsToOriginalLabels) {
  auto lg = parse("a b\nb c\nc d\n");
  Subgraph s = remove_vertices(lg.graph, VertexSet({1}));
  std::ostringstream out;
  write_id_map(out, s, lg.graph);
  EXPECT_EQ(out.str(), "survivor_id,original_label\n0,a\n1,c\n2,d\n");
}
