#include "hsf/genverify.hpp"
#include "hsf/hierarchy.hpp"
#include "hsf/report.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>

using namespace hsf;
using hsf::oracles::make_graph;

namespace {

Multigraph joined_triangles() {
  return make_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
}

Multigraph joined_k4s() {
  return make_graph(8, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3},
                        {4, 5}, {4, 6}, {4, 7}, {5, 6}, {5, 7}, {6, 7}, {3, 4}});
}

// Every edge at every level that touches a vertex of degree > delta is red.
void expect_high_degree_red(const ContractionCascade &c, const EdgeColoring &col,
                            std::size_t delta) {
  for (std::size_t i = 0; i <= c.depth(); ++i) {
    const Multigraph &g = c.levels[i];
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      const Edge &edge = g.edge(e);
      if (g.degree(edge.u) > delta || g.degree(edge.v) > delta)
        ASSERT_EQ(col.color[c.origin[i][e]], Color::red) << "level " << i << " edge " << e;
    }
  }
}

// Recomputes node colours from the cascade parents alone.
std::vector<std::vector<Color>> naive_colors(const ContractionCascade &c, std::size_t delta,
                                             double epsilon) {
  const std::size_t k = c.depth();
  std::vector<std::vector<Color>> color(k + 1);
  std::vector<std::vector<std::size_t>> weight(k + 1);
  const Multigraph &g = c.base();
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    color[0].push_back(g.degree(v) > delta ? Color::red
                       : k == 0            ? Color::yellow
                                           : Color::uncolored);
    weight[0].push_back(1);
  }
  for (std::size_t i = 1; i <= k; ++i) {
    weight[i].assign(c.levels[i].num_vertices(), 0);
    for (Vertex u = 0; u < c.levels[i - 1].num_vertices(); ++u)
      if (color[i - 1][u] == Color::uncolored)
        weight[i][c.parent[i - 1][u]] += weight[i - 1][u];
    for (std::size_t w : weight[i])
      color[i].push_back(static_cast<double>(w) > static_cast<double>(delta) / epsilon
                             ? Color::blue
                         : (i == k && w > 0) ? Color::yellow
                                             : Color::uncolored);
  }
  return color;
}

} // namespace

TEST(Cascade, Examples) {
  EXPECT_EQ(cascade(oracles::cycle_graph(5)).depth(), 0u);
  const ContractionCascade two = cascade(joined_triangles());
  ASSERT_EQ(two.depth(), 2u);
  EXPECT_EQ(two.levels[1].num_vertices(), 2u);
  EXPECT_EQ(two.levels[1].num_edges(), 1u);
  EXPECT_EQ(two.levels[2].num_vertices(), 1u);
  const ContractionCascade k5 = cascade(oracles::complete_graph(5));
  EXPECT_EQ(k5.depth(), 1u);
  EXPECT_EQ(k5.top().num_vertices(), 1u);
}

TEST(Cascade, LevelsShrinkAndProvenanceIsConsistent) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 30; ++i) {
    const Multigraph g = oracles::random_multigraph(12, 0.25, 2, rng);
    const ContractionCascade c = cascade(g);
    for (std::size_t l = 0; l < c.depth(); ++l) {
      EXPECT_LT(c.levels[l + 1].num_vertices(), c.levels[l].num_vertices());
      for (EdgeId e = 0; e < c.levels[l + 1].num_edges(); ++e) {
        const Edge &orig = g.edge(c.origin[l + 1][e]);
        // map the original endpoints up to level l+1
        Vertex a = orig.u, b = orig.v;
        for (std::size_t s = 0; s <= l; ++s) {
          a = c.parent[s][a];
          b = c.parent[s][b];
        }
        const Edge &here = c.levels[l + 1].edge(e);
        EXPECT_EQ(std::minmax(a, b), std::minmax(here.u, here.v));
      }
    }
    EXPECT_TRUE(enumerate_isolated_cliques(c.top()).empty());
  }
}

TEST(StructureTree, NoCliquesMakesLeavesYellow) {
  const StructureTree tree(cascade(oracles::cycle_graph(5)), 2, 0.5);
  for (Vertex v = 0; v < 5; ++v) {
    EXPECT_EQ(tree.color({0, v}), Color::yellow);
    EXPECT_EQ(tree.w_set({0, v}), (VertexSet{v}));
  }
}

TEST(StructureTree, TriangleTurnsBlue) {
  const StructureTree tree(cascade(oracles::complete_graph(3)), 2, 0.8);
  ASSERT_EQ(tree.depth(), 1u);
  EXPECT_EQ(tree.weight({1, 0}), 3u);
  EXPECT_EQ(tree.color({1, 0}), Color::blue);
  EXPECT_EQ(tree.color({0, 0}), Color::uncolored);
}

TEST(StructureTree, HubLeafIsRedAndExcluded) {
  // a triangle with a pendant star at vertex 0 giving degree 5
  const Multigraph g = make_graph(6, {{0, 1}, {1, 2}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
  const ContractionCascade c = cascade(g);
  const StructureTree tree(c, 4, 0.5);
  EXPECT_EQ(tree.color({0, 0}), Color::red);
  EXPECT_EQ(tree.owner(0), (TreeNode{0, 0}));
  for (std::size_t l = 1; l <= tree.depth(); ++l)
    for (Vertex x = 0; x < tree.level_size(l); ++x) {
      const VertexSet w = tree.w_set({l, x});
      EXPECT_FALSE(std::binary_search(w.begin(), w.end(), Vertex{0}));
    }
  const EdgeColoring col = color_edges(g, tree);
  EXPECT_EQ(col.red, 5u);
}

TEST(StructureTree, MatchesNaiveColouring) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 40; ++i) {
    const Multigraph g = oracles::random_multigraph(14, 0.2, 2, rng);
    const ContractionCascade c = cascade(g);
    const std::size_t delta = 2 + rng() % 4;
    const double eps = 0.3 + 0.1 * static_cast<double>(rng() % 7);
    const StructureTree tree(c, delta, eps);
    const auto expected = naive_colors(c, delta, eps);
    for (std::size_t l = 0; l <= c.depth(); ++l)
      for (Vertex x = 0; x < c.levels[l].num_vertices(); ++x)
        EXPECT_EQ(tree.color({l, x}), expected[l][x]);
    // owners partition the leaves and coloured W-sets are disjoint
    std::map<std::pair<std::size_t, Vertex>, std::set<Vertex>> owned;
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      const TreeNode o = tree.owner(v);
      EXPECT_NE(tree.color(o), Color::uncolored);
      owned[{o.level, o.vertex}].insert(v);
    }
    for (const auto &[node, leaves] : owned) {
      if (tree.color({node.first, node.second}) == Color::red)
        continue;
      const VertexSet w = tree.w_set({node.first, node.second});
      EXPECT_EQ(VertexSet(leaves.begin(), leaves.end()), w);
    }
  }
}

TEST(EdgeColoring, Examples) {
  const Multigraph c5 = oracles::cycle_graph(5);
  const StructureTree t5(cascade(c5), 2, 0.5);
  const EdgeColoring col5 = color_edges(c5, t5);
  // a single yellow component with all edges inside it
  EXPECT_EQ(col5.red + col5.blue, 0u);

  // both K4s turn blue; only the bridge crosses between them
  const Multigraph g = joined_k4s();
  const StructureTree tree(cascade(g), 4, 2.0);
  EXPECT_EQ(tree.color({1, 0}), Color::blue);
  EXPECT_EQ(tree.color({1, 1}), Color::blue);
  const EdgeColoring col = color_edges(g, tree);
  EXPECT_EQ(col.blue, 1u);
  EXPECT_EQ(col.color[12], Color::blue);
  EXPECT_EQ(col.red + col.yellow, 0u);
}

TEST(Params, HyperfinitenessBound) {
  EXPECT_EQ(hyperfiniteness_bound(4, 10, 0.1), 600u);
  EXPECT_EQ(hyperfiniteness_bound(1, 1, 1.0), 6u);
  for (std::size_t delta : {2u, 5u, 9u})
    EXPECT_EQ(hyperfiniteness_bound(delta, 7, 0.25), 2 * hyperfiniteness_bound(delta, 7, 0.5));
}

TEST(GlobalPartition, DisjointTriangles) {
  std::vector<Edge> edges;
  for (Vertex b = 0; b < 30; b += 3)
    edges.insert(edges.end(), {{b, b + 1}, {b + 1, b + 2}, {b, b + 2}});
  const Multigraph g(30, edges);
  for (double eps : {0.1, 0.5, 1.0}) {
    const Partition p = global_partition(g, HsfParams::derive(2.0, 3.0, 4, eps));
    EXPECT_TRUE(p.cut_edges.empty());
    EXPECT_LE(p.max_component_size(), 3u);
  }
}

TEST(GlobalPartition, SmallInstanceUsesTruncatedComponents) {
  const HsfParams params = HsfParams::derive(2.0, 3.0, 4, 0.3);
  ASSERT_TRUE(params.small_instance(12));
  const Multigraph g = make_graph(12, {{0, 1}, {1, 2}, {3, 4}, {5, 6}, {6, 7}, {7, 5}});
  const Partition p = global_partition(g, params);
  EXPECT_LE(p.max_component_size(), params.t);
  EXPECT_TRUE(p.cut_edges.empty());
  EXPECT_EQ(p.component_of(0).members, (VertexSet{0, 1, 2}));
}

TEST(GlobalPartition, GeneratedInstanceMeetsBounds) {
  const HsfParams params = HsfParams::derive(48.0, 4.0, 10, 0.3);
  const Multigraph g = generate_hsf(params, 10000, 1);
  const Decomposition d = decompose(g, params);
  const Partition &p = d.partition;
  const double n = static_cast<double>(g.num_vertices());
  EXPECT_LE(static_cast<double>(p.cut_edges.size()), params.epsilon * n);
  EXPECT_LE(p.max_component_size(), params.t);
  EXPECT_LT(static_cast<double>(d.coloring.red), params.epsilon_prime * n);
  EXPECT_LT(static_cast<double>(d.coloring.blue), params.epsilon_prime * n);
  EXPECT_LT(static_cast<double>(d.coloring.yellow),
            static_cast<double>(params.delta * params.n0) / 2.0);
  expect_high_degree_red(d.cascade, d.coloring, params.delta);

  // colour audit on a sample of 50 vertices against the naive recomputation
  const auto expected = naive_colors(d.cascade, params.delta, params.epsilon_prime);
  std::mt19937_64 rng(4);
  for (int s = 0; s < 50; ++s) {
    Vertex x = static_cast<Vertex>(rng() % g.num_vertices());
    for (std::size_t l = 0; l <= d.cascade.depth(); ++l) {
      ASSERT_EQ(d.tree.color({l, x}), expected[l][x]);
      if (l < d.cascade.depth())
        x = d.cascade.parent[l][x];
    }
  }

  // every part is connected in G
  for (const Component &comp : p.components) {
    const InducedSubgraph sub = induced(g, comp.members);
    std::vector<char> seen(sub.graph.num_vertices(), 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      for (Vertex w : sub.graph.neighbors(u))
        if (!seen[w]) {
          seen[w] = 1;
          ++reached;
          stack.push_back(w);
        }
    }
    EXPECT_EQ(reached, comp.members.size());
  }
}

TEST(GlobalPartition, Deterministic) {
  const HsfParams params = HsfParams::derive(48.0, 4.0, 10, 0.3);
  const Multigraph g = generate_hsf(params, 3000, 9);
  const std::string a = partition_report(global_partition(g, params), params).dump();
  const std::string b = partition_report(global_partition(g, params), params).dump();
  EXPECT_EQ(a, b);
}

TEST(GlobalPartition, RedLemmaOnRandomGraphs) {
  std::mt19937_64 rng(23);
  const HsfParams params = HsfParams::derive(2.0, 3.0, 4, 0.9);
  for (int i = 0; i < 20; ++i) {
    const Multigraph g = oracles::random_multigraph(40, 0.08, 2, rng);
    const Decomposition d = decompose(g, params, {}, false);
    expect_high_degree_red(d.cascade, d.coloring, params.delta);
  }
}
