#pragma once

#include "hsf/isoclique.hpp"
#include "hsf/multigraph.hpp"
#include "hsf/params.hpp"

#include <span>
#include <string>
#include <vector>

namespace hsf {

/**
 * G_0 = G, G_{i+1} = E(G_i), stopped at the first level without an isolated
 * clique of size >= 2.
 */
struct ContractionCascade {
  std::vector<Multigraph> levels;
  // parent[i][v]: vertex of G_{i+1} that v in G_i ends up in (i < depth)
  std::vector<std::vector<Vertex>> parent;
  // origin[i][e]: edge of G_0 that edge e of G_i descends from
  std::vector<std::vector<EdgeId>> origin;
  // cliques[i]: the cliques of G_i contracted to build G_{i+1}
  std::vector<std::vector<IsolatedClique>> cliques;

  std::size_t depth() const { return levels.size() - 1; }
  const Multigraph &base() const { return levels.front(); }
  const Multigraph &top() const { return levels.back(); }
};

// `frozen` marks level-0 vertices that must never be contracted.
ContractionCascade cascade(const Multigraph &g, std::span<const char> frozen = {});

enum class Color : std::uint8_t { uncolored, red, blue, yellow };
std::string_view to_string(Color c);

struct TreeNode {
  std::size_t level = 0;
  Vertex vertex = 0;
  friend bool operator==(const TreeNode &, const TreeNode &) = default;
};

/**
 * Structure tree of a cascade. Level-0 nodes are the leaves, level-i nodes
 * are the vertices of G_i and an implicit root sits above the last level.
 * Colours and weights follow the red/blue/yellow rules with blue threshold
 * delta / epsilon.
 */
class StructureTree {
public:
  StructureTree() = default;
  StructureTree(const ContractionCascade &c, std::size_t delta, double epsilon,
                std::span<const char> frozen = {});

  std::size_t depth() const { return color_.size() - 1; }
  std::size_t level_size(std::size_t level) const { return color_[level].size(); }

  Color color(TreeNode x) const { return color_[x.level][x.vertex]; }
  std::size_t weight(TreeNode x) const { return weight_[x.level][x.vertex]; }
  // Only defined below the top level.
  Vertex parent(TreeNode x) const { return parent_[x.level][x.vertex]; }
  std::span<const Vertex> children(TreeNode x) const;

  // W(x): the leaves collected through uncoloured children.
  VertexSet w_set(TreeNode x) const;

  // The coloured node whose W contains the leaf, or the leaf itself when it is
  // red. Every leaf has exactly one owner.
  TreeNode owner(Vertex leaf) const { return owner_[leaf]; }

  std::size_t delta() const { return delta_; }
  double epsilon() const { return epsilon_; }

  // Indented dump: the artificial root first, then each subtree.
  std::string dump() const;

private:
  std::size_t delta_ = 0;
  double epsilon_ = 1.0;
  std::vector<std::vector<Color>> color_;
  std::vector<std::vector<std::size_t>> weight_;
  std::vector<std::vector<Vertex>> parent_;
  std::vector<std::vector<std::size_t>> child_offsets_;
  std::vector<std::vector<Vertex>> child_list_;
  std::vector<TreeNode> owner_;
};

StructureTree build_structure_tree(const ContractionCascade &c, std::size_t delta,
                                   double epsilon);

struct EdgeColoring {
  std::vector<Color> color; // per edge of G_0
  std::size_t red = 0;
  std::size_t blue = 0;
  std::size_t yellow = 0;

  // Colour of edge e of G_i, inherited from the G_0 edge it descends from.
  Color at_level(const ContractionCascade &c, std::size_t level, EdgeId e) const {
    return color[c.origin[level][e]];
  }
};

EdgeColoring color_edges(const Multigraph &g, const StructureTree &tree);

// Every edge of every level incident to a vertex of degree > delta is red.
bool high_degree_edges_red(const ContractionCascade &c, const EdgeColoring &colors,
                           std::size_t delta);

enum class ComponentKind { red, blue, yellow };
std::string_view to_string(ComponentKind k);

struct Component {
  ComponentKind kind = ComponentKind::yellow;
  VertexSet members;
};

struct Partition {
  std::vector<Component> components; // sorted by smallest member
  std::vector<std::size_t> assignment; // vertex -> component index
  std::vector<EdgeId> cut_edges;       // ascending

  std::size_t max_component_size() const;
  const Component &component_of(Vertex v) const { return components[assignment[v]]; }
};

struct Decomposition {
  bool small_instance = false;
  ContractionCascade cascade;
  StructureTree tree;
  EdgeColoring coloring;
  Partition partition;
};

/**
 * The global hyperfinite decomposition. On instances with
 * n <= delta n0 / (2 eps') the parts are the connected components of G|delta;
 * otherwise they are the red singletons and the connected pieces of the blue
 * and yellow components. `frozen` vertices are coloured red and never merged.
 */
Decomposition decompose(const Multigraph &g, const HsfParams &params,
                        std::span<const char> frozen = {});
// Same, with the small-instance branch chosen by the caller.
Decomposition decompose(const Multigraph &g, const HsfParams &params,
                        std::span<const char> frozen, bool small_instance);

Partition global_partition(const Multigraph &g, const HsfParams &params);

} // namespace hsf
