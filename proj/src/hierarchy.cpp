#include "hsf/hierarchy.hpp"

#include "hsf/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace hsf {

std::string_view to_string(Color c) {
  switch (c) {
  case Color::uncolored: return "uncolored";
  case Color::red: return "red";
  case Color::blue: return "blue";
  case Color::yellow: return "yellow";
  }
  return "?";
}

std::string_view to_string(ComponentKind k) {
  switch (k) {
  case ComponentKind::red: return "red";
  case ComponentKind::blue: return "blue";
  case ComponentKind::yellow: return "yellow";
  }
  return "?";
}

ContractionCascade cascade(const Multigraph &g, std::span<const char> frozen) {
  ContractionCascade c;
  c.levels.push_back(g);
  std::vector<EdgeId> identity(g.num_edges());
  std::iota(identity.begin(), identity.end(), EdgeId{0});
  c.origin.push_back(std::move(identity));

  std::vector<char> level_frozen(frozen.begin(), frozen.end());
  for (;;) {
    const Multigraph &current = c.levels.back();
    auto cliques = enumerate_isolated_cliques(current, level_frozen);
    if (cliques.empty())
      break;
    ContractionResult next = contract_all(current, cliques);

    std::vector<EdgeId> origin(next.edge_origin.size());
    for (std::size_t e = 0; e < origin.size(); ++e)
      origin[e] = c.origin.back()[next.edge_origin[e]];

    if (!level_frozen.empty()) {
      std::vector<char> up(next.graph.num_vertices(), 0);
      for (Vertex v = 0; v < current.num_vertices(); ++v)
        if (level_frozen[v])
          up[next.vertex_map[v]] = 1;
      level_frozen = std::move(up);
    }
    c.parent.push_back(std::move(next.vertex_map));
    c.cliques.push_back(std::move(cliques));
    c.origin.push_back(std::move(origin));
    c.levels.push_back(std::move(next.graph));
  }
  return c;
}

StructureTree::StructureTree(const ContractionCascade &c, std::size_t delta,
                             double epsilon, std::span<const char> frozen)
    : delta_(delta), epsilon_(epsilon) {
  if (!(epsilon > 0.0))
    throw Error(ErrorKind::InvalidInput, "structure tree needs epsilon > 0");
  const std::size_t k = c.depth();
  const double threshold = static_cast<double>(delta) / epsilon;
  color_.resize(k + 1);
  weight_.resize(k + 1);
  parent_ = c.parent;
  child_offsets_.resize(k + 1);
  child_list_.resize(k + 1);

  const Multigraph &g = c.base();
  color_[0].assign(g.num_vertices(), Color::uncolored);
  weight_[0].assign(g.num_vertices(), 1);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (g.degree(v) > delta || (!frozen.empty() && frozen[v]))
      color_[0][v] = Color::red;
    else if (k == 0)
      color_[0][v] = Color::yellow; // leaves are the last level
  }

  for (std::size_t i = 1; i <= k; ++i) {
    const std::size_t size = c.levels[i].num_vertices();
    auto &offsets = child_offsets_[i];
    auto &children = child_list_[i];
    offsets.assign(size + 1, 0);
    for (Vertex p : parent_[i - 1])
      ++offsets[p + 1];
    for (std::size_t x = 0; x < size; ++x)
      offsets[x + 1] += offsets[x];
    children.resize(parent_[i - 1].size());
    std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
    for (Vertex u = 0; u < parent_[i - 1].size(); ++u)
      children[fill[parent_[i - 1][u]]++] = u;

    color_[i].assign(size, Color::uncolored);
    weight_[i].assign(size, 0);
    for (Vertex u = 0; u < parent_[i - 1].size(); ++u)
      if (color_[i - 1][u] == Color::uncolored)
        weight_[i][parent_[i - 1][u]] += weight_[i - 1][u];
    for (Vertex x = 0; x < size; ++x) {
      if (static_cast<double>(weight_[i][x]) > threshold)
        color_[i][x] = Color::blue;
      else if (i == k && weight_[i][x] > 0)
        color_[i][x] = Color::yellow;
    }
  }

  // owners, top-down
  constexpr Vertex kNone = static_cast<Vertex>(-1);
  std::vector<TreeNode> above;
  for (std::size_t i = k + 1; i-- > 0;) {
    std::vector<TreeNode> here(color_[i].size(), TreeNode{k + 1, kNone});
    for (Vertex x = 0; x < color_[i].size(); ++x) {
      if (color_[i][x] != Color::uncolored)
        here[x] = {i, x};
      else if (i < k)
        here[x] = above[parent_[i][x]];
    }
    above = std::move(here);
  }
  owner_ = std::move(above);
}

std::span<const Vertex> StructureTree::children(TreeNode x) const {
  if (x.level == 0)
    return {};
  const auto &offsets = child_offsets_[x.level];
  const auto &list = child_list_[x.level];
  return {list.data() + offsets[x.vertex], list.data() + offsets[x.vertex + 1]};
}

VertexSet StructureTree::w_set(TreeNode x) const {
  VertexSet out;
  std::vector<TreeNode> stack{x};
  while (!stack.empty()) {
    const TreeNode node = stack.back();
    stack.pop_back();
    if (node.level == 0) {
      out.push_back(node.vertex);
      continue;
    }
    for (Vertex child : children(node))
      if (color_[node.level - 1][child] == Color::uncolored)
        stack.push_back({node.level - 1, child});
  }
  return make_vertex_set(std::move(out));
}

std::string StructureTree::dump() const {
  std::ostringstream out;
  out << "r (depth " << depth() << ", delta " << delta_ << ", blue above "
      << static_cast<double>(delta_) / epsilon_ << ")\n";
  std::vector<std::pair<TreeNode, std::size_t>> stack;
  const std::size_t k = depth();
  for (Vertex x = static_cast<Vertex>(level_size(k)); x-- > 0;)
    stack.push_back({{k, x}, 1});
  while (!stack.empty()) {
    const auto [node, indent] = stack.back();
    stack.pop_back();
    out << std::string(2 * indent, ' ') << 'L' << node.level << ':'
        << node.vertex << " w=" << weight(node);
    if (color(node) != Color::uncolored)
      out << ' ' << to_string(color(node));
    out << '\n';
    const auto kids = children(node);
    for (auto it = kids.rbegin(); it != kids.rend(); ++it)
      stack.push_back({{node.level - 1, *it}, indent + 1});
  }
  return out.str();
}

StructureTree build_structure_tree(const ContractionCascade &c, std::size_t delta,
                                   double epsilon) {
  return StructureTree(c, delta, epsilon);
}

EdgeColoring color_edges(const Multigraph &g, const StructureTree &tree) {
  EdgeColoring out;
  out.color.assign(g.num_edges(), Color::uncolored);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const auto [u, v] = g.edge(e);
    const TreeNode ou = tree.owner(u);
    const TreeNode ov = tree.owner(v);
    Color c = Color::uncolored;
    if (tree.color({0, u}) == Color::red || tree.color({0, v}) == Color::red)
      c = Color::red;
    else if (ou == ov)
      c = Color::uncolored;
    else if (tree.color(ou) == Color::blue || tree.color(ov) == Color::blue)
      c = Color::blue;
    else
      c = Color::yellow;
    out.color[e] = c;
    out.red += c == Color::red;
    out.blue += c == Color::blue;
    out.yellow += c == Color::yellow;
  }
  return out;
}

bool high_degree_edges_red(const ContractionCascade &c, const EdgeColoring &colors,
                           std::size_t delta) {
  for (std::size_t i = 0; i <= c.depth(); ++i) {
    const Multigraph &level = c.levels[i];
    for (Vertex v = 0; v < level.num_vertices(); ++v) {
      if (level.degree(v) <= delta)
        continue;
      for (EdgeId e : level.incident_edges(v))
        if (colors.at_level(c, i, e) != Color::red)
          return false;
    }
  }
  return true;
}

std::size_t Partition::max_component_size() const {
  std::size_t best = 0;
  for (const auto &c : components)
    best = std::max(best, c.members.size());
  return best;
}

namespace {

struct Pieces {
  std::vector<std::size_t> parent;
  explicit Pieces(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b)
      parent[std::max(a, b)] = std::min(a, b);
  }
};

// Groups vertices by label and splits each group into the connected pieces
// of the subgraph it induces. Label -1 marks red singletons.
Partition assemble(const Multigraph &g, const std::vector<long long> &label,
                   const std::vector<ComponentKind> &kind_of_vertex) {
  const std::size_t n = g.num_vertices();
  Pieces pieces(n);
  for (const Edge &e : g.edges())
    if (label[e.u] >= 0 && label[e.u] == label[e.v])
      pieces.unite(e.u, e.v);

  Partition p;
  p.assignment.assign(n, 0);
  std::vector<std::size_t> index_of_root(n, static_cast<std::size_t>(-1));
  for (Vertex v = 0; v < n; ++v) {
    const std::size_t root = pieces.find(v); // smallest member of the piece
    if (index_of_root[root] == static_cast<std::size_t>(-1)) {
      index_of_root[root] = p.components.size();
      p.components.push_back({kind_of_vertex[v], {}});
    }
    p.assignment[v] = index_of_root[root];
    p.components[index_of_root[root]].members.push_back(v);
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (p.assignment[g.edge(e).u] != p.assignment[g.edge(e).v])
      p.cut_edges.push_back(e);
  return p;
}

} // namespace

Decomposition decompose(const Multigraph &g, const HsfParams &params,
                        std::span<const char> frozen) {
  return decompose(g, params, frozen, params.small_instance(g.num_vertices()));
}

Decomposition decompose(const Multigraph &g, const HsfParams &params,
                        std::span<const char> frozen, bool small_instance) {
  Decomposition d;
  const std::size_t n = g.num_vertices();
  std::vector<long long> label(n, -1);
  std::vector<ComponentKind> kinds(n, ComponentKind::red);

  auto is_hub = [&](Vertex v) {
    return g.degree(v) > params.delta || (!frozen.empty() && frozen[v]);
  };

  d.small_instance = small_instance;
  if (d.small_instance) {
    // components of G|delta; hubs are isolated there
    d.coloring.color.assign(g.num_edges(), Color::uncolored);
    for (EdgeId e = 0; e < g.num_edges(); ++e)
      if (is_hub(g.edge(e).u) || is_hub(g.edge(e).v)) {
        d.coloring.color[e] = Color::red;
        ++d.coloring.red;
      }
    for (Vertex v = 0; v < n; ++v)
      if (!is_hub(v)) {
        label[v] = 0;
        kinds[v] = ComponentKind::yellow;
      }
    d.cascade = cascade(g, frozen);
    d.tree = StructureTree(d.cascade, params.delta, params.epsilon_prime, frozen);
    d.partition = assemble(g, label, kinds);
    return d;
  }

  d.cascade = cascade(g, frozen);
  d.tree = StructureTree(d.cascade, params.delta, params.epsilon_prime, frozen);
  d.coloring = color_edges(g, d.tree);

  // label each leaf by its owner node
  std::vector<std::size_t> level_base(d.tree.depth() + 2, 0);
  for (std::size_t i = 0; i <= d.tree.depth(); ++i)
    level_base[i + 1] = level_base[i] + d.tree.level_size(i);
  for (Vertex v = 0; v < n; ++v) {
    const TreeNode owner = d.tree.owner(v);
    const Color c = d.tree.color(owner);
    if (c == Color::red)
      continue;
    label[v] = static_cast<long long>(level_base[owner.level] + owner.vertex);
    kinds[v] = c == Color::blue ? ComponentKind::blue : ComponentKind::yellow;
  }
  d.partition = assemble(g, label, kinds);
  return d;
}

Partition global_partition(const Multigraph &g, const HsfParams &params) {
  return decompose(g, params).partition;
}

} // namespace hsf
