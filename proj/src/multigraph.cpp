#include "hsf/multigraph.hpp"

#include "hsf/error.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace hsf {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::InvalidVertex: return "InvalidVertex";
  case ErrorKind::InvalidIndex: return "InvalidIndex";
  case ErrorKind::InvalidInput: return "InvalidInput";
  case ErrorKind::ParseError: return "ParseError";
  case ErrorKind::DiskTooLarge: return "DiskTooLarge";
  case ErrorKind::IncompatibleVectors: return "IncompatibleVectors";
  case ErrorKind::IncompatibleSizes: return "IncompatibleSizes";
  case ErrorKind::TooLarge: return "TooLarge";
  case ErrorKind::EmptyProperty: return "EmptyProperty";
  case ErrorKind::Diverges: return "Diverges";
  case ErrorKind::Unbounded: return "Unbounded";
  case ErrorKind::GenerationFailed: return "GenerationFailed";
  }
  return "Unknown";
}

VertexSet make_vertex_set(std::vector<Vertex> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return members;
}

Multigraph::Multigraph(std::size_t n) : n_(n), offsets_(n + 1, 0) {}

Multigraph::Multigraph(std::size_t n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)), offsets_(n + 1, 0) {
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto [u, v] = edges_[e];
    if (u >= n_ || v >= n_)
      throw Error(ErrorKind::InvalidVertex,
                  "edge " + std::to_string(e) + " endpoint out of range");
    if (u == v)
      throw Error(ErrorKind::InvalidInput,
                  "self-loop at vertex " + std::to_string(u));
    ++offsets_[u + 1];
    ++offsets_[v + 1];
  }
  for (std::size_t v = 0; v < n_; ++v)
    offsets_[v + 1] += offsets_[v];

  targets_.resize(2 * edges_.size());
  edge_ids_.resize(2 * edges_.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto [u, v] = edges_[e];
    targets_[fill[u]] = v;
    edge_ids_[fill[u]++] = static_cast<EdgeId>(e);
    targets_[fill[v]] = u;
    edge_ids_[fill[v]++] = static_cast<EdgeId>(e);
  }
}

void Multigraph::check_vertex(Vertex v) const {
  if (v >= n_)
    throw Error(ErrorKind::InvalidVertex,
                "vertex " + std::to_string(v) + " not in [0, " +
                    std::to_string(n_) + ")");
}

std::size_t Multigraph::degree(Vertex v) const {
  check_vertex(v);
  return offsets_[v + 1] - offsets_[v];
}

Vertex Multigraph::neighbor(Vertex v, std::size_t i) const {
  const std::size_t d = degree(v);
  if (i < 1 || i > d)
    throw Error(ErrorKind::InvalidIndex,
                "neighbor index " + std::to_string(i) + " of vertex " +
                    std::to_string(v) + " with degree " + std::to_string(d));
  return targets_[offsets_[v] + i - 1];
}

std::size_t Multigraph::max_degree() const {
  std::size_t best = 0;
  for (std::size_t v = 0; v < n_; ++v)
    best = std::max(best, offsets_[v + 1] - offsets_[v]);
  return best;
}

std::size_t Multigraph::multiplicity(Vertex u, Vertex v) const {
  check_vertex(u);
  check_vertex(v);
  const auto nb = neighbors(u);
  return static_cast<std::size_t>(std::count(nb.begin(), nb.end(), v));
}

VertexSet Multigraph::support_neighbors(Vertex v) const {
  check_vertex(v);
  const auto nb = neighbors(v);
  return make_vertex_set({nb.begin(), nb.end()});
}

bool operator==(const Multigraph &a, const Multigraph &b) {
  if (a.n_ != b.n_ || a.edges_.size() != b.edges_.size())
    return false;
  for (std::size_t e = 0; e < a.edges_.size(); ++e)
    if (a.edges_[e].u != b.edges_[e].u || a.edges_[e].v != b.edges_[e].v)
      return false;
  return true;
}

namespace {

std::vector<char> membership(const Multigraph &g, const VertexSet &x) {
  std::vector<char> in(g.num_vertices(), 0);
  for (Vertex v : x) {
    g.check_vertex(v);
    in[v] = 1;
  }
  return in;
}

} // namespace

std::size_t cut_degree(const Multigraph &g, const VertexSet &x) {
  const auto in = membership(g, x);
  std::size_t cut = 0;
  for (const Edge &e : g.edges())
    if (in[e.u] != in[e.v])
      ++cut;
  return cut;
}

InducedSubgraph induced(const Multigraph &g, const VertexSet &x) {
  const VertexSet members = make_vertex_set(x);
  constexpr Vertex kAbsent = static_cast<Vertex>(-1);
  std::vector<Vertex> relabel(g.num_vertices(), kAbsent);
  for (std::size_t i = 0; i < members.size(); ++i) {
    g.check_vertex(members[i]);
    relabel[members[i]] = static_cast<Vertex>(i);
  }
  std::vector<Edge> kept;
  for (const Edge &e : g.edges())
    if (relabel[e.u] != kAbsent && relabel[e.v] != kAbsent)
      kept.push_back({relabel[e.u], relabel[e.v]});
  return {Multigraph(members.size(), std::move(kept)), members};
}

namespace {

ContractionResult rebuild(const Multigraph &g, std::vector<Vertex> vertex_map,
                          std::size_t new_n) {
  ContractionResult out;
  std::vector<Edge> edges;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const Vertex a = vertex_map[g.edge(static_cast<EdgeId>(e)).u];
    const Vertex b = vertex_map[g.edge(static_cast<EdgeId>(e)).v];
    if (a == b)
      continue;
    edges.push_back({a, b});
    out.edge_origin.push_back(static_cast<EdgeId>(e));
  }
  out.graph = Multigraph(new_n, std::move(edges));
  out.vertex_map = std::move(vertex_map);
  return out;
}

} // namespace

ContractionResult contract(const Multigraph &g, const VertexSet &x) {
  if (x.empty())
    throw Error(ErrorKind::InvalidInput, "cannot contract an empty set");
  const auto in = membership(g, x);
  std::vector<Vertex> map(g.num_vertices());
  Vertex next = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (!in[v])
      map[v] = next++;
  const Vertex merged = next;
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (in[v])
      map[v] = merged;
  return rebuild(g, std::move(map), merged + 1);
}

ContractionResult contract_groups(const Multigraph &g,
                                  const std::vector<VertexSet> &groups) {
  constexpr Vertex kSingleton = static_cast<Vertex>(-1);
  // representative (smallest member) of each vertex's group
  std::vector<Vertex> rep(g.num_vertices(), kSingleton);
  for (const VertexSet &group : groups) {
    if (group.empty())
      continue;
    const Vertex low = *std::min_element(group.begin(), group.end());
    for (Vertex v : group) {
      g.check_vertex(v);
      if (rep[v] != kSingleton)
        throw Error(ErrorKind::InvalidInput,
                    "contraction groups overlap at vertex " + std::to_string(v));
      rep[v] = low;
    }
  }
  std::vector<Vertex> new_id(g.num_vertices(), kSingleton);
  Vertex next = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (rep[v] == kSingleton || rep[v] == v)
      new_id[v] = next++;
  std::vector<Vertex> map(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    map[v] = rep[v] == kSingleton ? new_id[v] : new_id[rep[v]];
  return rebuild(g, std::move(map), next);
}

Multigraph truncate(const Multigraph &g, std::size_t d) {
  std::vector<Edge> kept;
  kept.reserve(g.num_edges());
  for (const Edge &e : g.edges())
    if (g.degree(e.u) <= d && g.degree(e.v) <= d)
      kept.push_back(e);
  return Multigraph(g.num_vertices(), std::move(kept));
}

double cluster_coefficient(const Multigraph &g) {
  const std::size_t n = g.num_vertices();
  if (n == 0)
    throw Error(ErrorKind::InvalidInput,
                "cluster coefficient of the empty graph");
  std::vector<std::uint32_t> stamp(n, 0);
  std::uint32_t epoch = 0;
  double total = 0.0;
  for (Vertex v = 0; v < n; ++v) {
    const VertexSet gamma = g.support_neighbors(v);
    const std::size_t k = gamma.size();
    if (k < 2)
      continue;
    ++epoch;
    for (Vertex u : gamma)
      stamp[u] = epoch;
    // count each support edge among neighbours once, from its smaller end
    std::size_t closed = 0;
    for (Vertex u : gamma)
      for (Vertex w : g.support_neighbors(u))
        if (w > u && stamp[w] == epoch)
          ++closed;
    total += static_cast<double>(closed) /
             (static_cast<double>(k) * static_cast<double>(k - 1) / 2.0);
  }
  return total / static_cast<double>(n);
}

Multigraph read_edge_list(std::istream &in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&](std::istringstream &fields) {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string::npos)
        continue;
      fields = std::istringstream(line);
      return true;
    }
    return false;
  };
  auto fail = [&](const std::string &why) -> Error {
    return Error(ErrorKind::ParseError,
                 "line " + std::to_string(line_no) + ": " + why);
  };

  std::istringstream fields;
  if (!next_line(fields))
    throw fail("missing header 'n m'");
  long long n = -1;
  long long m = -1;
  if (!(fields >> n >> m) || n < 0 || m < 0)
    throw fail("header must be two non-negative integers 'n m'");

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_line(fields))
      throw fail("expected " + std::to_string(m) + " edges, found " +
                 std::to_string(i));
    long long u = -1;
    long long v = -1;
    std::string extra;
    if (!(fields >> u >> v) || (fields >> extra))
      throw fail("edge line must be 'u v'");
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw fail("vertex id out of range [0, " + std::to_string(n) + ")");
    if (u == v)
      throw fail("self-loop at vertex " + std::to_string(u));
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  return Multigraph(static_cast<std::size_t>(n), std::move(edges));
}

Multigraph read_edge_list_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::ParseError, "cannot open " + path);
  return read_edge_list(in);
}

void write_edge_list(std::ostream &out, const Multigraph &g) {
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const Edge &e : g.edges())
    out << e.u << ' ' << e.v << '\n';
}

} // namespace hsf
