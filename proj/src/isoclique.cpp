#include "hsf/isoclique.hpp"

#include "hsf/error.hpp"

#include <algorithm>
#include <numeric>

namespace hsf {

bool is_c_isolated_clique(const Multigraph &g, const VertexSet &q, double c) {
  if (q.empty())
    throw Error(ErrorKind::InvalidInput, "isolated-clique test on empty set");
  const VertexSet members = make_vertex_set(q);
  std::vector<char> in(g.num_vertices(), 0);
  for (Vertex v : members) {
    g.check_vertex(v);
    in[v] = 1;
  }
  std::size_t out = 0;
  for (Vertex u : members) {
    std::size_t adjacent_members = 0;
    VertexSet seen;
    for (Vertex w : g.neighbors(u)) {
      if (!in[w])
        ++out;
      else
        seen.push_back(w);
    }
    adjacent_members = make_vertex_set(std::move(seen)).size();
    if (adjacent_members + 1 != members.size())
      return false;
  }
  return static_cast<double>(out) < c * static_cast<double>(members.size());
}

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b)
      parent[std::max(a, b)] = std::min(a, b);
  }
};

} // namespace

std::vector<IsolatedClique>
enumerate_isolated_cliques(const Multigraph &g, std::span<const char> frozen) {
  const std::size_t n = g.num_vertices();
  auto is_frozen = [&](Vertex v) { return !frozen.empty() && frozen[v]; };

  // A 1-isolated clique Q has fewer outgoing edges than members, so some
  // member has no outgoing edge at all and Q = {v} + Gamma(v) for it.
  std::vector<std::uint32_t> in_candidate(n, 0);
  std::vector<std::uint32_t> seen(n, 0);
  std::uint32_t candidate_epoch = 0;
  std::uint32_t seen_epoch = 0;

  std::vector<VertexSet> found;
  for (Vertex v = 0; v < n; ++v) {
    if (g.degree(v) == 0 || is_frozen(v))
      continue;
    VertexSet q = g.support_neighbors(v);
    q.insert(std::lower_bound(q.begin(), q.end(), v), v);
    const std::size_t size = q.size();

    bool ok = true;
    for (Vertex u : q)
      if (is_frozen(u) || g.degree(u) + 1 < size) {
        ok = false;
        break;
      }
    if (!ok)
      continue;

    ++candidate_epoch;
    for (Vertex u : q)
      in_candidate[u] = candidate_epoch;

    std::size_t out = 0;
    for (Vertex u : q) {
      ++seen_epoch;
      std::size_t distinct = 0;
      for (Vertex w : g.neighbors(u)) {
        if (in_candidate[w] != candidate_epoch) {
          ++out;
        } else if (seen[w] != seen_epoch) {
          seen[w] = seen_epoch;
          ++distinct;
        }
      }
      if (out >= size || distinct + 1 != size) {
        ok = false;
        break;
      }
    }
    if (ok)
      found.push_back(std::move(q));
  }

  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());

  // Overlapping cliques form a double-isolated-clique; merge them.
  DisjointSets sets(found.size());
  std::vector<std::size_t> owner(n, found.size());
  for (std::size_t i = 0; i < found.size(); ++i)
    for (Vertex u : found[i]) {
      if (owner[u] != found.size())
        sets.unite(owner[u], i);
      owner[u] = i;
    }

  std::vector<std::vector<std::size_t>> groups(found.size());
  for (std::size_t i = 0; i < found.size(); ++i)
    groups[sets.find(i)].push_back(i);

  std::vector<IsolatedClique> result;
  std::vector<char> in_group(n, 0);
  for (const auto &group : groups) {
    if (group.empty())
      continue;
    IsolatedClique clique;
    for (std::size_t i : group)
      clique.members.insert(clique.members.end(), found[i].begin(),
                            found[i].end());
    clique.members = make_vertex_set(std::move(clique.members));
    clique.kind = group.size() > 1 ? CliqueKind::double_clique
                                   : CliqueKind::plain;
    for (Vertex u : clique.members)
      in_group[u] = 1;
    for (Vertex u : clique.members)
      for (Vertex w : g.neighbors(u))
        if (!in_group[w])
          ++clique.out_degree;
    for (Vertex u : clique.members)
      in_group[u] = 0;
    result.push_back(std::move(clique));
  }
  std::sort(result.begin(), result.end(),
            [](const IsolatedClique &a, const IsolatedClique &b) {
              return a.members.front() < b.members.front();
            });
  return result;
}

ContractionResult contract_all(const Multigraph &g,
                               const std::vector<IsolatedClique> &cliques) {
  std::vector<VertexSet> groups;
  groups.reserve(cliques.size());
  for (const auto &c : cliques)
    groups.push_back(c.members);
  return contract_groups(g, groups);
}

ContractionResult contract_all(const Multigraph &g) {
  return contract_all(g, enumerate_isolated_cliques(g));
}

} // namespace hsf
