#pragma once

// Independent brute-force oracles shared by the unit and acceptance suites.
// None of them call into the library code they are used to check.

#include "hsf/multigraph.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace hsf::oracles {

inline Multigraph make_graph(std::size_t n, std::initializer_list<std::pair<Vertex, Vertex>> es) {
  std::vector<Edge> edges;
  for (auto [u, v] : es)
    edges.push_back({u, v});
  return Multigraph(n, std::move(edges));
}

inline Multigraph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      edges.push_back({u, v});
  return Multigraph(n, std::move(edges));
}

inline Multigraph cycle_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    edges.push_back({u, static_cast<Vertex>((u + 1) % n)});
  return Multigraph(n, std::move(edges));
}

// Row-major multiplicity matrix.
inline std::vector<std::uint32_t> adjacency(const Multigraph &g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::uint32_t> a(n * n, 0);
  for (const Edge &e : g.edges()) {
    ++a[e.u * n + e.v];
    ++a[e.v * n + e.u];
  }
  return a;
}

// Applies perm (old -> new) to every edge, keeping edge order.
inline Multigraph relabel(const Multigraph &g, const std::vector<Vertex> &perm) {
  std::vector<Edge> edges;
  for (const Edge &e : g.edges())
    edges.push_back({perm[e.u], perm[e.v]});
  return Multigraph(g.num_vertices(), std::move(edges));
}

inline std::vector<Vertex> random_permutation(std::size_t n, std::mt19937_64 &rng) {
  std::vector<Vertex> p(n);
  std::iota(p.begin(), p.end(), Vertex{0});
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

inline Multigraph random_multigraph(std::size_t n, double density, std::size_t max_mult,
                                    std::mt19937_64 &rng) {
  std::bernoulli_distribution present(density);
  std::uniform_int_distribution<std::size_t> mult(1, max_mult);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (present(rng))
        for (std::size_t k = mult(rng); k > 0; --k)
          edges.push_back({u, v});
  std::shuffle(edges.begin(), edges.end(), rng);
  return Multigraph(n, std::move(edges));
}

// Isomorphism by trying every bijection; with `root` set, it must map to
// `other_root`.
inline bool isomorphic_brute(const Multigraph &a, const Multigraph &b, int root = -1,
                             int other_root = -1) {
  const std::size_t n = a.num_vertices();
  if (n != b.num_vertices() || a.num_edges() != b.num_edges())
    return false;
  const auto ma = adjacency(a);
  const auto mb = adjacency(b);
  std::vector<Vertex> p(n);
  std::iota(p.begin(), p.end(), Vertex{0});
  do {
    if (root >= 0 && p[root] != static_cast<Vertex>(other_root))
      continue;
    bool same = true;
    for (std::size_t i = 0; i < n && same; ++i)
      for (std::size_t j = i + 1; j < n && same; ++j)
        same = ma[i * n + j] == mb[p[i] * n + p[j]];
    if (same)
      return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

struct BruteClique {
  std::vector<Vertex> members;
  std::size_t out_degree;
  bool double_clique;
  friend bool operator==(const BruteClique &, const BruteClique &) = default;
};

/**
 * Every vertex subset of size >= 2 that is a clique of the support graph with
 * fewer outgoing edges (with multiplicity) than members. Overlapping ones are
 * merged and reported as a double clique. Sorted by smallest member.
 */
inline std::vector<BruteClique> isolated_cliques_brute(const Multigraph &g) {
  const std::size_t n = g.num_vertices();
  const auto a = adjacency(g);
  std::vector<std::uint32_t> found;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (std::popcount(mask) < 2)
      continue;
    bool clique = true;
    std::size_t out = 0;
    for (std::size_t i = 0; i < n && clique; ++i) {
      if (!(mask >> i & 1))
        continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j)
          continue;
        if (mask >> j & 1) {
          clique = a[i * n + j] > 0;
          if (!clique)
            break;
        } else {
          out += a[i * n + j];
        }
      }
    }
    if (clique && out < static_cast<std::size_t>(std::popcount(mask)))
      found.push_back(mask);
  }
  // merge overlapping sets
  std::vector<std::uint32_t> merged = found;
  std::vector<bool> doubled(found.size(), false);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < merged.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < merged.size() && !changed; ++j)
        if (merged[i] & merged[j]) {
          merged[i] |= merged[j];
          doubled[i] = true;
          merged.erase(merged.begin() + j);
          doubled.erase(doubled.begin() + j);
          changed = true;
        }
  }
  std::vector<BruteClique> out;
  for (std::size_t k = 0; k < merged.size(); ++k) {
    BruteClique q{{}, 0, doubled[k]};
    for (Vertex v = 0; v < n; ++v)
      if (merged[k] >> v & 1)
        q.members.push_back(v);
    for (Vertex v : q.members)
      for (Vertex w = 0; w < n; ++w)
        if (!(merged[k] >> w & 1))
          q.out_degree += a[v * n + w];
    out.push_back(std::move(q));
  }
  std::sort(out.begin(), out.end(),
            [](const BruteClique &x, const BruteClique &y) { return x.members < y.members; });
  return out;
}

// Minimum symmetric difference of edge multisets over all bijections.
inline std::size_t edit_distance_brute(const Multigraph &a, const Multigraph &b) {
  const std::size_t n = a.num_vertices();
  const auto ma = adjacency(a);
  const auto mb = adjacency(b);
  std::vector<Vertex> p(n);
  std::iota(p.begin(), p.end(), Vertex{0});
  std::size_t best = SIZE_MAX;
  do {
    std::size_t cost = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const auto x = ma[i * n + j];
        const auto y = mb[p[i] * n + p[j]];
        cost += x > y ? x - y : y - x;
      }
    best = std::min(best, cost);
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

} // namespace hsf::oracles
