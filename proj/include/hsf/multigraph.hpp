#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace hsf {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
  Vertex u;
  Vertex v;
};

// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<Vertex>;

// Sorts and removes duplicates in place; returns the argument for chaining.
VertexSet make_vertex_set(std::vector<Vertex> members);

/**
 * Immutable undirected multigraph without self-loops.
 *
 * Edges keep the order in which they were supplied and receive ids
 * 0..m-1 in that order. The adjacency list of every vertex lists incident
 * edges in increasing edge id, which fixes the answer of the i-th-neighbor
 * query for a given input encoding. An edge of multiplicity k shows up k
 * times on both endpoint lists.
 */
class Multigraph {
public:
  Multigraph() = default;

  // Edgeless graph on n vertices.
  explicit Multigraph(std::size_t n);

  // Throws InvalidInput on self-loops and InvalidVertex on out-of-range ids.
  Multigraph(std::size_t n, std::vector<Edge> edges);

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }

  std::size_t degree(Vertex v) const;

  // 1-based, matching the query model: 1 <= i <= degree(v).
  Vertex neighbor(Vertex v, std::size_t i) const;

  std::span<const Vertex> neighbors(Vertex v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::span<const EdgeId> incident_edges(Vertex v) const {
    return {edge_ids_.data() + offsets_[v], edge_ids_.data() + offsets_[v + 1]};
  }

  const Edge &edge(EdgeId e) const { return edges_[e]; }
  std::span<const Edge> edges() const { return edges_; }

  std::size_t max_degree() const;

  // Number of parallel copies of {u, v}; linear in degree(u).
  std::size_t multiplicity(Vertex u, Vertex v) const;

  // Distinct neighbours (the support neighbourhood), ascending.
  VertexSet support_neighbors(Vertex v) const;

  void check_vertex(Vertex v) const;

  friend bool operator==(const Multigraph &a, const Multigraph &b);

private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> targets_;
  std::vector<EdgeId> edge_ids_;
};

struct InducedSubgraph {
  Multigraph graph;
  // new id -> original id (ascending)
  std::vector<Vertex> original;
};

struct ContractionResult {
  Multigraph graph;
  // old vertex -> new vertex
  std::vector<Vertex> vertex_map;
  // new edge -> old edge
  std::vector<EdgeId> edge_origin;
};

// |E_G(X, V \ X)| counted with multiplicity.
std::size_t cut_degree(const Multigraph &g, const VertexSet &x);

// Edges with both endpoints in X; vertices renumbered by ascending id.
InducedSubgraph induced(const Multigraph &g, const VertexSet &x);

// Replaces X by one vertex. Surviving vertices keep their relative order and
// the new vertex takes the last id. Crossing edges keep their relative order.
ContractionResult contract(const Multigraph &g, const VertexSet &x);

/**
 * Contracts several pairwise-disjoint groups at once. Every vertex that is
 * not in a group stays a singleton. New vertices are numbered in ascending
 * order of the smallest original member of their group, so the result does
 * not depend on the order in which the groups are listed.
 */
ContractionResult contract_groups(const Multigraph &g,
                                  const std::vector<VertexSet> &groups);

// G|d: drops every edge incident to a vertex of degree > d.
Multigraph truncate(const Multigraph &g, std::size_t d);

// Mean local clustering coefficient on the support graph; vertices with
// fewer than two distinct neighbours contribute 0.
double cluster_coefficient(const Multigraph &g);

// Edge-list text format: "n m" followed by m lines "u v".
Multigraph read_edge_list(std::istream &in);
Multigraph read_edge_list_file(const std::string &path);
void write_edge_list(std::ostream &out, const Multigraph &g);

} // namespace hsf
