#pragma once

#include "hsf/multigraph.hpp"
#include "hsf/params.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <unordered_map>
#include <vector>

namespace hsf {

/**
 * Query access to a graph through the degree and i-th neighbour oracles only.
 * Every call that reaches the graph is counted; repeated calls are served
 * from the session cache and cost nothing. A session is single-threaded;
 * separate sessions over the same graph may run concurrently.
 */
class QuerySession {
public:
  explicit QuerySession(const Multigraph &g);

  std::size_t num_vertices() const { return graph_->num_vertices(); }
  std::size_t degree(Vertex v);
  // 1-based, as the neighbour oracle
  Vertex neighbor(Vertex v, std::size_t i);
  // Whole neighbour list, one oracle call per entry not yet cached.
  const std::vector<Vertex> &neighbors(Vertex v);

  std::uint64_t query_count() const { return queries_; }

private:
  friend VertexSet oracle_query(QuerySession &, Vertex, const HsfParams &);

  struct LocalRun {
    std::vector<Vertex> ball;          // sorted
    std::vector<std::size_t> piece;    // ball index -> piece index
    std::vector<VertexSet> members;
  };

  const Multigraph *graph_;
  std::uint64_t queries_ = 0;
  std::vector<std::int64_t> degree_;
  std::vector<std::vector<Vertex>> lists_;
  // pure memoisation: the local run depends only on the explored vertex set
  std::map<std::vector<Vertex>, std::shared_ptr<const LocalRun>> runs_;
  std::unordered_map<Vertex, VertexSet> answers_;
};

/**
 * P(v), the part of v in the global partition, computed from a local
 * exploration: {v} for vertices of degree > delta, the component of v in
 * G|delta on small instances, and otherwise the decomposition of the radius
 * 2t+1 ball around v with every edge leaving the ball attached to one frozen
 * sink vertex, so that all degrees inside the ball are true degrees.
 */
VertexSet oracle_query(QuerySession &session, Vertex v, const HsfParams &params);

// sum_{j=0}^{2t+1} delta^j, saturating at 2^64 - 1.
std::uint64_t query_bound(const HsfParams &params);

} // namespace hsf
