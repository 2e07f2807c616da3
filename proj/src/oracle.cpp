#include "hsf/oracle.hpp"

#include "hsf/error.hpp"
#include "hsf/hierarchy.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <unordered_set>

namespace hsf {

QuerySession::QuerySession(const Multigraph &g)
    : graph_(&g), degree_(g.num_vertices(), -1), lists_(g.num_vertices()) {}

std::size_t QuerySession::degree(Vertex v) {
  graph_->check_vertex(v);
  if (degree_[v] < 0) {
    ++queries_;
    degree_[v] = static_cast<std::int64_t>(graph_->degree(v));
  }
  return static_cast<std::size_t>(degree_[v]);
}

Vertex QuerySession::neighbor(Vertex v, std::size_t i) {
  graph_->check_vertex(v);
  if (i >= 1 && i <= lists_[v].size())
    return lists_[v][i - 1];
  ++queries_;
  return graph_->neighbor(v, i);
}

const std::vector<Vertex> &QuerySession::neighbors(Vertex v) {
  const std::size_t d = degree(v);
  auto &list = lists_[v];
  while (list.size() < d) {
    ++queries_;
    list.push_back(graph_->neighbor(v, list.size() + 1));
  }
  return list;
}

std::uint64_t query_bound(const HsfParams &params) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t delta = params.delta;
  const std::uint64_t radius = 2 * static_cast<std::uint64_t>(params.t) + 1;
  if (delta <= 1)
    return delta == 0 ? 1 : radius + 1;
  std::uint64_t total = 0;
  std::uint64_t power = 1;
  for (std::uint64_t j = 0; j <= radius; ++j) {
    if (total > kMax - power)
      return kMax;
    total += power;
    if (power > kMax / delta) {
      if (j < radius)
        return kMax;
      break;
    }
    power *= delta;
  }
  return total;
}

namespace {

// Component of v in G|delta, explored through the oracles.
VertexSet truncated_component(QuerySession &s, Vertex v, std::size_t delta) {
  std::unordered_set<Vertex> seen{v};
  std::vector<Vertex> order{v};
  for (std::size_t head = 0; head < order.size(); ++head)
    for (Vertex w : s.neighbors(order[head]))
      if (!seen.contains(w) && s.degree(w) <= delta) {
        seen.insert(w);
        order.push_back(w);
      }
  return make_vertex_set(std::move(order));
}

} // namespace

VertexSet oracle_query(QuerySession &s, Vertex v, const HsfParams &params) {
  if (v >= s.num_vertices())
    throw Error(ErrorKind::InvalidVertex, "vertex " + std::to_string(v) + " out of range");
  if (s.degree(v) > params.delta)
    return {v};
  if (params.small_instance(s.num_vertices()))
    return truncated_component(s, v, params.delta);
  if (const auto hit = s.answers_.find(v); hit != s.answers_.end())
    return hit->second;

  // breadth-first ball of radius 2t+1 in G; hubs are explored as well, since
  // cliques through them shape the cascade around v
  const std::size_t radius = 2 * params.t + 1;
  std::unordered_map<Vertex, std::size_t> dist{{v, 0}};
  std::vector<Vertex> order{v};
  std::size_t reached = 0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const Vertex u = order[head];
    const std::size_t du = dist[u];
    reached = std::max(reached, du);
    if (du == radius) {
      s.degree(u);
      continue;
    }
    for (Vertex w : s.neighbors(u))
      if (dist.emplace(w, du + 1).second)
        order.push_back(w);
  }

  std::vector<Vertex> ball = order;
  std::sort(ball.begin(), ball.end());
  std::shared_ptr<const QuerySession::LocalRun> run;
  if (const auto it = s.runs_.find(ball); it != s.runs_.end()) {
    run = it->second;
  } else {
    auto index = [&](Vertex x) {
      return static_cast<Vertex>(std::lower_bound(ball.begin(), ball.end(), x) - ball.begin());
    };
    std::vector<Edge> edges;
    std::vector<std::size_t> local_degree(ball.size(), 0);
    for (Vertex u : ball) {
      if (dist[u] == radius)
        continue;
      for (Vertex w : s.neighbors(u)) {
        const bool w_inner = dist[w] < radius;
        if (w_inner && w < u)
          continue; // taken from w's list
        edges.push_back({index(u), index(w)});
        ++local_degree[index(u)];
        ++local_degree[index(w)];
      }
    }
    const auto sink = static_cast<Vertex>(ball.size());
    bool stubs = false;
    for (std::size_t i = 0; i < ball.size(); ++i)
      for (std::size_t k = local_degree[i]; k < s.degree(ball[i]); ++k) {
        edges.push_back({static_cast<Vertex>(i), sink});
        stubs = true;
      }
    const std::size_t local_n = ball.size() + (stubs ? 1 : 0);
    std::vector<char> frozen(local_n, 0);
    if (stubs)
      frozen[sink] = 1;
    const Multigraph local(local_n, std::move(edges));
    const Decomposition d = decompose(local, params, frozen, false);

    auto result = std::make_shared<QuerySession::LocalRun>();
    result->ball = ball;
    result->piece.assign(ball.size(), 0);
    std::vector<std::size_t> renumber(d.partition.components.size(), SIZE_MAX);
    for (std::size_t i = 0; i < ball.size(); ++i) {
      std::size_t &r = renumber[d.partition.assignment[i]];
      if (r == SIZE_MAX) {
        r = result->members.size();
        result->members.emplace_back();
      }
      result->piece[i] = r;
      result->members[r].push_back(ball[i]); // ascending, as ball is sorted
    }
    run = result;
    s.runs_.emplace(std::move(ball), run);
  }

  const auto pos = std::lower_bound(run->ball.begin(), run->ball.end(), v) - run->ball.begin();
  VertexSet answer = run->members[run->piece[pos]];
  // The exploration exhausted the component of v within half the radius, so
  // every ball around a vertex of it is this same component.
  if (2 * reached < radius)
    for (std::size_t i = 0; i < run->ball.size(); ++i)
      s.answers_.emplace(run->ball[i], run->members[run->piece[i]]);
  return answer;
}

} // namespace hsf
