#include "hsf/report.hpp"

#include <cstdio>

namespace hsf {

using nlohmann::json;

json to_json(const HsfParams &p) {
  return {{"c", p.c},         {"gamma", p.gamma}, {"n0", p.n0},
          {"epsilon", p.epsilon}, {"delta", p.delta}, {"t", p.t}};
}

json to_json(const std::vector<IsolatedClique> &cliques) {
  json out = json::array();
  for (const IsolatedClique &q : cliques)
    out.push_back({{"members", q.members},
                   {"outDegree", q.out_degree},
                   {"kind", q.kind == CliqueKind::plain ? "clique" : "double"}});
  return out;
}

json partition_report(const Partition &p, const HsfParams &params) {
  json components = json::array();
  for (const Component &c : p.components)
    components.push_back({{"kind", to_string(c.kind)}, {"members", c.members}});
  return {{"components", std::move(components)},
          {"cutEdgeCount", p.cut_edges.size()},
          {"params", to_json(params)}};
}

json cascade_report(const ContractionCascade &c) {
  json levels = json::array();
  for (std::size_t i = 0; i < c.levels.size(); ++i) {
    json level = {{"vertices", c.levels[i].num_vertices()}, {"edges", c.levels[i].num_edges()}};
    level["cliques"] = i < c.cliques.size() ? to_json(c.cliques[i]) : json::array();
    levels.push_back(std::move(level));
  }
  return {{"depth", c.depth()}, {"levels", std::move(levels)}};
}

json to_json(const SfVerdict &v) {
  json out = {{"verdict", v.pass ? "pass" : "fail"}};
  if (!v.pass) {
    out["degree"] = v.witness_degree;
    out["count"] = v.count;
    out["bound"] = v.bound;
  }
  return out;
}

json to_json(const HsfVerdict &v) {
  json out = {{"verdict", v.pass ? "pass" : "fail"}};
  if (!v.pass) {
    if (v.level)
      out["level"] = *v.level;
    out["reason"] = v.reason;
  }
  return out;
}

json to_json(const TestVerdict &v) {
  return {{"verdict", v.accept ? "accept" : "reject"},
          {"nearestDistance", v.nearest},
          {"nearestIndex", v.nearest_index},
          {"queries", v.queries},
          {"sampled", to_json(v.sampled)}};
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

} // namespace hsf
