#include "hsf/tester.hpp"

#include "hsf/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <unordered_set>

namespace hsf {

namespace {

std::size_t count_components(const Multigraph &g) {
  std::vector<Vertex> parent(g.num_vertices());
  std::iota(parent.begin(), parent.end(), Vertex{0});
  auto find = [&](Vertex x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = g.num_vertices();
  for (const Edge &e : g.edges()) {
    const Vertex a = find(e.u);
    const Vertex b = find(e.v);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components;
}

bool is_forest(const Multigraph &g) {
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (g.support_neighbors(v).size() != g.degree(v))
      return false; // parallel edges form a cycle
  return g.num_edges() + count_components(g) == g.num_vertices();
}

bool is_triangle_free(const Multigraph &g) {
  for (Vertex u = 0; u < g.num_vertices(); ++u) {
    const VertexSet nu = g.support_neighbors(u);
    for (Vertex v : nu) {
      if (v <= u)
        continue;
      const VertexSet nv = g.support_neighbors(v);
      for (Vertex w : nv)
        if (w > v && std::binary_search(nu.begin(), nu.end(), w))
          return false;
    }
  }
  return true;
}

bool is_regular(const Multigraph &g) {
  for (Vertex v = 1; v < g.num_vertices(); ++v)
    if (g.degree(v) != g.degree(0))
      return false;
  return true;
}

std::vector<std::uint32_t> matrix(const Multigraph &g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::uint32_t> a(n * n, 0);
  for (const Edge &e : g.edges()) {
    ++a[e.u * n + e.v];
    ++a[e.v * n + e.u];
  }
  return a;
}

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

} // namespace

PropertySpec builtin_property(std::string_view name) {
  if (name == "edgeless")
    return {"edgeless", [](const Multigraph &g) { return g.num_edges() == 0; }, true};
  if (name == "forest")
    return {"forest", is_forest, true};
  if (name == "triangle-free")
    return {"triangle-free", is_triangle_free, true};
  if (name == "connected")
    return {"connected",
            [](const Multigraph &g) { return g.num_vertices() == 0 || count_components(g) == 1; },
            false};
  if (name == "degree-regular")
    return {"degree-regular", is_regular, false};
  throw Error(ErrorKind::InvalidInput, "unknown property '" + std::string(name) + "'");
}

std::vector<std::string> builtin_property_names() {
  return {"edgeless", "forest", "triangle-free", "connected", "degree-regular"};
}

std::vector<Multigraph> enumerate_graphs(std::size_t n, std::size_t max_multiplicity,
                                         const std::function<bool(const Multigraph &)> &keep,
                                         bool hereditary, std::size_t budget) {
  std::vector<Multigraph> level{Multigraph(0)};
  std::size_t examined = 0;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Multigraph> next;
    std::unordered_set<DiskCode> seen;
    const std::size_t base = max_multiplicity + 1;
    std::size_t choices = 1;
    for (std::size_t i = 0; i < k; ++i) {
      if (choices > budget / base)
        throw Error(ErrorKind::TooLarge, "member enumeration exceeds the budget");
      choices *= base;
    }
    for (const Multigraph &g : level) {
      examined += choices;
      if (examined > budget)
        throw Error(ErrorKind::TooLarge, "member enumeration exceeds the budget of " +
                                             std::to_string(budget) + " candidates");
      std::vector<std::size_t> mult(k, 0);
      for (std::size_t c = 0; c < choices; ++c) {
        std::vector<Edge> edges(g.edges().begin(), g.edges().end());
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t m = 0; m < mult[i]; ++m)
            edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(k)});
        Multigraph h(k + 1, std::move(edges));
        // odometer over the new vertex's multiplicities
        for (std::size_t i = 0; i < k && ++mult[i] == base; ++i)
          mult[i] = 0;
        if (hereditary && !keep(h))
          continue;
        if (seen.insert(canonical_code(h, kDistCap * 8)).second)
          next.push_back(std::move(h));
      }
    }
    level = std::move(next);
  }
  if (!hereditary)
    std::erase_if(level, [&](const Multigraph &g) { return !keep(g); });
  return level;
}

std::vector<Multigraph> enumerate_members(const PropertySpec &p, std::size_t n,
                                          std::size_t budget) {
  return enumerate_graphs(n, p.max_multiplicity, p.contains, p.hereditary, budget);
}

namespace {

// Branch and bound over bijections from the vertices of g1 to those of g2.
class EditSearch {
public:
  EditSearch(const Multigraph &g1, const Multigraph &g2)
      : n_(g1.num_vertices()), a_(matrix(g1)), b_(matrix(g2)), order_(n_), image_(n_, 0),
        used_(n_, 0) {
    std::iota(order_.begin(), order_.end(), Vertex{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](Vertex x, Vertex y) { return g1.degree(x) > g1.degree(y); });
    const auto m1 = g1.num_edges();
    const auto m2 = g2.num_edges();
    floor_ = m1 > m2 ? m1 - m2 : m2 - m1;
    best_ = 0;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        best_ += diff(a_[i * n_ + j], b_[i * n_ + j]);
  }

  std::size_t solve() {
    if (best_ > floor_)
      extend(0, 0);
    return best_;
  }

private:
  static std::size_t diff(std::uint32_t x, std::uint32_t y) { return x > y ? x - y : y - x; }

  void extend(std::size_t depth, std::size_t cost) {
    if (cost >= best_ || best_ == floor_)
      return;
    if (depth == n_) {
      best_ = cost;
      return;
    }
    const Vertex x = order_[depth];
    for (Vertex y = 0; y < n_; ++y) {
      if (used_[y])
        continue;
      std::size_t added = 0;
      for (std::size_t k = 0; k < depth; ++k) {
        const Vertex px = order_[k];
        added += diff(a_[x * n_ + px], b_[y * n_ + image_[px]]);
      }
      used_[y] = 1;
      image_[x] = y;
      extend(depth + 1, cost + added);
      used_[y] = 0;
    }
  }

  std::size_t n_;
  std::vector<std::uint32_t> a_, b_;
  std::vector<Vertex> order_;
  std::vector<Vertex> image_;
  std::vector<char> used_;
  std::size_t floor_ = 0;
  std::size_t best_ = 0;
};

} // namespace

std::size_t edit_distance(const Multigraph &g1, const Multigraph &g2) {
  if (g1.num_vertices() != g2.num_vertices())
    throw Error(ErrorKind::IncompatibleSizes,
                "graphs with " + std::to_string(g1.num_vertices()) + " and " +
                    std::to_string(g2.num_vertices()) + " vertices");
  if (g1.num_vertices() > kDistCap)
    throw Error(ErrorKind::TooLarge, "edit distance is exhaustive and limited to " +
                                         std::to_string(kDistCap) + " vertices");
  return EditSearch(g1, g2).solve();
}

double dist(const Multigraph &g1, const Multigraph &g2) {
  const std::size_t edits = edit_distance(g1, g2);
  return g1.num_vertices() == 0 ? 0.0
                                : static_cast<double>(edits) / static_cast<double>(g1.num_vertices());
}

double dist_to_members(const Multigraph &g, const std::vector<Multigraph> &members) {
  if (members.empty())
    throw Error(ErrorKind::EmptyProperty, "property has no members at n = " +
                                              std::to_string(g.num_vertices()));
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (const Multigraph &h : members) {
    const std::size_t m1 = g.num_edges();
    const std::size_t m2 = h.num_edges();
    if ((m1 > m2 ? m1 - m2 : m2 - m1) >= best)
      continue;
    best = std::min(best, edit_distance(g, h));
    if (best == 0)
      break;
  }
  return g.num_vertices() == 0 ? 0.0
                               : static_cast<double>(best) / static_cast<double>(g.num_vertices());
}

double dist_to_property(const Multigraph &g, const PropertySpec &p) {
  if (g.num_vertices() > kDistCap)
    throw Error(ErrorKind::TooLarge, "distance to a property is limited to " +
                                         std::to_string(kDistCap) + " vertices");
  if (p.contains(g))
    return 0.0;
  return dist_to_members(g, enumerate_members(p, g.num_vertices()));
}

ReferenceFreqSet reference_set_of(const std::vector<Multigraph> &members, std::size_t n,
                                  std::size_t d, std::size_t t) {
  ReferenceFreqSet ref{n, d, t, {}};
  std::set<std::vector<std::pair<DiskCode, double>>> seen;
  for (const Multigraph &g : members) {
    FreqVector f = disk_distribution(g, d, t);
    std::vector<std::pair<DiskCode, double>> key(f.entries.begin(), f.entries.end());
    if (seen.insert(std::move(key)).second)
      ref.vectors.push_back(std::move(f));
  }
  std::sort(ref.vectors.begin(), ref.vectors.end(),
            [](const FreqVector &x, const FreqVector &y) { return x.entries < y.entries; });
  return ref;
}

ReferenceFreqSet build_reference_set(const PropertySpec &p, std::size_t n, std::size_t d,
                                     std::size_t t) {
  return reference_set_of(enumerate_members(p, n), n, d, t);
}

TestVerdict universal_test(QuerySession &session, const ReferenceFreqSet &ref,
                           const TesterConfig &cfg) {
  if (!(cfg.lambda > 0.0) || cfg.samples < 1)
    throw Error(ErrorKind::InvalidInput, "tester needs lambda > 0 and at least one sample");
  if (cfg.d != ref.d || cfg.t != ref.t)
    throw Error(ErrorKind::IncompatibleVectors, "tester (d,t) differs from the reference set");
  const std::uint64_t before = session.query_count();

  TestVerdict out;
  if (cfg.estimator == Estimator::disks) {
    out.sampled = sampled_freq(session, cfg.d, cfg.t, cfg.samples, cfg.seed, cfg.mode);
  } else {
    if (!cfg.params)
      throw Error(ErrorKind::InvalidInput, "the partition estimator needs HSF parameters");
    out.sampled.d = cfg.d;
    out.sampled.t = cfg.t;
    out.sampled.sample_size = cfg.samples;
    std::map<DiskCode, std::size_t> counts;
    for (Vertex v : sample_roots(session.num_vertices(), cfg.samples, cfg.seed, cfg.mode)) {
      const VertexSet part = oracle_query(session, v, *cfg.params);
      ++counts[canonical_code(disk(session, v, cfg.d, cfg.t, part))];
    }
    for (const auto &[code, count] : counts)
      out.sampled.entries.emplace(code, static_cast<double>(count) /
                                            static_cast<double>(cfg.samples));
  }

  out.nearest = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ref.vectors.size(); ++i) {
    const double l1 = l1_distance(out.sampled, ref.vectors[i]);
    if (l1 < out.nearest) {
      out.nearest = l1;
      out.nearest_index = i;
    }
  }
  out.accept = out.nearest <= cfg.lambda;
  out.queries = session.query_count() - before;
  return out;
}

double CalibrationResult::acceptance_rate() const {
  return trials == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(trials);
}

double CalibrationResult::rejection_rate() const {
  return trials == 0 ? 0.0 : 1.0 - acceptance_rate();
}

CalibrationResult calibrate_success_rate(const ReferenceFreqSet &ref, const TesterConfig &cfg,
                                         std::size_t trials, const InstanceGenerator &instance) {
  CalibrationResult r;
  for (std::size_t k = 0; k < trials; ++k) {
    const Multigraph g = instance(mix(cfg.seed ^ mix(2 * k)));
    TesterConfig trial = cfg;
    trial.seed = mix(cfg.seed ^ mix(2 * k + 1));
    QuerySession session(g);
    ++r.trials;
    r.accepted += universal_test(session, ref, trial).accept;
  }
  return r;
}

CalibrationResult calibrate_success_rate(const PropertySpec &p, const TesterConfig &cfg,
                                         std::size_t trials, const InstanceGenerator &instance,
                                         std::size_t n) {
  return calibrate_success_rate(build_reference_set(p, n, cfg.d, cfg.t), cfg, trials, instance);
}

} // namespace hsf
