#include "hsf/genverify.hpp"

#include "hsf/error.hpp"
#include "hsf/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>

namespace hsf {

DegreeHistogram degree_histogram(const Multigraph &g) {
  DegreeHistogram h;
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    ++h[g.degree(v)];
  return h;
}

SfVerdict verify_sf(const Multigraph &g, double c, double gamma) {
  const double n = static_cast<double>(g.num_vertices());
  for (const auto [degree, count] : degree_histogram(g)) {
    if (degree < 2)
      continue;
    const double bound = c * n * std::pow(static_cast<double>(degree), -gamma);
    if (static_cast<double>(count) > bound * (1.0 + 1e-12))
      return {false, degree, count, bound};
  }
  return {};
}

HsfVerdict verify_hsf(const Multigraph &g, const HsfParams &params) {
  const SfVerdict sf = verify_sf(g, params.c, params.gamma);
  if (!sf.pass) {
    std::ostringstream why;
    why << "power law violated at degree " << sf.witness_degree << ": "
        << sf.count << " vertices > bound " << sf.bound;
    return {false, 0, why.str()};
  }
  const ContractionCascade c = cascade(g);
  const std::size_t last = c.top().num_vertices();
  if (last >= params.n0) {
    std::ostringstream why;
    why << "level " << c.depth() << " has " << last
        << " >= n0 vertices and no isolated clique of size >= 2";
    return {false, c.depth(), why.str()};
  }
  return {};
}

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct Draft {
  std::size_t n = 0;
  std::vector<Edge> edges;
};

std::vector<std::vector<std::size_t>> incidence(const Draft &g) {
  std::vector<std::vector<std::size_t>> inc(g.n);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    inc[g.edges[e].u].push_back(e);
    inc[g.edges[e].v].push_back(e);
  }
  return inc;
}

// Caps nu_i <= c n i^-gamma while the graph grows, with n the size the graph
// will have after the current round (at most the target size).
class DegreeBudget {
public:
  DegreeBudget(const HsfParams &params, std::size_t target_n)
      : c_(params.c), gamma_(params.gamma), target_(static_cast<double>(target_n)) {}

  void scale_to(std::size_t n) { n_ = std::min(target_, static_cast<double>(n)); }

  void add(std::size_t degree, long long delta) {
    if (count_.size() <= degree)
      count_.resize(degree + 1, 0);
    count_[degree] += delta;
  }
  bool fits(std::size_t degree) const {
    if (degree < 2)
      return true;
    const long long have = degree < count_.size() ? count_[degree] : 0;
    return static_cast<double>(have) <= c_ * n_ * std::pow(static_cast<double>(degree), -gamma_);
  }

private:
  double c_, gamma_, target_, n_ = 0.0;
  std::vector<long long> count_;
};

struct Blowup {
  std::size_t size = 1;
  std::vector<std::size_t> slots;            // member receiving the j-th incident edge
  std::vector<std::pair<std::size_t, std::size_t>> doubled;
  std::vector<std::size_t> degree;           // resulting member degrees
};

// Outside edges go one per member (spread) or all to a single member (packed);
// either way fewer than `size` leave the clique.
Blowup plan_blowup(std::size_t d, std::size_t size, bool packed, std::mt19937_64 &rng,
                   const GeneratorOptions &opt) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Blowup b;
  b.size = size;
  std::vector<std::size_t> order(size);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  b.degree.assign(size, size - 1);
  for (std::size_t j = 0; j < d; ++j) {
    const std::size_t member = packed ? order[0] : order[1 + j % (size - 1)];
    b.slots.push_back(member);
    ++b.degree[member];
  }
  // a doubled edge inside a K_2 would destroy a pendant vertex
  for (std::size_t a = 0; a < size && size > 2; ++a)
    for (std::size_t c = a + 1; c < size; ++c)
      if (unit(rng) < opt.parallel_prob) {
        b.doubled.push_back({a, c});
        ++b.degree[a];
        ++b.degree[c];
      }
  return b;
}

// One reverse-contraction round: selected vertices become isolated cliques.
// Returns false when no vertex could be blown up within the degree budget.
bool blow_up(Draft &h, std::size_t target_n, DegreeBudget &budget,
             std::mt19937_64 &rng, const GeneratorOptions &opt) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto inc = incidence(h);
  std::size_t added = 0;

  auto try_layout = [&](std::size_t x, std::size_t size, bool packed) -> std::optional<Blowup> {
    const std::size_t d = inc[x].size();
    Blowup b = plan_blowup(d, size, packed, rng, opt);
    budget.scale_to(h.n + added + size - 1);
    budget.add(d, -1);
    for (std::size_t deg : b.degree)
      budget.add(deg, 1);
    bool ok = true;
    for (std::size_t deg : b.degree)
      ok = ok && budget.fits(deg);
    if (ok)
      return b;
    for (std::size_t deg : b.degree)
      budget.add(deg, -1);
    budget.add(d, 1);
    return std::nullopt;
  };

  auto try_plan = [&](std::size_t x, std::size_t size) -> std::optional<Blowup> {
    for (const bool packed : {false, true}) {
      if (auto b = try_layout(x, size, packed))
        return b;
    }
    return std::nullopt;
  };
  std::vector<std::optional<Blowup>> plan(h.n);
  auto room = [&] { return h.n + added < target_n; };
  for (std::size_t x = 0; x < h.n && room(); ++x) {
    const std::size_t d = inc[x].size();
    if (unit(rng) >= opt.expand_base * std::pow(d + 1.0, -opt.expand_decay))
      continue;
    // P(extra >= j) = (j + 1)^-tail
    const double tail = std::pow(1.0 - unit(rng), -1.0 / opt.extra_tail);
    const std::size_t extra = static_cast<std::size_t>(std::min(tail, 64.0)) - 1;
    const std::size_t size = std::max<std::size_t>(2, d + 1);
    plan[x] = try_plan(x, size + extra);
    if (!plan[x] && extra > 0)
      plan[x] = try_plan(x, size);
    if (plan[x])
      added += plan[x]->size - 1;
  }
  if (added * opt.min_growth < h.n) {
    // the random pass grew too little: top up with whatever still fits,
    // cheapest degrees first
    std::vector<std::size_t> by_degree(h.n);
    std::iota(by_degree.begin(), by_degree.end(), std::size_t{0});
    std::shuffle(by_degree.begin(), by_degree.end(), rng);
    std::stable_sort(by_degree.begin(), by_degree.end(), [&](std::size_t a, std::size_t b) {
      return inc[a].size() < inc[b].size();
    });
    std::vector<char> refused;
    for (std::size_t x : by_degree) {
      if (!room() || added * opt.min_growth >= h.n)
        break;
      const std::size_t d = inc[x].size();
      if (plan[x] || (d < refused.size() && refused[d]))
        continue;
      plan[x] = try_plan(x, std::max<std::size_t>(2, d + 1));
      if (plan[x]) {
        added += plan[x]->size - 1;
      } else {
        refused.resize(std::max(refused.size(), d + 1), 0);
        refused[d] = 1;
      }
    }
    if (added == 0)
      return false;
  }

  Draft out;
  std::vector<std::size_t> first(h.n);
  for (std::size_t x = 0; x < h.n; ++x) {
    first[x] = out.n;
    out.n += plan[x] ? plan[x]->size : 1;
  }
  std::vector<Vertex> new_u(h.edges.size());
  std::vector<Vertex> new_v(h.edges.size());
  for (std::size_t x = 0; x < h.n; ++x)
    for (std::size_t j = 0; j < inc[x].size(); ++j) {
      const std::size_t member = plan[x] ? plan[x]->slots[j] : 0;
      const auto target = static_cast<Vertex>(first[x] + member);
      const std::size_t e = inc[x][j];
      (h.edges[e].u == x ? new_u[e] : new_v[e]) = target;
    }
  for (std::size_t e = 0; e < h.edges.size(); ++e)
    out.edges.push_back({new_u[e], new_v[e]});
  for (std::size_t x = 0; x < h.n; ++x) {
    if (!plan[x])
      continue;
    const auto at = [&](std::size_t m) { return static_cast<Vertex>(first[x] + m); };
    for (std::size_t a = 0; a < plan[x]->size; ++a)
      for (std::size_t b = a + 1; b < plan[x]->size; ++b)
        out.edges.push_back({at(a), at(b)});
    for (const auto &[a, b] : plan[x]->doubled)
      out.edges.push_back({at(a), at(b)});
  }
  h = std::move(out);
  return true;
}

Multigraph shuffled(const Draft &d, std::mt19937_64 &rng) {
  std::vector<Vertex> label(d.n);
  std::iota(label.begin(), label.end(), Vertex{0});
  std::shuffle(label.begin(), label.end(), rng);
  std::vector<Edge> edges;
  edges.reserve(d.edges.size());
  for (const Edge &e : d.edges)
    edges.push_back({label[e.u], label[e.v]});
  std::shuffle(edges.begin(), edges.end(), rng);
  return Multigraph(d.n, std::move(edges));
}

} // namespace

Multigraph generate_hsf(const HsfParams &params, std::size_t target_n,
                        std::uint64_t seed, const GeneratorOptions &options) {
  if (params.n0 < 2)
    throw Error(ErrorKind::GenerationFailed,
                "HSF with n0 = 1 has no finite members");
  const std::size_t seed_size = std::min<std::size_t>(params.n0 - 1, 3);
  Draft base;
  base.n = seed_size;
  // a path, or a single edge when delta does not allow degree 2
  for (std::size_t v = 1; v < seed_size && (v < 2 || params.delta >= 2); ++v)
    base.edges.push_back({static_cast<Vertex>(v - 1), static_cast<Vertex>(v)});
  if (target_n <= seed_size)
    return Multigraph(base.n, base.edges);

  std::string last_reason;
  for (std::size_t attempt = 0; attempt < options.max_attempts; ++attempt) {
    std::mt19937_64 rng(splitmix(seed ^ splitmix(attempt)));
    Draft g = base;
    DegreeBudget budget(params, target_n);
    for (const auto &list : incidence(g))
      budget.add(list.size(), 1);
    bool stuck = false;
    while (g.n < target_n && !stuck)
      stuck = !blow_up(g, target_n, budget, rng, options);
    if (stuck) {
      last_reason = "degree budget exhausted at " + std::to_string(g.n) + " vertices";
      continue;
    }
    Multigraph candidate = shuffled(g, rng);
    const HsfVerdict verdict = verify_hsf(candidate, params);
    if (verdict.pass)
      return candidate;
    last_reason = verdict.reason;
  }
  throw Error(ErrorKind::GenerationFailed,
              "no HSF instance after " + std::to_string(options.max_attempts) +
                  " attempts; last failure: " + last_reason);
}

CliqueChain generate_clique_chain(std::size_t n, std::size_t d, std::uint64_t seed) {
  if (d < 2 || n < d || n % d != 0)
    throw Error(ErrorKind::InvalidInput, "clique chain needs d >= 2 dividing n");
  CliqueChain out;
  std::vector<Edge> edges;
  for (std::size_t c = 0; c < n / d; ++c)
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = a + 1; b < d; ++b)
        edges.push_back({static_cast<Vertex>(c * d + a), static_cast<Vertex>(c * d + b)});
  if (n == d) {
    out.degenerate = true;
    out.graph = Multigraph(n, std::move(edges));
    return out;
  }
  if (n % 2 != 0)
    throw Error(ErrorKind::InvalidInput, "clique chain matching needs even n");

  std::mt19937_64 rng(splitmix(seed));
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  std::shuffle(order.begin(), order.end(), rng);
  auto clique = [&](Vertex v) { return v / d; };
  auto bad = [&](std::size_t pair) {
    return clique(order[2 * pair]) == clique(order[2 * pair + 1]);
  };
  const std::size_t pairs = n / 2;
  std::uniform_int_distribution<std::size_t> pick(0, pairs - 1);
  for (bool repaired = false; !repaired;) {
    repaired = true;
    for (std::size_t i = 0; i < pairs; ++i) {
      if (!bad(i))
        continue;
      repaired = false;
      const std::size_t j = pick(rng);
      std::swap(order[2 * i + 1], order[2 * j + 1]);
    }
  }
  for (std::size_t i = 0; i < pairs; ++i)
    edges.push_back({order[2 * i], order[2 * i + 1]});
  out.graph = Multigraph(n, std::move(edges));
  return out;
}

} // namespace hsf
