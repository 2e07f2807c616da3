#include "hsf/disks.hpp"

#include "hsf/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <unordered_map>

namespace hsf {

namespace {

template <class DegreeFn, class NeighborsFn>
RootedMultigraph extract_disk(Vertex v, std::size_t d, std::size_t t, DegreeFn &&degree,
                              NeighborsFn &&neighbors) {
  std::vector<Vertex> order{v};
  std::unordered_map<Vertex, std::size_t> position{{v, 0}};
  std::vector<std::size_t> depth{0};
  if (degree(v) <= d) {
    for (std::size_t head = 0; head < order.size(); ++head) {
      if (depth[head] == t)
        continue;
      for (Vertex w : neighbors(order[head])) {
        if (position.contains(w) || degree(w) > d)
          continue;
        position.emplace(w, order.size());
        order.push_back(w);
        depth.push_back(depth[head] + 1);
      }
    }
  }
  std::vector<Edge> edges;
  if (degree(v) <= d)
    for (std::size_t i = 0; i < order.size(); ++i)
      for (Vertex w : neighbors(order[i])) {
        const auto it = position.find(w);
        if (it != position.end() && it->second > i)
          edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(it->second)});
      }
  return {Multigraph(order.size(), std::move(edges)), 0};
}

void put_varint(std::string &out, std::uint32_t x) {
  while (x >= 0x80) {
    out.push_back(static_cast<char>((x & 0x7f) | 0x80));
    x >>= 7;
  }
  out.push_back(static_cast<char>(x));
}

std::uint32_t get_varint(std::string_view in, std::size_t &pos) {
  std::uint32_t x = 0;
  for (int shift = 0;; shift += 7) {
    if (pos >= in.size() || shift > 28)
      throw Error(ErrorKind::ParseError, "truncated disk code");
    const auto byte = static_cast<unsigned char>(in[pos++]);
    x |= static_cast<std::uint32_t>(byte & 0x7f) << shift;
    if (!(byte & 0x80))
      return x;
  }
}

class Canonizer {
public:
  Canonizer(std::size_t n, std::vector<std::uint32_t> adj) : n_(n), adj_(std::move(adj)) {
    sig_.resize(n_ * (n_ + 1));
    rank_.resize(n_);
  }

  void run(std::vector<std::uint32_t> colors) { search(std::move(colors)); }

  const std::vector<std::uint32_t> &best() const { return best_; }
  const std::vector<Vertex> &best_order() const { return best_order_; }

private:
  std::uint32_t at(std::size_t a, std::size_t b) const { return adj_[a * n_ + b]; }

  // Colour refinement to a stable partition. New colours are ranks of
  // (colour, sorted multiset of (neighbour colour, multiplicity)), so they
  // depend on the structure only. Returns the number of cells.
  std::size_t refine(std::vector<std::uint32_t> &colors) {
    const std::size_t width = n_ + 1;
    std::size_t cells = count_cells(colors);
    for (;;) {
      for (std::size_t v = 0; v < n_; ++v) {
        std::uint64_t *row = &sig_[v * width];
        row[0] = colors[v];
        std::size_t k = 1;
        for (std::size_t w = 0; w < n_; ++w)
          if (at(v, w))
            row[k++] = (static_cast<std::uint64_t>(colors[w]) << 32) | at(v, w);
        std::sort(row + 1, row + k);
        std::fill(row + k, row + width, std::numeric_limits<std::uint64_t>::max());
      }
      std::iota(rank_.begin(), rank_.end(), 0u);
      auto less = [&](std::uint32_t a, std::uint32_t b) {
        return std::lexicographical_compare(&sig_[a * width], &sig_[a * width] + width,
                                            &sig_[b * width], &sig_[b * width] + width);
      };
      std::sort(rank_.begin(), rank_.end(), less);
      std::uint32_t next = 0;
      for (std::size_t i = 0; i < n_; ++i) {
        if (i > 0 && less(rank_[i - 1], rank_[i]))
          ++next;
        colors[rank_[i]] = next;
      }
      const std::size_t now = n_ == 0 ? 0 : next + 1;
      if (now == cells)
        return cells;
      cells = now;
    }
  }

  std::size_t count_cells(const std::vector<std::uint32_t> &colors) const {
    std::vector<char> seen(2 * n_ + 2, 0);
    std::size_t cells = 0;
    for (std::uint32_t c : colors)
      if (!seen[c]) {
        seen[c] = 1;
        ++cells;
      }
    return cells;
  }

  bool twins(std::size_t a, std::size_t b) const {
    for (std::size_t x = 0; x < n_; ++x)
      if (x != a && x != b && at(a, x) != at(b, x))
        return false;
    return true;
  }

  void search(std::vector<std::uint32_t> colors) {
    if (refine(colors) == n_) {
      leaf(colors);
      return;
    }
    // first non-singleton cell
    std::vector<std::uint32_t> size(n_, 0);
    for (std::uint32_t c : colors)
      ++size[c];
    std::uint32_t target = 0;
    while (size[target] < 2)
      ++target;
    std::vector<std::size_t> tried;
    for (std::size_t u = 0; u < n_; ++u) {
      if (colors[u] != target)
        continue;
      if (std::any_of(tried.begin(), tried.end(), [&](std::size_t w) { return twins(u, w); }))
        continue;
      tried.push_back(u);
      std::vector<std::uint32_t> next(n_);
      for (std::size_t x = 0; x < n_; ++x)
        next[x] = 2 * colors[x] + (colors[x] == target && x != u ? 1 : 0);
      search(std::move(next));
    }
  }

  void leaf(const std::vector<std::uint32_t> &colors) {
    std::vector<Vertex> order(n_);
    for (std::size_t v = 0; v < n_; ++v)
      order[colors[v]] = static_cast<Vertex>(v);
    candidate_.clear();
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        candidate_.push_back(at(order[i], order[j]));
    if (best_order_.empty() || candidate_ < best_) {
      best_ = candidate_;
      best_order_ = std::move(order);
    }
  }

  std::size_t n_;
  std::vector<std::uint32_t> adj_;
  std::vector<std::uint64_t> sig_;
  std::vector<std::uint32_t> rank_;
  std::vector<std::uint32_t> candidate_;
  std::vector<std::uint32_t> best_;
  std::vector<Vertex> best_order_;
};

} // namespace

RootedMultigraph disk(const Multigraph &g, Vertex v, std::size_t d, std::size_t t) {
  g.check_vertex(v);
  return extract_disk(
      v, d, t, [&](Vertex x) { return g.degree(x); }, [&](Vertex x) { return g.neighbors(x); });
}

RootedMultigraph disk(QuerySession &s, Vertex v, std::size_t d, std::size_t t) {
  if (v >= s.num_vertices())
    throw Error(ErrorKind::InvalidVertex, "vertex " + std::to_string(v) + " out of range");
  return extract_disk(
      v, d, t, [&](Vertex x) { return s.degree(x); },
      [&](Vertex x) -> const std::vector<Vertex> & { return s.neighbors(x); });
}

RootedMultigraph disk(QuerySession &s, Vertex v, std::size_t d, std::size_t t,
                      const VertexSet &part) {
  if (!std::binary_search(part.begin(), part.end(), v))
    throw Error(ErrorKind::InvalidInput, "root outside the given part");
  std::unordered_map<Vertex, std::vector<Vertex>> inside;
  auto neighbors = [&](Vertex x) -> const std::vector<Vertex> & {
    auto it = inside.find(x);
    if (it == inside.end()) {
      std::vector<Vertex> kept;
      for (Vertex w : s.neighbors(x))
        if (std::binary_search(part.begin(), part.end(), w))
          kept.push_back(w);
      it = inside.emplace(x, std::move(kept)).first;
    }
    return it->second;
  };
  return extract_disk(
      v, d, t, [&](Vertex x) { return neighbors(x).size(); }, neighbors);
}

CanonicalForm canonical_form(std::size_t n, std::span<const std::uint32_t> multiplicity,
                             std::optional<Vertex> root, std::size_t cap) {
  if (n > cap || n > 255)
    throw Error(ErrorKind::DiskTooLarge, "disk with " + std::to_string(n) +
                                             " vertices exceeds the cap of " +
                                             std::to_string(std::min<std::size_t>(cap, 255)));
  if (multiplicity.size() != n * n)
    throw Error(ErrorKind::InvalidInput, "multiplicity matrix must be n x n");
  if (root && *root >= n)
    throw Error(ErrorKind::InvalidVertex, "root out of range");
  Canonizer c(n, {multiplicity.begin(), multiplicity.end()});
  std::vector<std::uint32_t> colors(n, root ? 1 : 0);
  if (root)
    colors[*root] = 0;
  c.run(std::move(colors));

  CanonicalForm out;
  out.code.push_back(root ? 'R' : 'U');
  out.code.push_back(static_cast<char>(n));
  for (std::uint32_t m : c.best())
    put_varint(out.code, m);
  out.order = c.best_order();
  return out;
}

CanonicalForm canonical_form(const Multigraph &g, std::optional<Vertex> root,
                             std::size_t cap) {
  const std::size_t n = g.num_vertices();
  if (n > cap || n > 255)
    return canonical_form(n, {}, root, cap); // throws DiskTooLarge
  std::vector<std::uint32_t> adj(n * n, 0);
  for (const Edge &e : g.edges()) {
    ++adj[e.u * n + e.v];
    ++adj[e.v * n + e.u];
  }
  return canonical_form(n, adj, root, cap);
}

DiskCode canonical_code(const RootedMultigraph &r, std::size_t cap) {
  return canonical_form(r.graph, r.root, cap).code;
}

DiskCode canonical_code(const Multigraph &g, std::size_t cap) {
  return canonical_form(g, std::nullopt, cap).code;
}

RootedMultigraph decode_code(std::string_view code) {
  if (code.size() < 2 || (code[0] != 'R' && code[0] != 'U'))
    throw Error(ErrorKind::ParseError, "not a disk code");
  const auto n = static_cast<unsigned char>(code[1]);
  std::size_t pos = 2;
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j)
      for (std::uint32_t m = get_varint(code, pos); m > 0; --m)
        edges.push_back({i, j});
  if (pos != code.size())
    throw Error(ErrorKind::ParseError, "trailing bytes in disk code");
  return {Multigraph(n, std::move(edges)), 0};
}

double FreqVector::total() const {
  double sum = 0.0;
  for (const auto &[code, f] : entries)
    sum += f;
  return sum;
}

namespace {

// Hash-consing of labelled disks: BFS-ordered disks repeat verbatim often.
class CodeCache {
public:
  const DiskCode &code(const RootedMultigraph &r) {
    std::string key;
    key.reserve(2 * r.graph.num_edges() + 4);
    put_varint(key, static_cast<std::uint32_t>(r.graph.num_vertices()));
    for (const Edge &e : r.graph.edges()) {
      put_varint(key, e.u);
      put_varint(key, e.v);
    }
    auto it = cache_.find(key);
    if (it == cache_.end())
      it = cache_.emplace(std::move(key), canonical_code(r)).first;
    return it->second;
  }

private:
  std::unordered_map<std::string, DiskCode> cache_;
};

} // namespace

FreqVector disk_distribution(const Multigraph &g, std::size_t d, std::size_t t) {
  FreqVector f;
  f.d = d;
  f.t = t;
  const std::size_t n = g.num_vertices();
  std::map<DiskCode, std::size_t> counts;
  CodeCache cache;
  for (Vertex v = 0; v < n; ++v)
    ++counts[cache.code(disk(g, v, d, t))];
  for (const auto &[code, count] : counts)
    f.entries.emplace(code, static_cast<double>(count) / static_cast<double>(n));
  return f;
}

std::vector<Vertex> sample_roots(std::size_t n, std::size_t samples, std::uint64_t seed,
                                 Sampling mode) {
  if (samples < 1)
    throw Error(ErrorKind::InvalidInput, "need at least one sample");
  if (n == 0)
    throw Error(ErrorKind::InvalidInput, "cannot sample roots of an empty graph");
  std::mt19937_64 rng(seed);
  std::vector<Vertex> roots;
  if (mode == Sampling::with_replacement) {
    std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
    for (std::size_t i = 0; i < samples; ++i)
      roots.push_back(pick(rng));
    return roots;
  }
  if (samples > n)
    throw Error(ErrorKind::InvalidInput, "cannot draw more roots than vertices without replacement");
  roots.resize(n);
  std::iota(roots.begin(), roots.end(), Vertex{0});
  std::shuffle(roots.begin(), roots.end(), rng);
  roots.resize(samples);
  return roots;
}

FreqVector sampled_freq(QuerySession &session, std::size_t d, std::size_t t,
                        std::size_t samples, std::uint64_t seed, Sampling mode) {
  FreqVector f;
  f.d = d;
  f.t = t;
  f.sample_size = samples;
  std::map<DiskCode, std::size_t> counts;
  CodeCache cache;
  for (Vertex v : sample_roots(session.num_vertices(), samples, seed, mode))
    ++counts[cache.code(disk(session, v, d, t))];
  for (const auto &[code, count] : counts)
    f.entries.emplace(code, static_cast<double>(count) / static_cast<double>(samples));
  return f;
}

double l1_distance(const FreqVector &a, const FreqVector &b) {
  if (a.d != b.d || a.t != b.t)
    throw Error(ErrorKind::IncompatibleVectors,
                "frequency vectors for (d,t) = (" + std::to_string(a.d) + "," +
                    std::to_string(a.t) + ") and (" + std::to_string(b.d) + "," +
                    std::to_string(b.t) + ")");
  double sum = 0.0;
  auto ia = a.entries.begin();
  auto ib = b.entries.begin();
  while (ia != a.entries.end() || ib != b.entries.end()) {
    if (ib == b.entries.end() || (ia != a.entries.end() && ia->first < ib->first)) {
      sum += std::abs(ia++->second);
    } else if (ia == a.entries.end() || ib->first < ia->first) {
      sum += std::abs(ib++->second);
    } else {
      sum += std::abs(ia++->second - ib++->second);
    }
  }
  return sum;
}

namespace {
constexpr std::string_view kAlphabet =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
}

std::string base64_encode(std::string_view bytes) {
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  for (std::size_t i = 0; i < bytes.size(); i += 3) {
    std::uint32_t chunk = static_cast<unsigned char>(bytes[i]) << 16;
    if (i + 1 < bytes.size())
      chunk |= static_cast<unsigned char>(bytes[i + 1]) << 8;
    if (i + 2 < bytes.size())
      chunk |= static_cast<unsigned char>(bytes[i + 2]);
    out.push_back(kAlphabet[(chunk >> 18) & 63]);
    out.push_back(kAlphabet[(chunk >> 12) & 63]);
    out.push_back(i + 1 < bytes.size() ? kAlphabet[(chunk >> 6) & 63] : '=');
    out.push_back(i + 2 < bytes.size() ? kAlphabet[chunk & 63] : '=');
  }
  return out;
}

std::string base64_decode(std::string_view text) {
  if (text.size() % 4 != 0)
    throw Error(ErrorKind::ParseError, "base64 length is not a multiple of 4");
  std::string out;
  for (std::size_t i = 0; i < text.size(); i += 4) {
    std::uint32_t chunk = 0;
    int pad = 0;
    for (std::size_t k = 0; k < 4; ++k) {
      const char c = text[i + k];
      std::uint32_t value = 0;
      if (c == '=' && i + 4 == text.size() && k >= 2) {
        ++pad;
      } else {
        const auto at = kAlphabet.find(c);
        if (at == std::string_view::npos || pad > 0)
          throw Error(ErrorKind::ParseError, "invalid base64 character");
        value = static_cast<std::uint32_t>(at);
      }
      chunk = (chunk << 6) | value;
    }
    out.push_back(static_cast<char>((chunk >> 16) & 0xff));
    if (pad < 2)
      out.push_back(static_cast<char>((chunk >> 8) & 0xff));
    if (pad < 1)
      out.push_back(static_cast<char>(chunk & 0xff));
  }
  return out;
}

nlohmann::json to_json(const FreqVector &f) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto &[code, freq] : f.entries)
    entries.push_back({{"code", base64_encode(code)}, {"freq", freq}});
  return {{"d", f.d}, {"t", f.t}, {"sampleSize", f.sample_size}, {"entries", entries}};
}

FreqVector freq_from_json(const nlohmann::json &j) {
  try {
    FreqVector f;
    f.d = j.at("d").get<std::size_t>();
    f.t = j.at("t").get<std::size_t>();
    f.sample_size = j.at("sampleSize").get<std::size_t>();
    for (const auto &e : j.at("entries"))
      f.entries[base64_decode(e.at("code").get<std::string>())] = e.at("freq").get<double>();
    return f;
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::ParseError, std::string("frequency vector: ") + e.what());
  }
}

} // namespace hsf
