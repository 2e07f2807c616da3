#pragma once

#include "hsf/multigraph.hpp"
#include "hsf/oracle.hpp"

#include "json.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace hsf {

struct RootedMultigraph {
  Multigraph graph;
  Vertex root = 0;
};

// The (d,t)-disk of v: vertices within distance t of v in G|d, with every edge
// of G|d among them, rooted at v (which is vertex 0; the rest follow in
// breadth-first order).
RootedMultigraph disk(const Multigraph &g, Vertex v, std::size_t d, std::size_t t);
RootedMultigraph disk(QuerySession &session, Vertex v, std::size_t d, std::size_t t);
// The disk of v in the subgraph induced by `part` (sorted, containing v).
RootedMultigraph disk(QuerySession &session, Vertex v, std::size_t d, std::size_t t,
                      const VertexSet &part);

inline constexpr std::size_t kDiskCap = 64;

// Canonical byte string of an isomorphism class: equal codes iff isomorphic
// (with roots identified, for rooted inputs).
using DiskCode = std::string;

struct CanonicalForm {
  DiskCode code;
  // order[k] is the vertex placed at position k of the code; the root, if any,
  // is always at position 0
  std::vector<Vertex> order;
};

/**
 * Minimum serialisation over all vertex orderings that keep the root first,
 * found by colour refinement with individualisation of the first non-trivial
 * cell. Serialisation: tag byte ('R' rooted, 'U' unrooted), vertex count, then
 * the upper triangle of the multiplicity matrix row by row as varints.
 */
CanonicalForm canonical_form(const Multigraph &g, std::optional<Vertex> root,
                             std::size_t cap = kDiskCap);
// Same on a row-major n x n multiplicity matrix.
CanonicalForm canonical_form(std::size_t n, std::span<const std::uint32_t> multiplicity,
                             std::optional<Vertex> root, std::size_t cap = kDiskCap);
DiskCode canonical_code(const RootedMultigraph &r, std::size_t cap = kDiskCap);
DiskCode canonical_code(const Multigraph &g, std::size_t cap = kDiskCap);

// Rebuilds the graph a code describes; vertex k sits at code position k.
RootedMultigraph decode_code(std::string_view code);

struct FreqVector {
  std::size_t d = 0;
  std::size_t t = 0;
  std::size_t sample_size = 0; // 0 for exact vectors
  std::map<DiskCode, double> entries;

  double total() const;
};

FreqVector disk_distribution(const Multigraph &g, std::size_t d, std::size_t t);

enum class Sampling { with_replacement, without_replacement };

// Frequencies over `samples` roots drawn with a generator seeded by `seed`;
// the full root list is fixed before any disk is explored.
FreqVector sampled_freq(QuerySession &session, std::size_t d, std::size_t t,
                        std::size_t samples, std::uint64_t seed,
                        Sampling mode = Sampling::with_replacement);

std::vector<Vertex> sample_roots(std::size_t n, std::size_t samples, std::uint64_t seed,
                                 Sampling mode);

double l1_distance(const FreqVector &a, const FreqVector &b);

std::string base64_encode(std::string_view bytes);
std::string base64_decode(std::string_view text);

nlohmann::json to_json(const FreqVector &f);
FreqVector freq_from_json(const nlohmann::json &j);

} // namespace hsf
