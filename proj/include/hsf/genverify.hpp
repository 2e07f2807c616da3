#pragma once

#include "hsf/multigraph.hpp"
#include "hsf/params.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace hsf {

// degree -> number of vertices with that degree
using DegreeHistogram = std::map<std::size_t, std::size_t>;

DegreeHistogram degree_histogram(const Multigraph &g);

struct SfVerdict {
  bool pass = true;
  std::size_t witness_degree = 0; // first degree i >= 2 with nu_i > c n i^-gamma
  std::size_t count = 0;
  double bound = 0.0;
};

// Power-law tail nu_i <= c n i^-gamma for every i >= 2; degrees 0 and 1 are
// not constrained.
SfVerdict verify_sf(const Multigraph &g, double c, double gamma);

struct HsfVerdict {
  bool pass = true;
  std::optional<std::size_t> level; // failing cascade level, if any
  std::string reason;
};

/**
 * SF(c, gamma) plus the hierarchical condition: every cascade level with at
 * least n0 vertices contains an isolated clique of size >= 2. Since the
 * cascade only stops at a level without such a clique, this amounts to the
 * last level having fewer than n0 vertices.
 */
HsfVerdict verify_hsf(const Multigraph &g, const HsfParams &params);

struct GeneratorOptions {
  std::size_t max_attempts = 32;
  // probability that a vertex of degree d is blown up into a clique in one
  // reverse-contraction round: expand_base * (d + 1)^-expand_decay
  double expand_base = 0.9;
  double expand_decay = 3.0;
  // clique size is d + 1 + extra with P(extra >= j) = (j + 1)^-extra_tail
  double extra_tail = 6.0;
  // a round adds at least n / min_growth vertices while the budget allows
  std::size_t min_growth = 10;
  // chance that an edge inside a new clique is doubled
  double parallel_prob = 0.05;
};

/**
 * Builds an HSF(c, gamma, n0) instance with at least target_n vertices by
 * reverse contraction: starting from a seed graph with fewer than n0
 * vertices, rounds of blowing vertices up into isolated cliques are applied
 * until the size is reached. Each candidate is checked with verify_hsf and a
 * fresh derived seed is tried on failure; GenerationFailed is thrown once
 * max_attempts is exhausted.
 */
Multigraph generate_hsf(const HsfParams &params, std::size_t target_n,
                        std::uint64_t seed, const GeneratorOptions &options = {});

struct CliqueChain {
  Multigraph graph;
  bool degenerate = false; // n == d, no external edges possible
};

// n / d disjoint copies of K_d plus a random perfect matching between
// vertices of different cliques.
CliqueChain generate_clique_chain(std::size_t n, std::size_t d, std::uint64_t seed);

} // namespace hsf
