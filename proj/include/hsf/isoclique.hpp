#pragma once

#include "hsf/multigraph.hpp"

#include <span>
#include <vector>

namespace hsf {

enum class CliqueKind { plain, double_clique };

struct IsolatedClique {
  VertexSet members;
  std::size_t out_degree = 0;
  CliqueKind kind = CliqueKind::plain;

  friend bool operator==(const IsolatedClique &, const IsolatedClique &) = default;
};

// Q is a clique of the support graph and d_G(Q) < c |Q| (multiplicities count
// towards d_G(Q)).
bool is_c_isolated_clique(const Multigraph &g, const VertexSet &q, double c);

/**
 * All 1-isolated cliques with at least two members. Two cliques that overlap
 * (the double-isolated-clique case) are reported once as their union with
 * kind double_clique. Output is sorted by smallest member.
 *
 * Vertices flagged in `frozen` never belong to a reported clique; the local
 * partitioning oracle uses this for the placeholder that stands for the
 * unexplored rest of the graph.
 */
std::vector<IsolatedClique>
enumerate_isolated_cliques(const Multigraph &g, std::span<const char> frozen = {});

// E(G): contracts every reported clique simultaneously.
ContractionResult contract_all(const Multigraph &g);
ContractionResult contract_all(const Multigraph &g,
                               const std::vector<IsolatedClique> &cliques);

} // namespace hsf
