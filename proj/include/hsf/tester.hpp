#pragma once

#include "hsf/disks.hpp"
#include "hsf/multigraph.hpp"
#include "hsf/oracle.hpp"
#include "hsf/params.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hsf {

struct PropertySpec {
  std::string name;
  std::function<bool(const Multigraph &)> contains;
  // closed under vertex deletion; lets member enumeration prune early
  bool hereditary = false;
  // per-pair multiplicity used when enumerating members
  std::size_t max_multiplicity = 1;
};

// edgeless, forest, triangle-free, connected, degree-regular
PropertySpec builtin_property(std::string_view name);
std::vector<std::string> builtin_property_names();

inline constexpr std::size_t kDistCap = 8;
inline constexpr std::size_t kEnumerationBudget = 20'000'000;

/**
 * One representative per isomorphism class of multigraphs on n vertices with
 * pair multiplicity <= max_multiplicity that satisfy `keep`. Built by adding
 * one vertex at a time; with `hereditary` set, non-members are dropped at
 * every size. Throws TooLarge once `budget` candidates have been examined.
 */
std::vector<Multigraph> enumerate_graphs(std::size_t n, std::size_t max_multiplicity,
                                         const std::function<bool(const Multigraph &)> &keep,
                                         bool hereditary, std::size_t budget = kEnumerationBudget);

std::vector<Multigraph> enumerate_members(const PropertySpec &p, std::size_t n,
                                          std::size_t budget = kEnumerationBudget);

// Edit distance: fewest edge insertions and deletions, over all vertex
// bijections, that turn g1 into g2, divided by n.
double dist(const Multigraph &g1, const Multigraph &g2);
std::size_t edit_distance(const Multigraph &g1, const Multigraph &g2);

double dist_to_property(const Multigraph &g, const PropertySpec &p);
// Same against an already enumerated member list.
double dist_to_members(const Multigraph &g, const std::vector<Multigraph> &members);

struct ReferenceFreqSet {
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t t = 0;
  std::vector<FreqVector> vectors; // distinct, in code order
};

ReferenceFreqSet build_reference_set(const PropertySpec &p, std::size_t n, std::size_t d,
                                     std::size_t t);
ReferenceFreqSet reference_set_of(const std::vector<Multigraph> &members, std::size_t n,
                                  std::size_t d, std::size_t t);

enum class Estimator {
  disks,          // disks of G|d around the sampled roots
  partition_union // disks inside the oracle part of each sampled root
};

struct TesterConfig {
  double epsilon = 0.25;
  double lambda = 0.5;
  std::size_t d = 2;
  std::size_t t = 1;
  std::size_t samples = 32;
  std::uint64_t seed = 0;
  Sampling mode = Sampling::with_replacement;
  Estimator estimator = Estimator::disks;
  std::optional<HsfParams> params; // needed by the partition_union estimator
};

struct TestVerdict {
  bool accept = false;
  double nearest = 0.0;       // smallest l1 distance to a reference vector
  std::size_t nearest_index = 0;
  FreqVector sampled;
  std::uint64_t queries = 0;  // oracle calls issued by this test
};

TestVerdict universal_test(QuerySession &session, const ReferenceFreqSet &ref,
                           const TesterConfig &cfg);

using InstanceGenerator = std::function<Multigraph(std::uint64_t seed)>;

struct CalibrationResult {
  std::size_t trials = 0;
  std::size_t accepted = 0;
  double acceptance_rate() const;
  double rejection_rate() const;
};

// Runs `trials` tests, trial k on instance(seed_k) with tester seed derived
// from cfg.seed and k.
CalibrationResult calibrate_success_rate(const ReferenceFreqSet &ref, const TesterConfig &cfg,
                                         std::size_t trials, const InstanceGenerator &instance);
CalibrationResult calibrate_success_rate(const PropertySpec &p, const TesterConfig &cfg,
                                         std::size_t trials, const InstanceGenerator &instance,
                                         std::size_t n);

} // namespace hsf
