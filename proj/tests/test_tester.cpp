#include "hsf/error.hpp"
#include "hsf/tester.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace hsf;
using hsf::oracles::make_graph;

namespace {

ErrorKind kind_of(const std::function<void()> &f) {
  try {
    f();
  } catch (const Error &e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::InvalidInput;
}

const auto kAll = [](const Multigraph &) { return true; };

PropertySpec min_degree_one() {
  return {"min-degree-one", [](const Multigraph &g) {
            for (Vertex v = 0; v < g.num_vertices(); ++v)
              if (g.degree(v) == 0)
                return false;
            return true;
          }};
}

} // namespace

TEST(Enumeration, KnownCounts) {
  // unlabeled simple graphs, forests, triangle-free, connected and regular
  // graphs on n vertices (standard integer sequences)
  const std::vector<std::size_t> all{1, 2, 4, 11, 34, 156, 1044};
  const std::vector<std::size_t> forests{1, 2, 3, 6, 10, 20, 37};
  const std::vector<std::size_t> triangle_free{1, 2, 3, 7, 14, 38, 107};
  const std::vector<std::size_t> connected{1, 1, 2, 6, 21, 112, 853};
  const std::vector<std::size_t> regular{1, 2, 2, 4, 3, 8, 6};
  for (std::size_t n = 1; n <= 7; ++n) {
    EXPECT_EQ(enumerate_graphs(n, 1, kAll, true).size(), all[n - 1]);
    EXPECT_EQ(enumerate_members(builtin_property("forest"), n).size(), forests[n - 1]);
    EXPECT_EQ(enumerate_members(builtin_property("triangle-free"), n).size(),
              triangle_free[n - 1]);
    EXPECT_EQ(enumerate_members(builtin_property("connected"), n).size(), connected[n - 1]);
    EXPECT_EQ(enumerate_members(builtin_property("degree-regular"), n).size(), regular[n - 1]);
    EXPECT_EQ(enumerate_members(builtin_property("edgeless"), n).size(), 1u);
  }
  // multigraphs on 4 vertices with multiplicity at most 2
  EXPECT_EQ(enumerate_graphs(4, 2, kAll, true).size(), 66u);
}

TEST(Enumeration, BudgetAndNames) {
  EXPECT_EQ(kind_of([] { enumerate_graphs(8, 1, kAll, true, 1000); }), ErrorKind::TooLarge);
  for (const std::string &name : builtin_property_names())
    EXPECT_EQ(builtin_property(name).name, name);
  EXPECT_EQ(kind_of([] { builtin_property("planar"); }), ErrorKind::InvalidInput);
}

TEST(Dist, Examples) {
  const Multigraph tri = oracles::complete_graph(3);
  const Multigraph p3 = make_graph(3, {{0, 1}, {1, 2}});
  EXPECT_DOUBLE_EQ(dist(tri, make_graph(3, {{2, 1}, {0, 2}, {1, 0}})), 0.0);
  EXPECT_DOUBLE_EQ(dist(tri, p3), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(dist(Multigraph(2), make_graph(2, {{0, 1}})), 0.5);
  EXPECT_EQ(kind_of([&] { dist(tri, Multigraph(4)); }), ErrorKind::IncompatibleSizes);
  EXPECT_EQ(kind_of([] { dist(Multigraph(9), Multigraph(9)); }), ErrorKind::TooLarge);
}

TEST(Dist, MatchesBruteForce) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 150; ++i) {
    const std::size_t n = 1 + rng() % 7;
    const Multigraph a = oracles::random_multigraph(n, 0.4, 2, rng);
    const Multigraph b = oracles::random_multigraph(n, 0.4, 2, rng);
    EXPECT_EQ(edit_distance(a, b), oracles::edit_distance_brute(a, b));
  }
}

TEST(Dist, Pseudometric) {
  for (const auto &[n, mult] : {std::pair<std::size_t, std::size_t>{5, 1}, {4, 2}}) {
    const auto graphs = enumerate_graphs(n, mult, kAll, true);
    const std::size_t k = graphs.size();
    std::vector<std::size_t> d(k * k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        d[i * k + j] = edit_distance(graphs[i], graphs[j]);
    for (std::size_t i = 0; i < k; ++i) {
      EXPECT_EQ(d[i * k + i], 0u);
      for (std::size_t j = 0; j < k; ++j) {
        ASSERT_EQ(d[i * k + j], d[j * k + i]);
        if (i != j)
          EXPECT_GT(d[i * k + j], 0u);
        for (std::size_t l = 0; l < k; ++l)
          ASSERT_LE(d[i * k + l], d[i * k + j] + d[j * k + l]);
      }
    }
  }
}

TEST(DistToProperty, Examples) {
  const Multigraph tri = oracles::complete_graph(3);
  EXPECT_DOUBLE_EQ(dist_to_property(make_graph(3, {{0, 1}}), builtin_property("forest")), 0.0);
  EXPECT_DOUBLE_EQ(dist_to_property(tri, builtin_property("triangle-free")), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(dist_to_property(oracles::complete_graph(4), builtin_property("edgeless")),
                   1.5);
  const PropertySpec never{"never", [](const Multigraph &) { return false; }, true};
  EXPECT_EQ(kind_of([&] { dist_to_property(tri, never); }), ErrorKind::EmptyProperty);
  // a parallel pair is not a forest
  EXPECT_DOUBLE_EQ(dist_to_property(make_graph(2, {{0, 1}, {0, 1}}), builtin_property("forest")),
                   0.5);
}

TEST(ReferenceSet, Examples) {
  for (std::size_t n : {1u, 4u, 8u})
    EXPECT_EQ(build_reference_set(builtin_property("edgeless"), n, 2, 1).vectors.size(), 1u);

  const ReferenceFreqSet forests = build_reference_set(builtin_property("forest"), 3, 2, 1);
  ASSERT_EQ(forests.vectors.size(), 3u);
  const std::vector<Multigraph> expected{Multigraph(3), make_graph(3, {{0, 1}}),
                                         make_graph(3, {{0, 1}, {1, 2}})};
  for (const Multigraph &g : expected) {
    const FreqVector f = disk_distribution(g, 2, 1);
    const bool present = std::any_of(forests.vectors.begin(), forests.vectors.end(),
                                     [&](const FreqVector &r) { return r.entries == f.entries; });
    EXPECT_TRUE(present);
  }

  // relabelled members yield the same set
  std::mt19937_64 rng(2);
  auto members = enumerate_members(builtin_property("triangle-free"), 6);
  const ReferenceFreqSet base = reference_set_of(members, 6, 3, 2);
  for (Multigraph &g : members)
    g = oracles::relabel(g, oracles::random_permutation(6, rng));
  const ReferenceFreqSet shuffled = reference_set_of(members, 6, 3, 2);
  ASSERT_EQ(base.vectors.size(), shuffled.vectors.size());
  for (std::size_t i = 0; i < base.vectors.size(); ++i)
    EXPECT_EQ(base.vectors[i].entries, shuffled.vectors[i].entries);
}

TEST(UniversalTest, Examples) {
  const PropertySpec forest = builtin_property("forest");
  const ReferenceFreqSet ref = build_reference_set(forest, 8, 2, 1);
  const Multigraph path = make_graph(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}});
  TesterConfig cfg;
  cfg.d = 2;
  cfg.t = 1;
  cfg.samples = 8;
  cfg.mode = Sampling::without_replacement;
  cfg.lambda = 0.01;
  QuerySession s(path);
  const TestVerdict v = universal_test(s, ref, cfg);
  EXPECT_TRUE(v.accept);
  EXPECT_DOUBLE_EQ(v.nearest, 0.0);

  const PropertySpec covered = min_degree_one();
  // d = n - 1 keeps every member's disks non-trivial
  const ReferenceFreqSet cover_ref = build_reference_set(covered, 6, 5, 1);
  ASSERT_FALSE(cover_ref.vectors.empty());
  TesterConfig c2;
  c2.d = 5;
  c2.lambda = 1.9;
  c2.samples = 10;
  const Multigraph empty(6);
  QuerySession s2(empty);
  const TestVerdict r = universal_test(s2, cover_ref, c2);
  EXPECT_FALSE(r.accept);
  EXPECT_DOUBLE_EQ(r.nearest, 2.0);

  // repeatability, and a mismatched configuration is rejected
  cfg.mode = Sampling::with_replacement;
  cfg.samples = 5;
  cfg.seed = 42;
  QuerySession a(path), b(path);
  EXPECT_EQ(universal_test(a, ref, cfg).sampled.entries,
            universal_test(b, ref, cfg).sampled.entries);
  cfg.t = 2;
  EXPECT_EQ(kind_of([&] { universal_test(a, ref, cfg); }), ErrorKind::IncompatibleVectors);
}

TEST(UniversalTest, PartitionEstimatorAndQueryBudget) {
  const HsfParams params = HsfParams::derive(48.0, 4.0, 10, 0.3);
  const ReferenceFreqSet ref = build_reference_set(builtin_property("forest"), 8, 3, 2);
  TesterConfig cfg;
  cfg.d = 3;
  cfg.t = 2;
  cfg.samples = 6;
  cfg.estimator = Estimator::partition_union;
  cfg.params = params;
  const Multigraph path = make_graph(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}});
  QuerySession s(path);
  const TestVerdict v = universal_test(s, ref, cfg);
  EXPECT_LE(v.queries, cfg.samples * query_bound(params));
  EXPECT_NEAR(v.sampled.total(), 1.0, 1e-12);
  cfg.params.reset();
  QuerySession s2(path);
  EXPECT_EQ(kind_of([&] { universal_test(s2, ref, cfg); }), ErrorKind::InvalidInput);
}

TEST(Calibration, MaximalLambdaAcceptsEverything) {
  TesterConfig cfg;
  cfg.lambda = 2.0;
  cfg.samples = 4;
  std::mt19937_64 rng(0);
  const CalibrationResult r = calibrate_success_rate(
      builtin_property("triangle-free"), cfg, 25,
      [](std::uint64_t seed) {
        std::mt19937_64 local(seed);
        return oracles::random_multigraph(8, 0.6, 2, local);
      },
      8);
  EXPECT_EQ(r.trials, 25u);
  EXPECT_DOUBLE_EQ(r.acceptance_rate(), 1.0);
  EXPECT_DOUBLE_EQ(r.rejection_rate(), 0.0);
}
