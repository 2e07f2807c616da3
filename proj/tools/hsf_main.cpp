#include "hsf/disks.hpp"
#include "hsf/error.hpp"
#include "hsf/genverify.hpp"
#include "hsf/hierarchy.hpp"
#include "hsf/multigraph.hpp"
#include "hsf/oracle.hpp"
#include "hsf/params.hpp"
#include "hsf/report.hpp"
#include "hsf/tester.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using nlohmann::json;
using namespace hsf;

namespace {

constexpr int kDomainFailure = 1;
constexpr int kUsageError = 2;

struct ParamArgs {
  std::string file;
  double c = 2.0;
  double gamma = 3.0;
  std::size_t n0 = 4;
  double epsilon = 0.3;
};

void add_param_flags(CLI::App *cmd, ParamArgs &p, bool with_epsilon = true) {
  cmd->add_option("--params", p.file, "JSON file {c, gamma, n0, epsilon}");
  cmd->add_option("-c", p.c, "power-law constant c");
  cmd->add_option("-g,--gamma", p.gamma, "power-law exponent gamma");
  cmd->add_option("--n0", p.n0, "hierarchy threshold n0");
  if (with_epsilon)
    cmd->add_option("-e,--epsilon", p.epsilon, "target cut fraction");
}

// Values in the file apply unless the flag was given explicitly.
HsfParams load_params(const CLI::App *cmd, ParamArgs p) {
  if (!p.file.empty()) {
    std::ifstream in(p.file);
    if (!in)
      throw Error(ErrorKind::ParseError, "cannot open params file " + p.file);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception &e) {
      throw Error(ErrorKind::ParseError, p.file + ": " + e.what());
    }
    auto take = [&](const char *key, const char *flag, auto &slot) {
      if (j.contains(key) && cmd->count(flag) == 0)
        slot = j.at(key).get<std::remove_reference_t<decltype(slot)>>();
    };
    try {
      take("c", "-c", p.c);
      take("gamma", "--gamma", p.gamma);
      take("n0", "--n0", p.n0);
      if (cmd->get_option_no_throw("--epsilon") != nullptr)
        take("epsilon", "--epsilon", p.epsilon);
      else if (j.contains("epsilon"))
        p.epsilon = j.at("epsilon").get<double>();
    } catch (const json::exception &e) {
      throw Error(ErrorKind::ParseError, p.file + ": " + e.what());
    }
  }
  return HsfParams::derive(p.c, p.gamma, p.n0, p.epsilon);
}

Multigraph load_graph(const std::string &path) {
  if (path == "-")
    return read_edge_list(std::cin);
  return read_edge_list_file(path);
}

// Runs body(i) for i in [0, count) on `jobs` threads; results must be written
// to per-index slots so the output does not depend on scheduling.
template <class F> void parallel_for(std::size_t count, std::size_t jobs, F body) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i)
      body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < jobs; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_lock);
          if (!failure)
            failure = std::current_exception();
        }
      }
    });
  for (auto &th : pool)
    th.join();
  if (failure)
    std::rethrow_exception(failure);
}

struct Outcome {
  std::string stdout_text;
  int code = 0;
};

Outcome emit(const json &j, int code = 0) { return {j.dump() + "\n", code}; }

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Property testing on hierarchical scale-free multigraphs", "hsf"};
  app.set_version_flag("--version", std::string("hsf ") + HSF_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  app.add_option("--seed", seed, "random seed");
  app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  std::string graph_path;
  auto add_graph = [&](CLI::App *cmd) {
    cmd->add_option("graph", graph_path, "edge-list file, - for stdin")->required();
  };

  // gen
  ParamArgs gen_params;
  std::size_t gen_n = 0;
  std::string family = "hsf";
  std::size_t chain_d = 8;
  std::size_t attempts = GeneratorOptions{}.max_attempts;
  auto *gen = app.add_subcommand("gen", "generate an instance as an edge list");
  add_param_flags(gen, gen_params);
  gen->add_option("-n", gen_n, "target vertex count")->required();
  gen->add_option("--family", family, "hsf or clique-chain")
      ->check(CLI::IsMember({"hsf", "clique-chain"}));
  gen->add_option("-d", chain_d, "clique size for clique-chain");
  gen->add_option("--attempts", attempts, "generator retries");

  // verify
  ParamArgs verify_params;
  bool sf_only = false;
  auto *verify = app.add_subcommand("verify", "check SF or HSF membership");
  add_graph(verify);
  add_param_flags(verify, verify_params);
  verify->add_flag("--sf", sf_only, "check the power-law condition only");

  // cascade
  ParamArgs cascade_params;
  bool with_tree = false;
  auto *cascade_cmd = app.add_subcommand("cascade", "contraction cascade report");
  add_graph(cascade_cmd);
  add_param_flags(cascade_cmd, cascade_params);
  cascade_cmd->add_flag("--tree", with_tree, "include the structure-tree dump");

  // partition
  ParamArgs partition_params;
  auto *partition = app.add_subcommand("partition", "global hyperfinite partition");
  add_graph(partition);
  add_param_flags(partition, partition_params);

  // oracle
  ParamArgs oracle_params;
  std::vector<Vertex> query_vertices;
  bool query_all = false;
  auto *oracle = app.add_subcommand("oracle", "local partitioning oracle answers");
  add_graph(oracle);
  add_param_flags(oracle, oracle_params);
  oracle->add_option("-v,--vertex", query_vertices, "query vertex (repeatable)");
  oracle->add_flag("--all", query_all, "query every vertex");

  // disks
  std::size_t disk_d = 2, disk_t = 1, disk_samples = 0;
  bool without_replacement = false;
  auto *disks = app.add_subcommand("disks", "disk frequency vector");
  add_graph(disks);
  disks->add_option("--d", disk_d, "degree bound");
  disks->add_option("--t", disk_t, "radius");
  disks->add_option("--samples", disk_samples, "sampled roots, 0 for the exact vector");
  disks->add_flag("--without-replacement", without_replacement);

  // test
  ParamArgs test_params;
  TesterConfig cfg;
  std::string property;
  std::string estimator = "disks";
  auto *test = app.add_subcommand("test", "universal tester against a built-in property");
  add_graph(test);
  add_param_flags(test, test_params, false);
  test->add_option("--property", property, "property name")
      ->required()
      ->check(CLI::IsMember(builtin_property_names()));
  test->add_option("--epsilon", cfg.epsilon, "proximity parameter");
  test->add_option("--lambda", cfg.lambda, "acceptance threshold on l1 distance");
  test->add_option("--d", cfg.d, "disk degree bound");
  test->add_option("--t", cfg.t, "disk radius");
  test->add_option("--samples", cfg.samples, "sampled roots");
  test->add_option("--estimator", estimator, "disks or partition")
      ->check(CLI::IsMember({"disks", "partition"}));

  // stats
  ParamArgs stats_params;
  auto *stats = app.add_subcommand("stats", "degree and clustering summary");
  add_graph(stats);
  add_param_flags(stats, stats_params);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  CLI::App *cmd = app.get_subcommands().front();
  const auto start = std::chrono::steady_clock::now();
  json manifest = {{"subcommand", cmd->get_name()},
                   {"inputs", graph_path.empty() ? json::array() : json::array({graph_path})},
                   {"seed", seed},
                   {"version", HSF_VERSION}};

  Outcome out;
  try {
    if (cmd == gen) {
      const HsfParams params = load_params(gen, gen_params);
      manifest["params"] = to_json(params);
      std::ostringstream text;
      if (family == "hsf") {
        GeneratorOptions options;
        options.max_attempts = attempts;
        write_edge_list(text, generate_hsf(params, gen_n, seed, options));
      } else {
        const CliqueChain chain = generate_clique_chain(gen_n, chain_d, seed);
        if (chain.degenerate)
          std::cerr << "warning: n == d, the chain is a single clique\n";
        write_edge_list(text, chain.graph);
      }
      out = {text.str(), 0};
    } else if (cmd == verify) {
      const Multigraph g = load_graph(graph_path);
      if (sf_only) {
        manifest["params"] = {{"c", verify_params.c}, {"gamma", verify_params.gamma}};
        const SfVerdict v = verify_sf(g, verify_params.c, verify_params.gamma);
        out = emit(to_json(v), v.pass ? 0 : kDomainFailure);
      } else {
        const HsfParams params = load_params(verify, verify_params);
        manifest["params"] = to_json(params);
        const HsfVerdict v = verify_hsf(g, params);
        out = emit(to_json(v), v.pass ? 0 : kDomainFailure);
      }
    } else if (cmd == cascade_cmd) {
      const Multigraph g = load_graph(graph_path);
      const ContractionCascade c = cascade(g);
      json report = cascade_report(c);
      if (with_tree) {
        const HsfParams params = load_params(cascade_cmd, cascade_params);
        manifest["params"] = to_json(params);
        report["tree"] = StructureTree(c, params.delta, params.epsilon_prime).dump();
      }
      out = emit(report);
    } else if (cmd == partition) {
      const Multigraph g = load_graph(graph_path);
      const HsfParams params = load_params(partition, partition_params);
      manifest["params"] = to_json(params);
      const Partition p = global_partition(g, params);
      std::cerr << p.components.size() << " components, " << p.cut_edges.size()
                << " cut edges, largest " << p.max_component_size() << "\n";
      out = emit(partition_report(p, params));
    } else if (cmd == oracle) {
      const Multigraph g = load_graph(graph_path);
      const HsfParams params = load_params(oracle, oracle_params);
      manifest["params"] = to_json(params);
      if (query_all) {
        query_vertices.resize(g.num_vertices());
        std::iota(query_vertices.begin(), query_vertices.end(), Vertex{0});
      }
      // one session per query, so answers and counts do not depend on --jobs
      std::vector<json> answers(query_vertices.size());
      parallel_for(query_vertices.size(), jobs, [&](std::size_t i) {
        QuerySession session(g);
        const VertexSet part = oracle_query(session, query_vertices[i], params);
        answers[i] = {{"v", query_vertices[i]},
                      {"component", part},
                      {"queries", session.query_count()}};
      });
      out = emit(json(answers));
    } else if (cmd == disks) {
      const Multigraph g = load_graph(graph_path);
      manifest["params"] = {{"d", disk_d}, {"t", disk_t}, {"samples", disk_samples}};
      if (disk_samples == 0) {
        out = emit(to_json(disk_distribution(g, disk_d, disk_t)));
      } else {
        QuerySession session(g);
        out = emit(to_json(sampled_freq(session, disk_d, disk_t, disk_samples, seed,
                                        without_replacement ? Sampling::without_replacement
                                                            : Sampling::with_replacement)));
      }
    } else if (cmd == test) {
      const Multigraph g = load_graph(graph_path);
      const PropertySpec p = builtin_property(property);
      cfg.seed = seed;
      if (estimator == "partition") {
        cfg.estimator = Estimator::partition_union;
        test_params.epsilon = cfg.epsilon;
        cfg.params = load_params(test, test_params);
      }
      manifest["params"] = {{"property", property}, {"epsilon", cfg.epsilon},
                            {"lambda", cfg.lambda},  {"d", cfg.d},
                            {"t", cfg.t},            {"samples", cfg.samples},
                            {"estimator", estimator}};
      const ReferenceFreqSet ref = build_reference_set(p, g.num_vertices(), cfg.d, cfg.t);
      if (ref.vectors.empty())
        throw Error(ErrorKind::EmptyProperty,
                    property + " has no members on " + std::to_string(g.num_vertices()) +
                        " vertices");
      QuerySession session(g);
      const TestVerdict v = universal_test(session, ref, cfg);
      json report = to_json(v);
      report["property"] = property;
      report["referenceVectors"] = ref.vectors.size();
      out = emit(report, v.accept ? 0 : kDomainFailure);
    } else if (cmd == stats) {
      const Multigraph g = load_graph(graph_path);
      const HsfParams params = load_params(stats, stats_params);
      manifest["params"] = to_json(params);
      json histogram = json::array();
      for (const auto &[degree, count] : degree_histogram(g))
        histogram.push_back({degree, count});
      const Multigraph truncated = truncate(g, params.delta);
      out = emit({{"n", g.num_vertices()},
                  {"m", g.num_edges()},
                  {"maxDegree", g.max_degree()},
                  {"clusterCoefficient", g.num_vertices() ? cluster_coefficient(g) : 0.0},
                  {"degreeHistogram", std::move(histogram)},
                  {"truncationRemoved", g.num_edges() - truncated.num_edges()},
                  {"sf", verify_sf(g, params.c, params.gamma).pass},
                  {"params", to_json(params)}});
    }
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
    case ErrorKind::ParseError:
    case ErrorKind::InvalidInput:
    case ErrorKind::InvalidVertex:
    case ErrorKind::InvalidIndex:
      return kUsageError;
    default:
      return kDomainFailure;
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainFailure;
  }

  std::cout << out.stdout_text << std::flush;
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  manifest["jobs"] = jobs;
  manifest["wallClockSeconds"] = seconds;
  manifest["outputDigest"] = hex64(fnv1a(out.stdout_text));
  std::cerr << json{{"manifest", manifest}}.dump() << "\n";
  return out.code;
}
