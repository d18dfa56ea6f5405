// mrminer — command-line front end: generate synthetic transaction data,
// mine frequent itemsets with any counting strategy, sweep benchmarks to
// CSV, and compare cluster timing models.
//
// Exit codes: 0 success, 1 runtime/IO failure, 2 usage error.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mrminer/mrminer.hpp"

namespace {

using namespace mrminer;

/// Post-parse flag validation failures; mapped to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SupportFlags {
  std::optional<std::uint64_t> count;
  std::optional<double> fraction;

  void attach(CLI::App* cmd) {
    cmd->add_option("--min-sup-count", count, "Minimum support as an absolute transaction count");
    cmd->add_option("--min-sup-frac", fraction,
                    "Minimum support as a fraction of the database size, in (0, 1]");
  }

  SupportThreshold resolve() const {
    if (count.has_value() == fraction.has_value()) {
      throw UsageError("exactly one of --min-sup-count and --min-sup-frac is required");
    }
    if (count) return SupportThreshold::absolute_count(*count);
    if (!(*fraction > 0.0) || *fraction > 1.0) {
      throw UsageError("--min-sup-frac must be in (0, 1]");
    }
    return SupportThreshold::relative_fraction(*fraction);
  }
};

enum class Strategy { kSequential, kCandidateParallel, kDataParallel, kNaive };

const std::map<std::string, Strategy> kStrategyNames = {
    {"sequential", Strategy::kSequential},
    {"candidate-parallel", Strategy::kCandidateParallel},
    {"data-parallel", Strategy::kDataParallel},
    {"naive", Strategy::kNaive},
};

std::uint64_t elapsed_ms(std::chrono::steady_clock::time_point since) {
  const auto delta = std::chrono::steady_clock::now() - since;
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(delta).count());
}

ClusterConfig load_cluster(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  try {
    return read_cluster_config(in);
  } catch (const ParseError& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

/// Runs one mining pass. The trace is empty for the sequential strategy,
/// which runs outside the map/reduce engine.
MiningResult run_strategy(const TransactionDatabase& db, const SupportThreshold& threshold,
                          Strategy strategy, std::size_t splits, std::size_t parallelism,
                          const LevelSink& sink) {
  switch (strategy) {
    case Strategy::kSequential:
      return {apriori_sequential(db, threshold), {}};
    case Strategy::kCandidateParallel:
      return apriori_mapreduce(db, threshold, CountingStrategy::kCandidateParallel, splits,
                               parallelism, sink);
    case Strategy::kDataParallel:
      return apriori_mapreduce(db, threshold, CountingStrategy::kDataParallel, splits,
                               parallelism, sink);
    case Strategy::kNaive:
      return naive_all_subsets_mine(db, threshold, parallelism, kDefaultEnumerationCap, sink);
  }
  throw std::logic_error("unhandled strategy");
}

// ---------------------------------------------------------------- gen ----

struct GenArgs {
  GeneratorParams params;
  std::filesystem::path out;
};

int cmd_gen(const GenArgs& args) {
  try {
    args.params.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto db = generate_db(args.params);
  write_db(db, args.out);
  std::cout << "wrote " << db.size() << " transactions (" << args.params.num_items
            << " items, avg length " << args.params.avg_transaction_len << ", seed "
            << args.params.seed << ") to " << args.out.string() << "\n";
  return 0;
}

// --------------------------------------------------------------- mine ----

struct MineArgs {
  std::filesystem::path in;
  std::filesystem::path out;
  SupportFlags support;
  std::string strategy = "sequential";
  std::size_t splits = 1;
  std::size_t parallelism = 1;
  std::optional<std::filesystem::path> cluster;
  std::optional<std::filesystem::path> dump_levels;
};

int cmd_mine(const MineArgs& args) {
  const SupportThreshold threshold = args.support.resolve();
  const Strategy strategy = kStrategyNames.at(args.strategy);
  if (strategy == Strategy::kSequential && args.dump_levels) {
    throw UsageError("--dump-levels requires a map/reduce strategy");
  }
  if (strategy == Strategy::kSequential && args.cluster) {
    throw UsageError("--cluster requires a map/reduce strategy");
  }

  const auto started = std::chrono::steady_clock::now();
  const TransactionDatabase db = read_db(args.in);
  std::cout << "read " << db.size() << " transactions (" << db.universe().size()
            << " items) from " << args.in.string() << "\n";

  LevelSink sink;
  if (args.dump_levels) {
    std::filesystem::create_directories(*args.dump_levels);
    sink = [dir = *args.dump_levels](std::size_t level, const SupportCountTable& counts) {
      write_support_table(counts, dir / ("level-" + std::to_string(level) + ".txt"));
    };
  }

  MiningResult result =
      run_strategy(db, threshold, strategy, args.splits, args.parallelism, sink);

  std::optional<double> total_makespan;
  if (args.cluster) {
    const ClusterConfig cluster = load_cluster(*args.cluster);
    const auto data = replicated_data_per_node(db.size(), cluster.replication,
                                               cluster.nodes.size());
    total_makespan = annotate_makespans(result.trace, cluster, static_cast<double>(data));
  }

  write_results(result.frequent, args.out);

  for (const auto& rec : result.trace) {
    std::cout << "level " << rec.level << ": candidates " << rec.candidate_count
              << ", frequent " << rec.frequent_count << ", tasks " << rec.task_costs.size();
    if (rec.virtual_makespan) {
      std::cout << ", virtual_makespan " << to_decimal(*rec.virtual_makespan);
    }
    std::cout << "\n";
  }
  std::cout << "frequent itemsets: " << result.frequent.total_count() << " (largest size "
            << result.frequent.max_size() << ")\n";
  if (total_makespan) std::cout << "virtual_makespan " << to_decimal(*total_makespan) << "\n";
  std::cout << "wall_ms " << elapsed_ms(started) << "\n";
  std::cout << "wrote " << args.out.string() << "\n";
  return 0;
}

// -------------------------------------------------------------- bench ----

struct BenchArgs {
  std::vector<std::uint64_t> transactions;
  std::uint32_t items = 50;
  std::uint32_t avg_len = 8;
  std::uint64_t seed = 1;
  SupportFlags support;
  std::string strategy = "data-parallel";
  std::size_t splits = 1;
  std::size_t parallelism = 1;
  std::size_t nodes = 1;
  std::optional<std::filesystem::path> cluster;
  std::optional<std::filesystem::path> out;
};

int cmd_bench(const BenchArgs& args) {
  const SupportThreshold threshold = args.support.resolve();
  const Strategy strategy = kStrategyNames.at(args.strategy);
  if (args.nodes == 0) throw UsageError("--nodes must be positive");
  const ClusterConfig cluster =
      args.cluster ? load_cluster(*args.cluster) : ClusterConfig::uniform(args.nodes);

  std::string csv = "transactions,strategy,nodes,virtual_makespan,wall_ms,level_count,frequent_count\n";
  for (const std::uint64_t n : args.transactions) {
    GeneratorParams params;
    params.num_transactions = n;
    params.num_items = args.items;
    params.avg_transaction_len = args.avg_len;
    params.seed = args.seed;
    try {
      params.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    const TransactionDatabase db = generate_db(params);

    const auto started = std::chrono::steady_clock::now();
    MiningResult result =
        run_strategy(db, threshold, strategy, args.splits, args.parallelism, {});
    const std::uint64_t wall = elapsed_ms(started);

    double makespan = 0.0;
    if (!result.trace.empty()) {
      const auto data = replicated_data_per_node(db.size(), cluster.replication,
                                                 cluster.nodes.size());
      makespan = annotate_makespans(result.trace, cluster, static_cast<double>(data));
    }
    const std::size_t levels =
        result.trace.empty() ? result.frequent.max_size() : result.trace.size();

    csv += to_decimal(n) + "," + args.strategy + "," + to_decimal(cluster.nodes.size()) + "," +
           to_decimal(makespan) + "," + to_decimal(wall) + "," + to_decimal(levels) + "," +
           to_decimal(result.frequent.total_count()) + "\n";
    std::cerr << "transactions=" << n << " strategy=" << args.strategy
              << " tasks=" << total_tasks(result.trace)
              << " total_cost=" << total_cost(result.trace)
              << " levels=" << levels << " frequent=" << result.frequent.total_count() << "\n";
  }

  if (args.out) {
    auto out = detail::open_output(*args.out);
    out << csv;
    detail::finish_output(out, *args.out);
  } else {
    std::cout << csv;
  }
  return 0;
}

// --------------------------------------------------- compare-clusters ----

struct CompareArgs {
  std::filesystem::path hetero;
  std::filesystem::path homo;
  std::size_t tasks = 12;
  double task_cost = 1.0;
  double data_per_node = 0.0;
  double penalty = kDefaultCapacityPenalty;
  std::optional<std::filesystem::path> out;
};

int cmd_compare_clusters(const CompareArgs& args) {
  if (args.task_cost <= 0.0) throw UsageError("--task-cost must be positive");
  if (args.penalty <= 0.0) throw UsageError("--penalty must be positive");
  const ClusterConfig hetero = load_cluster(args.hetero);
  const ClusterConfig homo = load_cluster(args.homo);

  const std::vector<double> costs(args.tasks, args.task_cost);
  const TimingComparison cmp =
      compare_clusters(costs, hetero, homo, args.data_per_node, args.penalty);

  std::cout << "hetero_makespan " << to_decimal(cmp.hetero_makespan) << "\n";
  std::cout << "homo_makespan " << to_decimal(cmp.homo_makespan) << "\n";
  std::cout << "eta " << to_decimal(cmp.eta) << "\n";
  std::cout << "model_ln_n " << to_decimal(model_curve(homo.nodes.size())) << "\n";

  std::string csv = "cluster,nodes,virtual_makespan\n";
  csv += "hetero," + to_decimal(hetero.nodes.size()) + "," + to_decimal(cmp.hetero_makespan) + "\n";
  csv += "homo," + to_decimal(homo.nodes.size()) + "," + to_decimal(cmp.homo_makespan) + "\n";
  if (args.out) {
    auto out = detail::open_output(*args.out);
    out << csv;
    detail::finish_output(out, *args.out);
  } else {
    std::cout << csv;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frequent-itemset mining on a deterministic map/reduce engine"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic transaction database");
  gen_cmd->add_option("--transactions", gen.params.num_transactions, "Number of transactions")
      ->required();
  gen_cmd->add_option("--items", gen.params.num_items, "Universe size (items 0..N-1)");
  gen_cmd->add_option("--avg-len", gen.params.avg_transaction_len, "Mean transaction length");
  gen_cmd->add_option("--seed", gen.params.seed, "PRNG seed");
  gen_cmd->add_option("--out", gen.out, "Output database file")->required();

  MineArgs mine;
  auto* mine_cmd = app.add_subcommand("mine", "Mine frequent itemsets from a database file");
  mine_cmd->add_option("--in", mine.in, "Input database file")->required();
  mine_cmd->add_option("--out", mine.out, "Output results file")->required();
  mine.support.attach(mine_cmd);
  mine_cmd->add_option("--strategy", mine.strategy, "Counting strategy")
      ->check(CLI::IsMember({"sequential", "candidate-parallel", "data-parallel", "naive"}));
  mine_cmd->add_option("--splits", mine.splits, "Input splits for data-parallel counting")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 20));
  mine_cmd->add_option("--parallelism", mine.parallelism, "Worker threads for map tasks")
      ->check(CLI::Range(std::size_t{1}, std::size_t{4096}));
  mine_cmd->add_option("--cluster", mine.cluster,
                       "Cluster config file; adds virtual timing to the report");
  mine_cmd->add_option("--dump-levels", mine.dump_levels,
                       "Directory for per-level candidate count files (level-<k>.txt)");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Sweep database sizes and emit a CSV timing table");
  bench_cmd->add_option("--transactions-list", bench.transactions,
                        "Comma-separated database sizes to sweep")
      ->required()
      ->delimiter(',');
  bench_cmd->add_option("--items", bench.items, "Universe size");
  bench_cmd->add_option("--avg-len", bench.avg_len, "Mean transaction length");
  bench_cmd->add_option("--seed", bench.seed, "PRNG seed");
  bench.support.attach(bench_cmd);
  bench_cmd->add_option("--strategy", bench.strategy, "Counting strategy")
      ->check(CLI::IsMember({"sequential", "candidate-parallel", "data-parallel", "naive"}));
  bench_cmd->add_option("--splits", bench.splits, "Input splits for data-parallel counting")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 20));
  bench_cmd->add_option("--parallelism", bench.parallelism, "Worker threads for map tasks")
      ->check(CLI::Range(std::size_t{1}, std::size_t{4096}));
  bench_cmd->add_option("--nodes", bench.nodes, "Simulate a uniform cluster of this many nodes");
  bench_cmd->add_option("--cluster", bench.cluster, "Cluster config file (overrides --nodes)");
  bench_cmd->add_option("--out", bench.out, "CSV output file (default: stdout)");

  CompareArgs cmp;
  auto* cmp_cmd = app.add_subcommand("compare-clusters",
                                     "Simulate one workload on two clusters and report the ratio");
  cmp_cmd->add_option("--hetero", cmp.hetero, "Heterogeneous cluster config file")->required();
  cmp_cmd->add_option("--homo", cmp.homo, "Homogeneous cluster config file")->required();
  cmp_cmd->add_option("--tasks", cmp.tasks, "Number of equal-cost tasks in the workload");
  cmp_cmd->add_option("--task-cost", cmp.task_cost, "Virtual cost of each task");
  cmp_cmd->add_option("--data-per-node", cmp.data_per_node, "Stored data per node");
  cmp_cmd->add_option("--penalty", cmp.penalty, "Speed divisor for over-capacity nodes");
  cmp_cmd->add_option("--out", cmp.out, "CSV output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen);
    if (mine_cmd->parsed()) return cmd_mine(mine);
    if (bench_cmd->parsed()) return cmd_bench(bench);
    if (cmp_cmd->parsed()) return cmd_compare_clusters(cmp);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
