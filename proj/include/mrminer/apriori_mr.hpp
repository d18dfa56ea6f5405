#pragma once

// Apriori expressed as map/reduce jobs: one counting job per level. Two task
// layouts are supported — candidate-parallel (a task per candidate scanning
// the whole database) and data-parallel count distribution (a task per
// database chunk counting all candidates locally) — plus a naive miner that
// counts every subset of the universe in a single job.

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mrminer/cluster.hpp"
#include "mrminer/mapreduce.hpp"
#include "mrminer/mining.hpp"

namespace mrminer {

enum class CountingStrategy {
  kCandidateParallel,  // one map task per candidate, each scanning the full db
  kDataParallel,       // one map task per db chunk, counting all candidates
};

inline const char* to_string(CountingStrategy strategy) {
  switch (strategy) {
    case CountingStrategy::kCandidateParallel:
      return "candidate-parallel";
    case CountingStrategy::kDataParallel:
      return "data-parallel";
  }
  throw std::invalid_argument("unknown counting strategy");
}

/// Per-level accounting for one mining run. `level` is the itemset size the
/// job counted; the naive miner uses level 0 for its single all-sizes job.
struct LevelRecord {
  std::size_t level = 0;
  std::size_t candidate_count = 0;
  std::size_t frequent_count = 0;
  std::vector<TaskCost> task_costs;
  std::optional<double> virtual_makespan;  // set once simulated on a cluster
};

using LevelTrace = std::vector<LevelRecord>;

inline std::size_t total_tasks(const LevelTrace& trace) {
  std::size_t total = 0;
  for (const auto& rec : trace) total += rec.task_costs.size();
  return total;
}

inline std::uint64_t total_cost(const LevelTrace& trace) {
  std::uint64_t total = 0;
  for (const auto& rec : trace) {
    for (const auto& tc : rec.task_costs) total += tc.cost;
  }
  return total;
}

/// Simulates every level's tasks on `cluster` (levels are sequential
/// barriers), stores per-level makespans in the trace, and returns their sum.
inline double annotate_makespans(LevelTrace& trace, const ClusterConfig& cluster,
                                 double data_per_node = 0.0,
                                 double capacity_penalty = kDefaultCapacityPenalty) {
  double total = 0.0;
  for (auto& rec : trace) {
    std::vector<double> costs;
    costs.reserve(rec.task_costs.size());
    for (const auto& tc : rec.task_costs) costs.push_back(static_cast<double>(tc.cost));
    const double makespan = simulate_makespan(costs, cluster, data_per_node, capacity_penalty);
    rec.virtual_makespan = makespan;
    total += makespan;
  }
  return total;
}

/// Observer invoked after each level's counting job with the complete count
/// table (frequent or not) — the in-memory stand-in for intermediate files.
using LevelSink = std::function<void(std::size_t level, const SupportCountTable& counts)>;

struct CandidateCounts {
  SupportCountTable counts;  // exact global support for every candidate
  std::vector<TaskCost> task_costs;
};

/// Counts all candidates in one map/reduce job. Both strategies return
/// identical tables; they differ only in task structure and cost profile.
inline CandidateCounts count_candidates_mr(const TransactionDatabase& db,
                                           const std::vector<Itemset>& candidates,
                                           CountingStrategy strategy, std::size_t num_splits,
                                           std::size_t parallelism) {
  if (candidates.empty()) throw std::invalid_argument("count_candidates_mr: no candidates");
  if (num_splits == 0) throw std::invalid_argument("count_candidates_mr: num_splits must be positive");

  std::vector<Itemset> unique(candidates);
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  for (const auto& candidate : unique) {
    if (candidate.empty()) throw std::invalid_argument("count_candidates_mr: empty candidate");
  }

  const auto sum_reducer = [](const Itemset& key, const std::vector<std::uint64_t>& values) {
    std::uint64_t total = 0;
    for (const std::uint64_t v : values) total += v;
    return KeyValue<Itemset>{key, total};
  };

  JobResult<Itemset> result;
  if (strategy == CountingStrategy::kCandidateParallel) {
    JobSpec<Itemset, Itemset> spec;
    const std::size_t num_tasks = unique.size();
    spec.splits = partition_input(std::move(unique), num_tasks);
    spec.mapper = [&db](const Itemset& candidate) {
      return std::vector<KeyValue<Itemset>>{{candidate, support_count(db, candidate)}};
    };
    spec.reducer = sum_reducer;
    spec.cost_model = [scans = static_cast<std::uint64_t>(db.size())](
                          const InputSplit<Itemset>& split) {
      return static_cast<std::uint64_t>(split.records.size()) * scans;
    };
    result = run_job(spec, parallelism);
  } else {
    using Chunk = std::vector<Transaction>;
    std::vector<Chunk> chunks;
    chunks.reserve(num_splits);
    for (auto& split : partition_input(db.transactions(), num_splits)) {
      chunks.push_back(std::move(split.records));
    }
    JobSpec<Chunk, Itemset> spec;
    spec.splits = partition_input(std::move(chunks), num_splits);
    spec.mapper = [&unique](const Chunk& chunk) {
      std::vector<KeyValue<Itemset>> out;
      out.reserve(unique.size());
      for (const auto& candidate : unique) {
        std::uint64_t local = 0;
        for (const auto& t : chunk) local += t.contains_all(candidate) ? 1 : 0;
        out.push_back({candidate, local});
      }
      return out;
    };
    spec.reducer = sum_reducer;
    spec.cost_model = [comparisons = static_cast<std::uint64_t>(unique.size())](
                          const InputSplit<Chunk>& split) {
      std::uint64_t records = 0;
      for (const auto& chunk : split.records) records += chunk.size();
      return records * comparisons;
    };
    result = run_job(spec, parallelism);
  }

  CandidateCounts out;
  out.task_costs = std::move(result.task_costs);
  for (auto& kv : result.outputs) out.counts.emplace(std::move(kv.key), kv.value);
  return out;
}

struct MiningResult {
  FrequentItemsets frequent;
  LevelTrace trace;
};

/// Level-wise Apriori where each level's support counting runs as one
/// map/reduce job. Output is identical to apriori_sequential; the trace
/// records per-level task structure and virtual costs.
inline MiningResult apriori_mapreduce(const TransactionDatabase& db,
                                      const SupportThreshold& threshold,
                                      CountingStrategy strategy, std::size_t num_splits = 1,
                                      std::size_t parallelism = 1,
                                      const LevelSink& level_sink = {}) {
  MiningResult out;
  if (db.empty()) return out;
  const std::uint64_t min_count = threshold.to_absolute(db.size());

  std::vector<Itemset> candidates;
  candidates.reserve(db.universe().size());
  for (const ItemId id : db.universe()) candidates.push_back(Itemset::single(id));

  for (std::size_t k = 1; !candidates.empty(); ++k) {
    auto counted = count_candidates_mr(db, candidates, strategy, num_splits, parallelism);
    if (level_sink) level_sink(k, counted.counts);

    LevelRecord rec;
    rec.level = k;
    rec.candidate_count = candidates.size();
    rec.task_costs = std::move(counted.task_costs);

    std::vector<Itemset> frequent;
    for (const auto& [itemset, count] : counted.counts) {
      if (count >= min_count) {
        out.frequent.insert(itemset, count);
        frequent.push_back(itemset);
      }
    }
    rec.frequent_count = frequent.size();
    out.trace.push_back(std::move(rec));
    candidates = generate_candidates(frequent);
  }
  return out;
}

/// The exhaustive miner: every non-empty subset of the universe becomes one
/// candidate-parallel map task in a single job, so the task count is exactly
/// 2^m - 1 for an m-item universe. Results match the level-wise miners; the
/// cost is what makes it interesting.
inline MiningResult naive_all_subsets_mine(const TransactionDatabase& db,
                                           const SupportThreshold& threshold,
                                           std::size_t parallelism = 1,
                                           std::size_t cap = kDefaultEnumerationCap,
                                           const LevelSink& level_sink = {}) {
  MiningResult out;
  if (db.empty()) return out;
  const std::uint64_t min_count = threshold.to_absolute(db.size());
  const std::vector<Itemset> candidates = enumerate_all_subsets(db.universe(), cap);
  auto counted =
      count_candidates_mr(db, candidates, CountingStrategy::kCandidateParallel, 1, parallelism);
  if (level_sink) level_sink(0, counted.counts);

  LevelRecord rec;
  rec.level = 0;
  rec.candidate_count = candidates.size();
  rec.task_costs = std::move(counted.task_costs);
  for (const auto& [itemset, count] : counted.counts) {
    if (count >= min_count) {
      out.frequent.insert(itemset, count);
      ++rec.frequent_count;
    }
  }
  out.trace.push_back(std::move(rec));
  return out;
}

}  // namespace mrminer
