#pragma once

// A miniature, fully deterministic map/shuffle/reduce engine. Jobs run on an
// in-process worker pool; determinism comes from contiguous input splits,
// per-task output slots concatenated in task order, and a canonical key sort
// in the shuffle. The same job yields byte-identical results at any
// parallelism level.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <iterator>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace mrminer {

template <typename Record>
struct InputSplit {
  std::size_t index = 0;
  std::vector<Record> records;
};

/// Chops `records` into `num_splits` contiguous splits whose sizes differ by
/// at most one; the first (n mod num_splits) splits carry the extra record.
/// Splits may be empty when there are fewer records than splits.
template <typename Record>
std::vector<InputSplit<Record>> partition_input(std::vector<Record> records,
                                                std::size_t num_splits) {
  if (num_splits == 0) throw std::invalid_argument("partition_input: num_splits must be positive");
  std::vector<InputSplit<Record>> splits(num_splits);
  const std::size_t base = records.size() / num_splits;
  const std::size_t extra = records.size() % num_splits;
  auto cursor = std::make_move_iterator(records.begin());
  for (std::size_t i = 0; i < num_splits; ++i) {
    const std::size_t len = base + (i < extra ? 1 : 0);
    splits[i].index = i;
    splits[i].records.assign(cursor, cursor + static_cast<std::ptrdiff_t>(len));
    cursor += static_cast<std::ptrdiff_t>(len);
  }
  return splits;
}

template <typename Key>
struct KeyValue {
  Key key;
  std::uint64_t value = 0;
};

/// Groups emitted pairs by key (ordered by Key's operator<) and sorts each
/// key's value list ascending, so downstream reducers see a canonical view
/// no matter which map task produced which pair.
template <typename Key>
std::vector<std::pair<Key, std::vector<std::uint64_t>>> shuffle(
    const std::vector<KeyValue<Key>>& pairs) {
  std::map<Key, std::vector<std::uint64_t>> groups;
  for (const auto& kv : pairs) groups[kv.key].push_back(kv.value);
  std::vector<std::pair<Key, std::vector<std::uint64_t>>> out;
  out.reserve(groups.size());
  for (auto& [key, values] : groups) {
    std::sort(values.begin(), values.end());
    out.emplace_back(key, std::move(values));
  }
  return out;
}

enum class JobPhase { kMap, kReduce };

class JobError : public std::runtime_error {
 public:
  JobError(JobPhase phase, std::size_t task_id, const std::string& message)
      : std::runtime_error(message), phase_(phase), task_id_(task_id) {}

  JobPhase phase() const { return phase_; }
  std::size_t task_id() const { return task_id_; }

 private:
  JobPhase phase_;
  std::size_t task_id_;
};

struct TaskCost {
  std::size_t task_id = 0;
  std::uint64_t cost = 0;  // virtual units of work, not wall time
};

template <typename Record, typename Key>
struct JobSpec {
  std::function<std::vector<KeyValue<Key>>(const Record&)> mapper;
  std::function<KeyValue<Key>(const Key&, const std::vector<std::uint64_t>&)> reducer;
  std::vector<InputSplit<Record>> splits;
  /// Virtual cost charged to the map task owning a split. Defaults to the
  /// record count, which suits jobs whose per-record work is uniform.
  std::function<std::uint64_t(const InputSplit<Record>&)> cost_model;
};

template <typename Key>
struct JobResult {
  std::vector<KeyValue<Key>> outputs;    // in canonical key order
  std::vector<TaskCost> task_costs;      // one entry per map task
  std::vector<double> makespan_inputs;   // task costs in task order, ready for simulation
};

/// Runs one job: map (worker pool) -> shuffle -> reduce. One map task per
/// split. The reduce phase is a single logical task, mirroring a lone reducer
/// that receives every key. Map failures surface as a JobError naming the
/// lowest-numbered failing task, independent of thread scheduling.
template <typename Record, typename Key>
JobResult<Key> run_job(const JobSpec<Record, Key>& spec, std::size_t parallelism = 1) {
  if (!spec.mapper) throw std::invalid_argument("run_job: job has no mapper");
  if (!spec.reducer) throw std::invalid_argument("run_job: job has no reducer");
  if (parallelism == 0) throw std::invalid_argument("run_job: parallelism must be positive");

  const auto& splits = spec.splits;
  std::vector<std::vector<KeyValue<Key>>> map_outputs(splits.size());
  std::vector<std::optional<std::string>> map_errors(splits.size());
  std::atomic<std::size_t> next_task{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t task = next_task.fetch_add(1);
      if (task >= splits.size()) return;
      try {
        auto& slot = map_outputs[task];
        for (const Record& record : splits[task].records) {
          auto emitted = spec.mapper(record);
          slot.insert(slot.end(), std::make_move_iterator(emitted.begin()),
                      std::make_move_iterator(emitted.end()));
        }
      } catch (const std::exception& e) {
        map_errors[task] = e.what();
      } catch (...) {
        map_errors[task] = "unknown error";
      }
    }
  };

  if (parallelism == 1 || splits.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    const std::size_t workers = std::min(parallelism, splits.size());
    pool.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (std::size_t i = 0; i < map_errors.size(); ++i) {
    if (map_errors[i]) {
      throw JobError(JobPhase::kMap, i, "map task " + std::to_string(i) + ": " + *map_errors[i]);
    }
  }

  JobResult<Key> result;
  auto cost_of = spec.cost_model;
  if (!cost_of) {
    cost_of = [](const InputSplit<Record>& s) {
      return static_cast<std::uint64_t>(s.records.size());
    };
  }
  result.task_costs.reserve(splits.size());
  result.makespan_inputs.reserve(splits.size());
  for (const auto& split : splits) {
    const std::uint64_t cost = cost_of(split);
    result.task_costs.push_back({split.index, cost});
    result.makespan_inputs.push_back(static_cast<double>(cost));
  }

  std::vector<KeyValue<Key>> all_pairs;
  for (auto& slot : map_outputs) {
    all_pairs.insert(all_pairs.end(), std::make_move_iterator(slot.begin()),
                     std::make_move_iterator(slot.end()));
  }

  try {
    for (const auto& [key, values] : shuffle(all_pairs)) {
      result.outputs.push_back(spec.reducer(key, values));
    }
  } catch (const std::exception& e) {
    throw JobError(JobPhase::kReduce, 0, std::string("reduce task 0: ") + e.what());
  }
  return result;
}

}  // namespace mrminer
