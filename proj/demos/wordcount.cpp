// Smallest possible tour of the map/reduce engine: count words.
// The same job runs at parallelism 1 and 8 and produces identical output.

#include <iostream>
#include <string>
#include <vector>

#include "mrminer/mapreduce.hpp"

int main() {
  using namespace mrminer;

  const std::vector<std::string> words = {"apple", "pear", "apple", "plum",
                                          "pear",  "apple", "fig"};

  JobSpec<std::string, std::string> job;
  job.splits = partition_input(words, 3);
  job.mapper = [](const std::string& word) {
    return std::vector<KeyValue<std::string>>{{word, 1}};
  };
  job.reducer = [](const std::string& word, const std::vector<std::uint64_t>& ones) {
    std::uint64_t total = 0;
    for (const auto v : ones) total += v;
    return KeyValue<std::string>{word, total};
  };

  const auto serial = run_job(job, 1);
  const auto threaded = run_job(job, 8);

  for (const auto& kv : serial.outputs) {
    std::cout << kv.key << ": " << kv.value << "\n";
  }
  bool same = serial.outputs.size() == threaded.outputs.size();
  for (std::size_t i = 0; same && i < serial.outputs.size(); ++i) {
    same = serial.outputs[i].key == threaded.outputs[i].key &&
           serial.outputs[i].value == threaded.outputs[i].value;
  }
  std::cout << "identical at parallelism 8: " << std::boolalpha << same << "\n";
  std::cout << "map tasks: " << serial.task_costs.size() << "\n";
  return 0;
}
