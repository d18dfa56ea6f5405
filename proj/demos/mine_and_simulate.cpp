// End-to-end tour: generate a synthetic database, mine it with the
// data-parallel strategy, then replay the per-level task costs on a
// homogeneous and a heterogeneous cluster of equal total speed.

#include <iostream>

#include "mrminer/mrminer.hpp"

int main() {
  using namespace mrminer;

  GeneratorParams params;
  params.num_transactions = 5000;
  params.num_items = 30;
  params.avg_transaction_len = 6;
  params.seed = 7;
  const TransactionDatabase db = generate_db(params);

  const auto threshold = SupportThreshold::relative_fraction(0.05);
  MiningResult result =
      apriori_mapreduce(db, threshold, CountingStrategy::kDataParallel, /*num_splits=*/6,
                        /*parallelism=*/4);

  std::cout << "mined " << result.frequent.total_count() << " frequent itemsets in "
            << result.trace.size() << " levels\n";

  ClusterConfig homo = ClusterConfig::uniform(3, 2.0);
  ClusterConfig hetero;
  hetero.nodes = {{"fast", 4.0, 0.0}, {"mid", 1.5, 0.0}, {"slow", 0.5, 0.0}};

  LevelTrace on_homo = result.trace;
  LevelTrace on_hetero = result.trace;
  const double homo_time = annotate_makespans(on_homo, homo);
  const double hetero_time = annotate_makespans(on_hetero, hetero);

  std::cout << "homogeneous (2+2+2):   " << homo_time << " virtual time units\n";
  std::cout << "heterogeneous (4+1.5+0.5): " << hetero_time << " virtual time units\n";
  std::cout << "slowdown ratio: " << hetero_time / homo_time
            << " (log-of-nodes reference: " << model_curve(homo.nodes.size()) << ")\n";
  return 0;
}
