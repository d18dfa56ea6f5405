#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <sstream>

#include "mrminer/cluster.hpp"

using namespace mrminer;

namespace {

ClusterConfig cluster_of(std::vector<double> speeds, double capacity = 0.0) {
  ClusterConfig cfg;
  for (std::size_t i = 0; i < speeds.size(); ++i) {
    cfg.nodes.push_back({"n" + std::to_string(i), speeds[i], capacity});
  }
  return cfg;
}

}  // namespace

TEST_CASE("cluster validation") {
  CHECK_THROWS_AS(ClusterConfig{}.validate(), std::invalid_argument);
  CHECK_THROWS_AS(cluster_of({1.0, 0.0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(cluster_of({1.0, -2.0}).validate(), std::invalid_argument);
  auto bad_cap = cluster_of({1.0});
  bad_cap.nodes[0].capacity = -1.0;
  CHECK_THROWS_AS(bad_cap.validate(), std::invalid_argument);
  auto zero_rep = cluster_of({1.0});
  zero_rep.replication = 0;
  CHECK_THROWS_AS(zero_rep.validate(), std::invalid_argument);
  auto over_rep = cluster_of({1.0, 1.0});
  over_rep.replication = 3;  // more copies than nodes
  CHECK_THROWS_AS(over_rep.validate(), std::invalid_argument);
  CHECK_NOTHROW(ClusterConfig::uniform(3).validate());
  CHECK(ClusterConfig::uniform(4, 2.0, 7.0).nodes[3].speed == 2.0);
}

TEST_CASE("makespan of simple workloads") {
  CHECK(simulate_makespan({6, 6, 6}, ClusterConfig::uniform(3)) == 6.0);
  CHECK(simulate_makespan({6, 6, 6}, cluster_of({2, 1, 1})) == 6.0);
  // single node: total work divided by speed
  CHECK(simulate_makespan({3, 1, 2}, cluster_of({2})) == 3.0);
  CHECK(simulate_makespan({}, ClusterConfig::uniform(4)) == 0.0);
}

TEST_CASE("scheduling follows longest-first with stated tie-breaks") {
  // costs sorted descending: 4,3,3,1; two unit-speed nodes
  // 4->n0(4), 3->n1(3), 3->n1? n0 done 7 vs n1 6 -> n1(6), 1->n0? 5 vs 7 -> n0(5)
  CHECK(simulate_makespan({3, 1, 4, 3}, ClusterConfig::uniform(2)) == 6.0);
  // equal costs tie-break by original index; equal completions pick node 0 first
  CHECK(simulate_makespan({2, 2}, ClusterConfig::uniform(2)) == 2.0);
}

TEST_CASE("makespan input validation") {
  CHECK_THROWS_AS(simulate_makespan({-1.0}, ClusterConfig::uniform(1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(simulate_makespan({1.0}, ClusterConfig{}), std::invalid_argument);
  CHECK_THROWS_AS(simulate_makespan({1.0}, ClusterConfig::uniform(1), 0.0, 0.0),
                  std::invalid_argument);
}

TEST_CASE("capacity overflow slows a node by the penalty divisor") {
  const auto node = cluster_of({4.0}, 10.0);
  CHECK(simulate_makespan({8}, node, 5.0) == 2.0);    // within capacity: 8/4
  CHECK(simulate_makespan({8}, node, 20.0) == 8.0);   // over: speed 4/4=1
  CHECK(simulate_makespan({8}, node, 20.0, 2.0) == 4.0);  // custom penalty
  // capacity 0 means unlimited
  CHECK(simulate_makespan({8}, cluster_of({4.0}, 0.0), 1e9) == 2.0);
}

TEST_CASE("simulation is deterministic") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> costs(1 + rng() % 20);
    for (auto& c : costs) c = static_cast<double>(1 + rng() % 50) / 4.0;
    const auto cfg = cluster_of({1.25, 3.0, 0.5, 2.0});
    CHECK(simulate_makespan(costs, cfg) == simulate_makespan(costs, cfg));
  }
}

TEST_CASE("work conservation bounds hold", "[property]") {
  std::mt19937_64 rng(613);
  for (int trial = 0; trial < 3000; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    std::vector<double> speeds(n);
    double total_speed = 0, min_speed = 1e300;
    for (auto& s : speeds) {
      s = static_cast<double>(1 + rng() % 16) / 4.0;
      total_speed += s;
      min_speed = std::min(min_speed, s);
    }
    std::vector<double> costs(1 + rng() % 12);
    double total_cost = 0;
    for (auto& c : costs) {
      c = static_cast<double>(1 + rng() % 20);
      total_cost += c;
    }
    const double makespan = simulate_makespan(costs, cluster_of(speeds));
    CAPTURE(trial, n, costs.size());
    CHECK(makespan >= total_cost / total_speed - 1e-9);
    CHECK(makespan <= total_cost / min_speed + 1e-9);
  }
}

TEST_CASE("adding a node never increases the makespan", "[property]") {
  std::mt19937_64 rng(1789);
  for (int trial = 0; trial < 3000; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    const bool uniform = trial % 2 == 0;
    const double base = static_cast<double>(1 + rng() % 8);
    std::vector<double> speeds(n);
    for (auto& s : speeds) {
      s = uniform ? base : static_cast<double>(1 + rng() % 16) / 4.0;
    }
    std::vector<double> costs(1 + rng() % 10);
    for (auto& c : costs) c = static_cast<double>(1 + rng() % 12);

    const double before = simulate_makespan(costs, cluster_of(speeds));
    auto grown = speeds;
    grown.push_back(uniform ? base : static_cast<double>(1 + rng() % 16) / 4.0);
    const double after = simulate_makespan(costs, cluster_of(grown));
    CAPTURE(trial, uniform, n);
    CHECK(after <= before + 1e-12);
  }
}

TEST_CASE("scaling all speeds by a power of two scales time exactly", "[property]") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    std::vector<double> speeds(n);
    for (auto& s : speeds) s = static_cast<double>(1 + rng() % 16) / 4.0;
    std::vector<double> costs(1 + rng() % 12);
    for (auto& c : costs) c = static_cast<double>(1 + rng() % 9);
    const double base = simulate_makespan(costs, cluster_of(speeds));
    for (const double factor : {2.0, 4.0, 0.5}) {
      auto scaled = speeds;
      for (auto& s : scaled) s *= factor;
      CAPTURE(trial, factor);
      CHECK(simulate_makespan(costs, cluster_of(scaled)) == base / factor);
    }
  }
}

TEST_CASE("equal-speed budget: heterogeneity never helps on balanced workloads",
          "[property]") {
  // Workload sizes are multiples of the node count; the homogeneous cluster
  // then meets the work-conserving lower bound, so any unequal speed split
  // with the same total can only tie or lose.
  std::mt19937_64 rng(905);
  for (int trial = 0; trial < 3000; ++trial) {
    const std::size_t n = 2 + rng() % 4;
    std::vector<double> speeds(n);
    double total = 0;
    for (auto& s : speeds) {
      s = static_cast<double>(1 + rng() % 16);
      total += s;
    }
    const std::size_t tasks = n * (2 + rng() % 9);
    const std::vector<double> costs(tasks, static_cast<double>(1 + rng() % 9));
    const auto comparison =
        compare_clusters(costs, cluster_of(speeds), ClusterConfig::uniform(n, total / n));
    CAPTURE(trial, n, tasks);
    CHECK(comparison.eta >= 1.0 - 1e-12);
  }
}

TEST_CASE("cluster comparison goldens") {
  SECTION("identical clusters tie exactly") {
    const auto cmp = compare_clusters({5, 1, 3}, cluster_of({2, 1}), cluster_of({2, 1}));
    CHECK(cmp.eta == 1.0);
    CHECK(cmp.hetero_makespan == cmp.homo_makespan);
  }
  SECTION("spread speeds 0.5/1/1.5 on 12 unit tasks tie the uniform cluster") {
    const auto cmp = compare_clusters(std::vector<double>(12, 1.0),
                                      cluster_of({0.5, 1.0, 1.5}), ClusterConfig::uniform(3));
    CHECK(cmp.hetero_makespan == 4.0);
    CHECK(cmp.homo_makespan == 4.0);
    CHECK(cmp.eta == 1.0);
  }
  SECTION("sharply skewed speeds lose") {
    const auto cmp = compare_clusters(std::vector<double>(6, 1.0),
                                      cluster_of({2.8, 0.1, 0.1}), ClusterConfig::uniform(3));
    CHECK(cmp.homo_makespan == 2.0);
    CHECK_THAT(cmp.hetero_makespan, Catch::Matchers::WithinAbs(15.0 / 7.0, 1e-12));
    CHECK_THAT(cmp.eta, Catch::Matchers::WithinAbs(15.0 / 14.0, 1e-12));
    CHECK(cmp.eta > 1.0);
  }
  SECTION("empty workload defines eta as 1") {
    const auto cmp = compare_clusters({}, cluster_of({1, 2}), cluster_of({3}));
    CHECK(cmp.hetero_makespan == 0.0);
    CHECK(cmp.homo_makespan == 0.0);
    CHECK(cmp.eta == 1.0);
  }
}

TEST_CASE("capacity pressure strictly raises the makespan") {
  const auto cfg = cluster_of({1, 1, 1}, 100.0);
  const std::vector<double> costs = {5, 7, 3, 9, 2, 6};
  const double free_run = simulate_makespan(costs, cfg, 80.0);
  const double squeezed = simulate_makespan(costs, cfg, 150.0);
  CHECK(squeezed > free_run);
  CHECK(squeezed == 4.0 * free_run);  // every node slowed by the default divisor
}

TEST_CASE("model curve is ln of the node count") {
  CHECK(model_curve(1) == 0.0);
  CHECK_THAT(model_curve(3), Catch::Matchers::WithinAbs(1.0986, 1e-4));
  CHECK(model_curve(2) < 1.0);
  CHECK(1.0 < model_curve(3));
  for (std::size_t n = 1; n < 10; ++n) CHECK(model_curve(n) < model_curve(n + 1));
  CHECK_THROWS_AS(model_curve(0), std::invalid_argument);
}

TEST_CASE("replicated storage accounting rounds up") {
  CHECK(replicated_data_per_node(100000, 1, 4) == 25000);
  CHECK(replicated_data_per_node(10, 3, 4) == 8);  // ceil(30/4)
  CHECK(replicated_data_per_node(0, 3, 4) == 0);
  // no overflow near the top of the range
  CHECK(replicated_data_per_node(std::uint64_t{1} << 62, 4, 2) == std::uint64_t{1} << 63);
  CHECK_THROWS_AS(replicated_data_per_node(1, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(replicated_data_per_node(1, 0, 1), std::invalid_argument);
}

TEST_CASE("cluster config files parse") {
  std::istringstream in(
      "# three nodes, one fast\n"
      "replication 2\n"
      "\n"
      "alpha 2.5 100\n"
      "beta 1 0\n"
      "gamma 0.5 80\n");
  const auto cfg = read_cluster_config(in);
  CHECK(cfg.replication == 2);
  REQUIRE(cfg.nodes.size() == 3);
  CHECK(cfg.nodes[0].name == "alpha");
  CHECK(cfg.nodes[0].speed == 2.5);
  CHECK(cfg.nodes[0].capacity == 100.0);
  CHECK(cfg.nodes[1].capacity == 0.0);
  CHECK(cfg.nodes[2].speed == 0.5);
}

TEST_CASE("cluster config errors carry line numbers") {
  auto expect_parse_error = [](const std::string& text, std::size_t line,
                               const std::string& needle) {
    std::istringstream in(text);
    try {
      read_cluster_config(in);
      FAIL("expected ParseError for: " << text);
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
      CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring(needle));
    }
  };
  expect_parse_error("alpha 1\n", 1, "name speed capacity");
  expect_parse_error("# ok\nalpha fast 0\n", 2, "speed");
  expect_parse_error("alpha 0 0\n", 1, "speed");
  expect_parse_error("alpha 1 -3\n", 1, "capacity");
  expect_parse_error("replication x\n", 1, "replication");
  expect_parse_error("replication 0\n", 1, "replication");
  expect_parse_error("replication 2\nreplication 2\nalpha 1 0\n", 2, "duplicate");
  expect_parse_error("replication 2 3\n", 1, "replication");

  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(read_cluster_config(empty), std::invalid_argument);
  std::istringstream over("replication 2\nonly 1 0\n");
  CHECK_THROWS_AS(read_cluster_config(over), std::invalid_argument);
}
