#pragma once

// Virtual-time model of a small compute cluster. Tasks carry abstract costs;
// nodes have relative speeds and optional storage capacities. Scheduling is
// longest-processing-time list scheduling with fully specified tie-breaks,
// so simulated makespans are exactly reproducible.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "mrminer/errors.hpp"

namespace mrminer {

/// Divisor applied to a node's speed when its stored data exceeds capacity.
inline constexpr double kDefaultCapacityPenalty = 4.0;

struct NodeProfile {
  std::string name;
  double speed = 1.0;
  double capacity = 0.0;  // storage units; 0 means unlimited
};

struct ClusterConfig {
  std::vector<NodeProfile> nodes;
  std::uint64_t replication = 1;  // copies kept of each stored record

  static ClusterConfig uniform(std::size_t num_nodes, double speed = 1.0,
                               double capacity = 0.0) {
    ClusterConfig cfg;
    cfg.nodes.reserve(num_nodes);
    for (std::size_t i = 0; i < num_nodes; ++i) {
      cfg.nodes.push_back({"node" + std::to_string(i), speed, capacity});
    }
    cfg.validate();
    return cfg;
  }

  void validate() const {
    if (nodes.empty()) throw std::invalid_argument("cluster has no nodes");
    if (replication == 0) throw std::invalid_argument("replication must be positive");
    if (replication > nodes.size()) {
      throw std::invalid_argument("replication exceeds node count");
    }
    for (const auto& node : nodes) {
      if (!(node.speed > 0.0)) {
        throw std::invalid_argument("node '" + node.name + "' has non-positive speed");
      }
      if (node.capacity < 0.0) {
        throw std::invalid_argument("node '" + node.name + "' has negative capacity");
      }
    }
  }
};

/// Storage charged to each node when `total_records` are kept with the given
/// replication factor across `num_nodes` nodes (rounded up).
inline std::uint64_t replicated_data_per_node(std::uint64_t total_records,
                                              std::uint64_t replication,
                                              std::size_t num_nodes) {
  if (num_nodes == 0) throw std::invalid_argument("replicated_data_per_node: no nodes");
  if (replication == 0) throw std::invalid_argument("replicated_data_per_node: replication must be positive");
  const unsigned __int128 total =
      static_cast<unsigned __int128>(total_records) * replication;
  return static_cast<std::uint64_t>((total + num_nodes - 1) / num_nodes);
}

/// Schedules `task_costs` onto the cluster with LPT list scheduling: tasks in
/// descending cost (ties by original position), each placed on the node with
/// the earliest resulting completion time (ties by lowest node index). A node
/// holding more data than its capacity runs at speed/capacity_penalty.
/// Returns the virtual makespan.
inline double simulate_makespan(const std::vector<double>& task_costs,
                                const ClusterConfig& cluster,
                                double data_per_node = 0.0,
                                double capacity_penalty = kDefaultCapacityPenalty) {
  cluster.validate();
  if (!(capacity_penalty > 0.0)) {
    throw std::invalid_argument("simulate_makespan: capacity penalty must be positive");
  }
  for (const double cost : task_costs) {
    if (cost < 0.0) throw std::invalid_argument("simulate_makespan: negative task cost");
  }

  std::vector<double> effective_speed;
  effective_speed.reserve(cluster.nodes.size());
  for (const auto& node : cluster.nodes) {
    const bool overloaded = node.capacity > 0.0 && data_per_node > node.capacity;
    effective_speed.push_back(overloaded ? node.speed / capacity_penalty : node.speed);
  }

  std::vector<std::size_t> order(task_costs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return task_costs[a] > task_costs[b];
  });

  std::vector<double> available(cluster.nodes.size(), 0.0);
  for (const std::size_t task : order) {
    std::size_t best = 0;
    double best_completion = available[0] + task_costs[task] / effective_speed[0];
    for (std::size_t i = 1; i < available.size(); ++i) {
      const double completion = available[i] + task_costs[task] / effective_speed[i];
      if (completion < best_completion) {
        best = i;
        best_completion = completion;
      }
    }
    available[best] = best_completion;
  }
  return *std::max_element(available.begin(), available.end());
}

struct TimingComparison {
  double hetero_makespan = 0.0;
  double homo_makespan = 0.0;
  double eta = 1.0;  // hetero / homo
};

/// Runs the same task list on both clusters and reports the slowdown ratio
/// of the heterogeneous one. Two idle clusters compare equal (eta 1);
/// a zero homogeneous makespan against real heterogeneous work is undefined.
inline TimingComparison compare_clusters(const std::vector<double>& task_costs,
                                         const ClusterConfig& hetero,
                                         const ClusterConfig& homo,
                                         double data_per_node = 0.0,
                                         double capacity_penalty = kDefaultCapacityPenalty) {
  TimingComparison out;
  out.hetero_makespan = simulate_makespan(task_costs, hetero, data_per_node, capacity_penalty);
  out.homo_makespan = simulate_makespan(task_costs, homo, data_per_node, capacity_penalty);
  if (out.homo_makespan == 0.0) {
    if (out.hetero_makespan == 0.0) {
      out.eta = 1.0;
      return out;
    }
    throw std::domain_error("compare_clusters: homogeneous makespan is zero");
  }
  out.eta = out.hetero_makespan / out.homo_makespan;
  return out;
}

/// Reference curve for how the slowdown ratio scales with cluster size:
/// the natural log of the node count.
inline double model_curve(std::size_t num_nodes) {
  if (num_nodes == 0) throw std::invalid_argument("model_curve: node count must be positive");
  return std::log(static_cast<double>(num_nodes));
}

namespace detail {

inline double parse_positive_double(const std::string& token, std::size_t line,
                                    const char* what, bool allow_zero) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = first + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || std::isnan(value) || std::isinf(value) ||
      value < 0.0 || (!allow_zero && value == 0.0)) {
    throw ParseError(line, std::string("invalid ") + what + " '" + token + "'");
  }
  return value;
}

}  // namespace detail

/// Reads a cluster description: one node per line as `name speed capacity`,
/// plus an optional single `replication <factor>` line. Blank lines and lines
/// starting with '#' are skipped. Speeds must be positive; capacity 0 means
/// unlimited.
inline ClusterConfig read_cluster_config(std::istream& in) {
  ClusterConfig cfg;
  bool replication_seen = false;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::vector<std::string> tokens;
    std::string current;
    for (const char c : line) {
      if (c == ' ' || c == '\t' || c == '\r') {
        if (!current.empty()) tokens.push_back(std::move(current));
        current.clear();
      } else {
        current.push_back(c);
      }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    if (tokens.empty() || tokens.front().front() == '#') continue;

    if (tokens.front() == "replication") {
      if (tokens.size() != 2) throw ParseError(line_number, "expected 'replication <factor>'");
      if (replication_seen) throw ParseError(line_number, "duplicate replication line");
      std::uint64_t factor = 0;
      const auto& token = tokens[1];
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), factor);
      if (ec != std::errc{} || ptr != token.data() + token.size() || factor == 0) {
        throw ParseError(line_number, "invalid replication factor '" + token + "'");
      }
      cfg.replication = factor;
      replication_seen = true;
      continue;
    }

    if (tokens.size() != 3) throw ParseError(line_number, "expected 'name speed capacity'");
    NodeProfile node;
    node.name = tokens[0];
    node.speed = detail::parse_positive_double(tokens[1], line_number, "speed", false);
    node.capacity = detail::parse_positive_double(tokens[2], line_number, "capacity", true);
    cfg.nodes.push_back(std::move(node));
  }
  cfg.validate();
  return cfg;
}

}  // namespace mrminer
