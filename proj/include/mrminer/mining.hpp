#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "mrminer/itemset.hpp"

namespace mrminer {

/// Hard ceiling for exhaustive subset enumeration (2^24 - 1 itemsets).
inline constexpr std::size_t kDefaultEnumerationCap = 24;

enum class CountMode {
  kContainment,  // candidate is a subset of the transaction (standard Apriori)
  kExactMatch,   // transaction equals the candidate exactly
};

/// Number of transactions supporting `candidate` under the given mode.
inline std::uint64_t support_count(const TransactionDatabase& db, const Itemset& candidate,
                                   CountMode mode = CountMode::kContainment) {
  if (candidate.empty()) throw std::invalid_argument("support_count: empty candidate");
  std::uint64_t count = 0;
  for (const auto& t : db.transactions()) {
    const bool hit =
        mode == CountMode::kContainment ? t.contains_all(candidate) : t == candidate;
    count += hit ? 1 : 0;
  }
  return count;
}

/// All 2^m - 1 non-empty subsets of an m-item universe, ordered by
/// (size, lexicographic). Refuses universes larger than `cap` items.
inline std::vector<Itemset> enumerate_all_subsets(const Itemset& universe,
                                                  std::size_t cap = kDefaultEnumerationCap) {
  const std::size_t m = universe.size();
  if (m > cap) {
    throw std::length_error("enumerate_all_subsets: universe too large for exhaustive enumeration");
  }
  std::vector<Itemset> out;
  if (m == 0) return out;
  out.reserve((std::size_t{1} << m) - 1);
  const auto& ids = universe.items();
  std::vector<std::size_t> idx;
  for (std::size_t k = 1; k <= m; ++k) {
    idx.resize(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
      std::vector<ItemId> subset(k);
      for (std::size_t i = 0; i < k; ++i) subset[i] = ids[idx[i]];
      out.push_back(Itemset::from_sorted(std::move(subset)));
      // advance to the next k-combination in lexicographic order
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == m - k + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

/// Classic join+prune step: merges frequent size-k itemsets sharing their
/// first k-1 items, then drops candidates with an infrequent k-subset.
/// Output is canonically ordered.
inline std::vector<Itemset> generate_candidates(const std::vector<Itemset>& frequent_k) {
  if (frequent_k.empty()) return {};
  std::vector<Itemset> level(frequent_k);
  std::sort(level.begin(), level.end());
  level.erase(std::unique(level.begin(), level.end()), level.end());
  const std::size_t k = level.front().size();
  if (k == 0) throw std::invalid_argument("generate_candidates: empty itemset in level");
  for (const auto& itemset : level) {
    if (itemset.size() != k) throw std::invalid_argument("generate_candidates: non-uniform level");
  }

  std::vector<Itemset> out;
  for (std::size_t i = 0; i < level.size(); ++i) {
    for (std::size_t j = i + 1; j < level.size(); ++j) {
      if (!std::equal(level[i].begin(), level[i].end() - 1, level[j].begin(),
                      level[j].end() - 1)) {
        break;  // prefix groups are contiguous in canonical order
      }
      std::vector<ItemId> joined(level[i].items());
      joined.push_back(level[j].back());
      Itemset candidate = Itemset::from_sorted(std::move(joined));
      bool keep = true;
      for (std::size_t drop = 0; drop < candidate.size(); ++drop) {
        if (!std::binary_search(level.begin(), level.end(), candidate.without_index(drop))) {
          keep = false;
          break;
        }
      }
      if (keep) out.push_back(std::move(candidate));
    }
  }
  return out;
}

/// Single-node level-wise Apriori reference miner.
inline FrequentItemsets apriori_sequential(const TransactionDatabase& db,
                                           const SupportThreshold& threshold) {
  FrequentItemsets out;
  const std::uint64_t min_count = threshold.to_absolute(db.size());

  std::map<ItemId, std::uint64_t> item_counts;
  for (const auto& t : db.transactions()) {
    for (const ItemId id : t) ++item_counts[id];
  }
  std::vector<Itemset> frequent;
  for (const auto& [id, count] : item_counts) {
    if (count >= min_count) {
      out.insert(Itemset::single(id), count);
      frequent.push_back(Itemset::single(id));
    }
  }

  while (!frequent.empty()) {
    const std::vector<Itemset> candidates = generate_candidates(frequent);
    frequent.clear();
    for (const auto& candidate : candidates) {
      const std::uint64_t count = support_count(db, candidate);
      if (count >= min_count) {
        out.insert(candidate, count);
        frequent.push_back(candidate);
      }
    }
  }
  return out;
}

/// Exhaustive oracle: counts every non-empty subset of the universe and
/// filters. No candidate pruning, so it is independent of the level-wise
/// miners it cross-checks.
inline FrequentItemsets brute_force_frequent(const TransactionDatabase& db,
                                             const SupportThreshold& threshold,
                                             std::size_t cap = kDefaultEnumerationCap) {
  FrequentItemsets out;
  const std::uint64_t min_count = threshold.to_absolute(db.size());
  for (const auto& candidate : enumerate_all_subsets(db.universe(), cap)) {
    const std::uint64_t count = support_count(db, candidate);
    if (count >= min_count) out.insert(candidate, count);
  }
  return out;
}

}  // namespace mrminer
