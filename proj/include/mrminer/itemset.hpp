#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mrminer {

using ItemId = std::uint32_t;

/// Canonical itemset: item ids sorted ascending, no duplicates.
///
/// Itemsets compare by (size, lexicographic) and every container and file
/// the library produces is ordered that way.
class Itemset {
 public:
  Itemset() = default;

  /// Sorts and deduplicates arbitrary input. Idempotent.
  static Itemset canonicalize(std::vector<ItemId> items) {
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    return Itemset(std::move(items), kCanonical);
  }

  /// Wraps a sequence that is already strictly increasing.
  static Itemset from_sorted(std::vector<ItemId> items) {
    for (std::size_t i = 1; i < items.size(); ++i) {
      if (items[i - 1] >= items[i]) {
        throw std::invalid_argument("Itemset::from_sorted: sequence not strictly increasing");
      }
    }
    return Itemset(std::move(items), kCanonical);
  }

  static Itemset single(ItemId id) { return Itemset({id}, kCanonical); }

  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  const std::vector<ItemId>& items() const { return items_; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  ItemId front() const { return items_.front(); }
  ItemId back() const { return items_.back(); }

  /// True if every item of `sub` occurs in this set.
  bool contains_all(const Itemset& sub) const {
    return std::includes(items_.begin(), items_.end(), sub.items_.begin(), sub.items_.end());
  }

  bool contains(ItemId id) const { return std::binary_search(items_.begin(), items_.end(), id); }

  /// Copy with the item at position `pos` removed.
  Itemset without_index(std::size_t pos) const {
    std::vector<ItemId> rest;
    rest.reserve(items_.size() - 1);
    for (std::size_t i = 0; i < items_.size(); ++i) {
      if (i != pos) rest.push_back(items_[i]);
    }
    return Itemset(std::move(rest), kCanonical);
  }

  friend bool operator==(const Itemset& a, const Itemset& b) { return a.items_ == b.items_; }
  friend bool operator!=(const Itemset& a, const Itemset& b) { return !(a == b); }

  // Canonical order: smaller sets first, ties broken lexicographically.
  friend bool operator<(const Itemset& a, const Itemset& b) {
    if (a.items_.size() != b.items_.size()) return a.items_.size() < b.items_.size();
    return a.items_ < b.items_;
  }

 private:
  enum CanonicalTag { kCanonical };
  Itemset(std::vector<ItemId> items, CanonicalTag) : items_(std::move(items)) {}

  std::vector<ItemId> items_;
};

/// A transaction is itself a canonical itemset.
using Transaction = Itemset;

/// Immutable ordered list of transactions plus the derived item universe.
/// Transaction order is ingestion order; partitioning depends on it.
class TransactionDatabase {
 public:
  TransactionDatabase() = default;

  explicit TransactionDatabase(std::vector<Transaction> transactions)
      : transactions_(std::move(transactions)) {
    std::vector<ItemId> all;
    for (const auto& t : transactions_) {
      if (t.empty()) throw std::invalid_argument("TransactionDatabase: empty transaction");
      all.insert(all.end(), t.begin(), t.end());
    }
    universe_ = Itemset::canonicalize(std::move(all));
  }

  std::size_t size() const { return transactions_.size(); }
  bool empty() const { return transactions_.empty(); }
  const std::vector<Transaction>& transactions() const { return transactions_; }

  /// Union of all transaction items.
  const Itemset& universe() const { return universe_; }

 private:
  std::vector<Transaction> transactions_;
  Itemset universe_;
};

/// Minimum support, either an absolute transaction count or a fraction of
/// the database size. A fraction f over n transactions means ceil(f*n).
class SupportThreshold {
 public:
  static SupportThreshold absolute_count(std::uint64_t count) {
    SupportThreshold t;
    t.count_ = count;
    t.absolute_ = true;
    return t;
  }

  static SupportThreshold relative_fraction(double fraction) {
    if (!(fraction > 0.0) || fraction > 1.0) {
      throw std::invalid_argument("SupportThreshold: fraction must be in (0, 1]");
    }
    SupportThreshold t;
    t.fraction_ = fraction;
    t.absolute_ = false;
    return t;
  }

  bool is_absolute() const { return absolute_; }

  /// Minimum count this threshold means over `num_transactions` rows.
  /// The small slack keeps fractions that are exact multiples of 1/n from
  /// rounding up on floating-point noise.
  std::uint64_t to_absolute(std::size_t num_transactions) const {
    if (absolute_) return count_;
    const double raw = fraction_ * static_cast<double>(num_transactions);
    const double up = std::ceil(raw - 1e-9);
    return up <= 0.0 ? 0 : static_cast<std::uint64_t>(up);
  }

 private:
  SupportThreshold() = default;
  std::uint64_t count_ = 0;
  double fraction_ = 0.0;
  bool absolute_ = true;
};

/// Counts keyed by itemset, iterated in canonical order.
using SupportCountTable = std::map<Itemset, std::uint64_t>;

/// Mining result: one SupportCountTable per itemset size k >= 1.
class FrequentItemsets {
 public:
  FrequentItemsets() = default;

  void insert(Itemset itemset, std::uint64_t count) {
    if (itemset.empty()) throw std::invalid_argument("FrequentItemsets: empty itemset");
    const std::size_t k = itemset.size();
    if (levels_.size() < k) levels_.resize(k);
    const bool fresh = levels_[k - 1].emplace(std::move(itemset), count).second;
    if (!fresh) throw std::invalid_argument("FrequentItemsets: duplicate itemset");
  }

  /// Largest itemset size present (0 when empty).
  std::size_t max_size() const { return levels_.size(); }

  /// Table of size-k itemsets; empty table when the level does not exist.
  const SupportCountTable& level(std::size_t k) const {
    static const SupportCountTable kEmpty;
    if (k == 0 || k > levels_.size()) return kEmpty;
    return levels_[k - 1];
  }

  std::size_t total_count() const {
    std::size_t n = 0;
    for (const auto& t : levels_) n += t.size();
    return n;
  }

  bool empty() const { return total_count() == 0; }

  std::optional<std::uint64_t> support(const Itemset& itemset) const {
    const auto& table = level(itemset.size());
    const auto it = table.find(itemset);
    if (it == table.end()) return std::nullopt;
    return it->second;
  }

  friend bool operator==(const FrequentItemsets& a, const FrequentItemsets& b) {
    return a.levels_ == b.levels_;
  }
  friend bool operator!=(const FrequentItemsets& a, const FrequentItemsets& b) {
    return !(a == b);
  }

 private:
  std::vector<SupportCountTable> levels_;  // levels_[k-1] holds size-k itemsets
};

}  // namespace mrminer
