#pragma once

// Deterministic synthetic transaction databases. All sampling is integer
// arithmetic on raw std::mt19937_64 output — an algorithm the C++ standard
// pins down to the bit — so a given seed yields byte-identical databases on
// every platform and standard library.
//
// Per transaction:
//   1. Length: popcount of 2*avg_transaction_len fair coin bits, i.e. a
//      Binomial(2*avg, 1/2) draw with mean avg_transaction_len, clamped to
//      [1, num_items].
//   2. Items: weighted sampling without replacement. Item i carries integer
//      weight floor(2^32 / (i + 1)) — a harmonic (Zipf, exponent 1) profile —
//      and each draw picks by unbiased bounded rejection sampling over the
//      remaining total weight, so low-numbered items are common and frequent
//      itemsets exist at moderate thresholds.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "mrminer/itemset.hpp"

namespace mrminer {

struct GeneratorParams {
  std::uint64_t num_transactions = 0;
  std::uint32_t num_items = 50;          // universe is 0..num_items-1
  std::uint32_t avg_transaction_len = 8;
  std::uint64_t seed = 1;

  void validate() const {
    if (num_items == 0) throw std::invalid_argument("num_items must be positive");
    if (num_items > 1u << 20) throw std::invalid_argument("num_items too large (max 2^20)");
    if (avg_transaction_len == 0) {
      throw std::invalid_argument("avg_transaction_len must be positive");
    }
    if (avg_transaction_len > num_items) {
      throw std::invalid_argument("avg_transaction_len exceeds num_items");
    }
  }
};

namespace detail {

/// Uniform integer in [0, bound) from raw 64-bit engine output, bias-free
/// via rejection below 2^64 mod bound.
inline std::uint64_t bounded_rand(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

/// Binomial(n, 1/2) as the popcount of n engine bits.
inline std::uint32_t coin_popcount(std::mt19937_64& rng, std::uint32_t n) {
  std::uint32_t ones = 0;
  for (std::uint32_t taken = 0; taken < n; taken += 64) {
    const std::uint32_t width = std::min<std::uint32_t>(64, n - taken);
    std::uint64_t word = rng();
    if (width < 64) word &= (std::uint64_t{1} << width) - 1;
    ones += static_cast<std::uint32_t>(std::popcount(word));
  }
  return ones;
}

}  // namespace detail

inline TransactionDatabase generate_db(const GeneratorParams& params) {
  params.validate();
  std::mt19937_64 rng(params.seed);

  std::vector<std::uint64_t> base_weight(params.num_items);
  for (std::uint32_t i = 0; i < params.num_items; ++i) {
    base_weight[i] = (std::uint64_t{1} << 32) / (i + 1);
  }

  std::vector<Transaction> transactions;
  transactions.reserve(params.num_transactions);
  std::vector<std::uint64_t> weight;
  std::vector<ItemId> picked;
  for (std::uint64_t t = 0; t < params.num_transactions; ++t) {
    std::uint32_t len = detail::coin_popcount(rng, 2 * params.avg_transaction_len);
    len = std::max<std::uint32_t>(1, std::min(len, params.num_items));

    picked.clear();
    if (len == params.num_items) {
      for (std::uint32_t i = 0; i < params.num_items; ++i) picked.push_back(i);
    } else {
      weight = base_weight;
      std::uint64_t total = 0;
      for (const std::uint64_t w : weight) total += w;
      for (std::uint32_t k = 0; k < len; ++k) {
        std::uint64_t u = detail::bounded_rand(rng, total);
        std::uint32_t item = 0;
        while (u >= weight[item]) {
          u -= weight[item];
          ++item;
        }
        picked.push_back(item);
        total -= weight[item];
        weight[item] = 0;
      }
    }
    transactions.push_back(Itemset::canonicalize(picked));
  }
  return TransactionDatabase(std::move(transactions));
}

}  // namespace mrminer
