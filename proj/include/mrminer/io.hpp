#pragma once

// Text formats:
//   databases — one transaction per line, ascending space-separated decimal
//   item ids, LF line endings, '#'-prefixed comment lines ignored;
//   mining results — one itemset per line as `<ids> #SUP: <count>`, ordered
//   by (size, lexicographic).
// All formatting goes through std::to_chars/from_chars: ASCII in, ASCII out,
// no locale anywhere.

#include <algorithm>
#include <charconv>
#include <concepts>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "mrminer/errors.hpp"
#include "mrminer/itemset.hpp"

namespace mrminer {

template <std::integral Int>
std::string to_decimal(Int value) {
  char buf[24];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

inline std::string to_decimal(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general);
  return std::string(buf, ptr);
}

inline std::string render_itemset(const Itemset& itemset) {
  std::string out;
  for (std::size_t i = 0; i < itemset.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += to_decimal(itemset.items()[i]);
  }
  return out;
}

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ' ' || line[i] == '\t') {
      if (i > start) fields.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return fields;
}

template <typename Int>
Int parse_uint(std::string_view token, std::size_t line, const char* what) {
  Int value{};
  const char* first = token.data();
  const char* last = first + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError(line, std::string("invalid ") + what + " '" + std::string(token) + "'");
  }
  return value;
}

inline void reject_carriage_return(const std::string& line, std::size_t line_number) {
  if (!line.empty() && line.back() == '\r') {
    throw ParseError(line_number, "carriage-return line ending (LF only)");
  }
}

/// Sorted ids from already-parsed tokens; duplicates are a per-line error.
inline Itemset itemset_from_ids(std::vector<ItemId> ids, std::size_t line_number) {
  std::sort(ids.begin(), ids.end());
  for (std::size_t i = 1; i < ids.size(); ++i) {
    if (ids[i] == ids[i - 1]) {
      throw ParseError(line_number, "duplicate item " + to_decimal(ids[i]));
    }
  }
  return Itemset::from_sorted(std::move(ids));
}

}  // namespace detail

inline void write_db(const TransactionDatabase& db, std::ostream& out) {
  for (const auto& t : db.transactions()) {
    out << render_itemset(t) << '\n';
  }
}

inline TransactionDatabase read_db(std::istream& in) {
  std::vector<Transaction> transactions;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    detail::reject_carriage_return(line, line_number);
    if (!line.empty() && line.front() == '#') continue;
    const auto fields = detail::split_fields(line);
    if (fields.empty()) throw ParseError(line_number, "empty transaction");
    std::vector<ItemId> ids;
    ids.reserve(fields.size());
    for (const auto field : fields) {
      ids.push_back(detail::parse_uint<ItemId>(field, line_number, "item"));
    }
    transactions.push_back(detail::itemset_from_ids(std::move(ids), line_number));
  }
  return TransactionDatabase(std::move(transactions));
}

namespace detail {

template <typename Table>
void write_support_lines(const Table& table, std::ostream& out) {
  for (const auto& [itemset, count] : table) {
    out << render_itemset(itemset) << " #SUP: " << to_decimal(count) << '\n';
  }
}

}  // namespace detail

/// One `<ids> #SUP: <count>` line per entry, in the table's canonical order.
inline void write_support_table(const SupportCountTable& table, std::ostream& out) {
  detail::write_support_lines(table, out);
}

inline void write_results(const FrequentItemsets& frequent, std::ostream& out) {
  for (std::size_t k = 1; k <= frequent.max_size(); ++k) {
    detail::write_support_lines(frequent.level(k), out);
  }
}

inline FrequentItemsets read_results(std::istream& in) {
  FrequentItemsets out;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    detail::reject_carriage_return(line, line_number);
    if (!line.empty() && line.front() == '#') continue;
    const auto fields = detail::split_fields(line);
    if (fields.empty()) throw ParseError(line_number, "empty line");
    if (fields.size() < 3 || fields[fields.size() - 2] != "#SUP:") {
      throw ParseError(line_number, "missing '#SUP:' marker");
    }
    std::vector<ItemId> ids;
    ids.reserve(fields.size() - 2);
    for (std::size_t i = 0; i + 2 < fields.size(); ++i) {
      ids.push_back(detail::parse_uint<ItemId>(fields[i], line_number, "item"));
    }
    const auto count =
        detail::parse_uint<std::uint64_t>(fields.back(), line_number, "support count");
    try {
      out.insert(detail::itemset_from_ids(std::move(ids), line_number), count);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_number, e.what());
    }
  }
  return out;
}

// Path-based conveniences. Reads and writes are byte streams; the formats
// above define every byte, so no text-mode translation is wanted.

namespace detail {

inline std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  return in;
}

inline std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

inline void finish_output(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

}  // namespace detail

inline void write_db(const TransactionDatabase& db, const std::filesystem::path& path) {
  auto out = detail::open_output(path);
  write_db(db, out);
  detail::finish_output(out, path);
}

inline TransactionDatabase read_db(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return read_db(in);
}

inline void write_results(const FrequentItemsets& frequent, const std::filesystem::path& path) {
  auto out = detail::open_output(path);
  write_results(frequent, out);
  detail::finish_output(out, path);
}

inline FrequentItemsets read_results(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return read_results(in);
}

inline void write_support_table(const SupportCountTable& table,
                                const std::filesystem::path& path) {
  auto out = detail::open_output(path);
  write_support_table(table, out);
  detail::finish_output(out, path);
}

}  // namespace mrminer
