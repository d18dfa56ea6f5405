#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mrminer {

/// Parse failure in a text input (database, result, or cluster config file),
/// carrying the 1-based line number it occurred on.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace mrminer
