#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace evo {

/// Input text violates one of the file formats. `line` is 1-based; 0 means
/// the problem is not tied to a single line (e.g. a missing header).
class FormatError : public std::runtime_error {
public:
  FormatError(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line),
        detail_(what) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& detail() const noexcept { return detail_; }

private:
  std::size_t line_;
  std::string detail_;
};

/// An ordering that is not a permutation of the family's set indices. This is
/// a usage error, never a "not evolutionary" answer.
class MalformedOrdering : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

} // namespace evo
