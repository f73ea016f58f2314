#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cutcell {

/// Bad input: out-of-range ids, malformed specs, violated preconditions.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A decomposition that breaks one of its geometric guarantees. Never repaired
/// silently; the offending cell and its sign pattern travel with the error.
class DegenerateGeometryError : public std::runtime_error {
 public:
  DegenerateGeometryError(const std::string& what, std::int64_t cell, int pattern_code)
      : std::runtime_error(what + " (cell " + std::to_string(cell) + ", pattern " +
                           std::to_string(pattern_code) + ")"),
        cell_(cell),
        pattern_code_(pattern_code) {}

  std::int64_t cell() const { return cell_; }
  int pattern_code() const { return pattern_code_; }

 private:
  std::int64_t cell_;
  int pattern_code_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cutcell
