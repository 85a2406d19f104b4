#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kecss {

// Malformed instance or solution text; line numbers are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// The instance cannot meet the connectivity demand. Carries a witness cut
// (original node ids) whose available capacity falls short.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(std::string what, std::vector<int> witness = {})
      : std::runtime_error(std::move(what)), witness_(std::move(witness)) {}
  const std::vector<int>& witness() const { return witness_; }

 private:
  std::vector<int> witness_;
};

// A runtime invariant failed. Always a bug, never a property of the input.
class InvariantError : public std::logic_error {
 public:
  explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace kecss
