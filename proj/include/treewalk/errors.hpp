#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace treewalk {

// Address deeper than the instance's level budget.
class OutOfRangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Operation applied to a node that is not part of the tree.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Enumeration or matrix construction would exceed a configured cap.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t partial)
      : std::runtime_error(what), partial_count_(partial) {}
  std::uint64_t partial_count() const noexcept { return partial_count_; }

 private:
  std::uint64_t partial_count_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// No subset qualifies for the conductance minimum (single-state chain).
class DegenerateInput : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Alpha-inverse sequence does not start at 1.
class InvalidProfile : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Alpha-inverse sequence implies a negative level count.
class InconsistentProfile : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace treewalk
