#pragma once

#include <istream>
#include <string>
#include <vector>

#include "treewalk/tree.hpp"

namespace treewalk {

struct Cnf {
  int num_vars = 0;
  /// DIMACS literals: +v / -v for variable v in 1..num_vars.
  std::vector<std::vector<int>> clauses;

  friend bool operator==(const Cnf&, const Cnf&) = default;
};

/// Standard DIMACS CNF. Empty clauses are rejected since they would remove
/// the root from the backtracking tree.
Cnf parse_dimacs(std::istream& in);
Cnf parse_dimacs_string(const std::string& text);
Cnf parse_dimacs_file(const std::string& path);

std::string to_dimacs(const Cnf& cnf);

/// Backtracking tree of the formula: depth j assigns variable order[j] the
/// j-th path bit; a node is present iff its partial assignment falsifies no
/// clause. An empty `order` means the identity permutation.
SuccinctTree cnf_tree(const Cnf& cnf, std::vector<int> order = {});

}  // namespace treewalk
