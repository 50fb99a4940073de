#pragma once

#include <string>
#include <vector>

#include "treewalk/tree.hpp"

namespace treewalk {

/// Builds an instance from its text descriptor:
///   full:<n>  path:<n>  comb:<n>  root:<n>  hash:<n>:<q>:<seed>  cnf:<file>
/// A cnf descriptor may carry a trailing ":<n>" which must equal the
/// variable count. `order` applies to cnf instances only.
/// Throws InvalidArgument for malformed descriptors and ParseError for
/// malformed DIMACS input.
SuccinctTree tree_from_descriptor(const std::string& descriptor, const std::vector<int>& order = {});

}  // namespace treewalk
