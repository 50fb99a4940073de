#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>

#include "test_support.hpp"
#include "treewalk/cnf.hpp"
#include "treewalk/descriptor.hpp"
#include "treewalk/errors.hpp"

namespace treewalk {
namespace {

using testing::brute_force_cnf_tree_size;
using testing::identity_order;
using testing::random_cnf;

NodeAddr A(const char* s) { return NodeAddr::from_string(s); }

int parse_error_line(const std::string& text) {
  try {
    parse_dimacs_string(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

TEST(ParseDimacs, Examples) {
  const Cnf a = parse_dimacs_string("p cnf 2 1\n1 2 0");
  EXPECT_EQ(a.num_vars, 2);
  EXPECT_EQ(a.clauses, (std::vector<std::vector<int>>{{1, 2}}));
  const Cnf b = parse_dimacs_string("c comment\np cnf 1 1\n-1 0");
  EXPECT_EQ(b.num_vars, 1);
  EXPECT_EQ(b.clauses, (std::vector<std::vector<int>>{{-1}}));
  EXPECT_THROW(parse_dimacs_string("p cnf 1 1\n0"), ParseError);
}

TEST(ParseDimacs, ClausesMaySpanLines) {
  const Cnf c = parse_dimacs_string("p cnf 3 2\n1 -2\n3 0 -1\n 0\n");
  EXPECT_EQ(c.clauses, (std::vector<std::vector<int>>{{1, -2, 3}, {-1}}));
}

TEST(ParseDimacs, ErrorsCarryLineNumbers) {
  EXPECT_EQ(parse_error_line("p cnf 1 1\n0"), 2);
  EXPECT_EQ(parse_error_line("c x\np cnf 2 1\n1 3 0"), 3);
  EXPECT_EQ(parse_error_line("p cnf x 1\n1 0"), 1);
  EXPECT_EQ(parse_error_line("1 0\np cnf 1 1"), 1);
  EXPECT_GT(parse_error_line("p cnf 2 2\n1 0"), 0);
  EXPECT_GT(parse_error_line("p cnf 2 1\n1 0\n2 0"), 0);
  EXPECT_GT(parse_error_line("p cnf 2 1\n1 2"), 0);
  EXPECT_GT(parse_error_line("p cnf 2 1\np cnf 2 1\n1 0"), 0);
  EXPECT_THROW(parse_dimacs_string(""), ParseError);
  EXPECT_GT(parse_error_line("p cnf 63 1\n1 0"), 0);
}

TEST(ParseDimacs, RoundTrip) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Cnf c = random_cnf(seed, 7, 9, 3);
    EXPECT_EQ(parse_dimacs_string(to_dimacs(c)), c);
  }
}

TEST(CnfTree, MembershipExamples) {
  const SuccinctTree t = cnf_tree(parse_dimacs_string("p cnf 2 1\n1 2 0"), {1, 2});
  EXPECT_FALSE(t.contains(A("00")));
  EXPECT_TRUE(t.contains(A("01")));
  EXPECT_EQ(t.level_budget(), 2);
  // Brute force over the six partial assignments: only "00" falsifies the clause.
  EXPECT_EQ(exact_count(t, 100), 6u);
  EXPECT_EQ(brute_force_cnf_tree_size(parse_dimacs_string("p cnf 2 1\n1 2 0"), {1, 2}), 6u);

  const SuccinctTree unit = cnf_tree(parse_dimacs_string("p cnf 1 1\n1 0"), {1});
  EXPECT_FALSE(unit.contains(A("0")));
  EXPECT_TRUE(unit.contains(A("1")));
}

TEST(CnfTree, NoClausesGivesFullTree) {
  Cnf c;
  c.num_vars = 5;
  EXPECT_EQ(exact_count(cnf_tree(c), 1000), 63u);
}

TEST(CnfTree, RejectsNonPermutationOrder) {
  const Cnf c = parse_dimacs_string("p cnf 3 1\n1 2 0");
  EXPECT_THROW(cnf_tree(c, {1, 2}), InvalidArgument);
  EXPECT_THROW(cnf_tree(c, {1, 1, 2}), InvalidArgument);
  EXPECT_THROW(cnf_tree(c, {1, 2, 4}), InvalidArgument);
}

TEST(CnfTree, CountMatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const int vars = 3 + static_cast<int>(seed % 6);
    const Cnf c = random_cnf(seed, vars, 2 + static_cast<int>(seed % 7), 1 + static_cast<int>(seed % 3));
    std::vector<int> order = identity_order(vars);
    RandomStream rng(seed, 17);
    std::shuffle(order.begin(), order.end(), rng);
    EXPECT_EQ(exact_count(cnf_tree(c, order), 1u << 16), brute_force_cnf_tree_size(c, order)) << seed;
  }
}

TEST(CnfTree, PrefixClosedExhaustively) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const Cnf c = random_cnf(seed, 12, 30, 3);
    EXPECT_FALSE(validate_prefix_closed(cnf_tree(c), 1u << 13).has_value()) << seed;
  }
}

TEST(CnfTree, InvariantUnderClauseReordering) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Cnf c = random_cnf(seed, 8, 12, 3);
    const ExplicitTree before = enumerate(cnf_tree(c), 1000);
    std::reverse(c.clauses.begin(), c.clauses.end());
    RandomStream rng(seed, 3);
    std::shuffle(c.clauses.begin(), c.clauses.end(), rng);
    EXPECT_EQ(enumerate(cnf_tree(c), 1000).nodes(), before.nodes());
  }
}

TEST(CnfTree, IncrementalChildCheckAgreesWithFullPredicate) {
  const Cnf c = random_cnf(5, 9, 20, 3);
  const SuccinctTree t = cnf_tree(c, {9, 3, 1, 7, 5, 2, 8, 4, 6});
  const ExplicitTree e = enumerate(t, 1000);
  for (const auto& a : e.nodes()) {
    if (a.depth() == 9) continue;
    for (int b = 0; b < 2; ++b) EXPECT_EQ(t.contains_child(a, b), t.oracle().member(a.child(b)));
  }
}

TEST(CnfDescriptor, ReadsFileAndChecksBudget) {
  const std::string path = ::testing::TempDir() + "treewalk_cnf_test.cnf";
  {
    std::ofstream f(path);
    f << "c test\np cnf 2 1\n1 2 0\n";
  }
  const SuccinctTree t = tree_from_descriptor("cnf:" + path);
  EXPECT_EQ(t.label(), "cnf:" + path);
  EXPECT_EQ(exact_count(t, 100), 6u);
  EXPECT_EQ(exact_count(tree_from_descriptor("cnf:" + path + ":2"), 100), 6u);
  EXPECT_EQ(exact_count(tree_from_descriptor("cnf:" + path, {2, 1}), 100), 6u);
  EXPECT_THROW(tree_from_descriptor("cnf:" + path + ":3"), InvalidArgument);
  EXPECT_THROW(tree_from_descriptor("cnf:/nonexistent/file.cnf"), ParseError);
}

}  // namespace
}  // namespace treewalk
