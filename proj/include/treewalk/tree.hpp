#pragma once

#include <cstdint>
#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "treewalk/node_addr.hpp"

namespace treewalk {

/// Membership predicate of a succinctly represented tree.
///
/// Implementations must be prefix-closed and must tolerate concurrent calls.
class MembershipOracle {
 public:
  virtual ~MembershipOracle() = default;

  virtual bool member(NodeAddr a) const = 0;

  /// Membership of parent.child(bit) given that `parent` is a member. The
  /// default re-evaluates the full predicate; generators override it with
  /// an incremental check.
  virtual bool child_member(NodeAddr parent, int bit) const { return member(parent.child(bit)); }
};

/// Problem instance: a root-containing, prefix-closed subtree of the perfect
/// binary tree of height `level_budget()`, given by a membership predicate.
class SuccinctTree {
 public:
  SuccinctTree(int level_budget, std::shared_ptr<const MembershipOracle> oracle, std::string label);

  int level_budget() const { return level_budget_; }
  const std::string& label() const { return label_; }

  /// Throws OutOfRangeError when depth(a) exceeds the level budget.
  bool contains(NodeAddr a) const;

  /// Membership of member.child(bit); false past the budget. `member` must
  /// already be known to belong to the tree.
  bool contains_child(NodeAddr member, int bit) const {
    return member.depth() < level_budget_ && oracle_->child_member(member, bit);
  }

  /// In-tree children of a member node, left first. Throws DomainError when
  /// `a` itself is not in the tree.
  std::vector<NodeAddr> children_in_tree(NodeAddr a) const;

  /// Same predicate restricted to depth <= i.
  SuccinctTree prune(int i) const;

  const MembershipOracle& oracle() const { return *oracle_; }

  SuccinctTree with_label(std::string label) const { return SuccinctTree(level_budget_, oracle_, std::move(label)); }

 private:
  int level_budget_;
  std::shared_ptr<const MembershipOracle> oracle_;
  std::string label_;
};

/// Finite materialization of a tree; nodes sorted by heap index (so the root
/// is first and levels are contiguous).
class ExplicitTree {
 public:
  ExplicitTree(int level_budget, std::vector<NodeAddr> nodes);

  int level_budget() const { return level_budget_; }
  std::size_t size() const { return nodes_.size(); }
  const std::vector<NodeAddr>& nodes() const { return nodes_; }
  const NodeAddr& node(std::size_t i) const { return nodes_[i]; }

  bool contains(NodeAddr a) const { return index_.count(a.heap_index()) != 0; }
  std::optional<std::size_t> index_of(NodeAddr a) const;

  /// Parent index (none for the root) and child indices (none when absent).
  std::optional<std::size_t> parent_index(std::size_t i) const { return link(parent_[i]); }
  std::optional<std::size_t> child_index(std::size_t i, int bit) const { return link(child_[i][bit]); }

  /// r_0..r_n where n is the level budget.
  std::vector<std::uint64_t> level_counts() const;

  int height() const { return nodes_.back().depth(); }

 private:
  static std::optional<std::size_t> link(std::int64_t v) {
    return v < 0 ? std::nullopt : std::optional<std::size_t>(static_cast<std::size_t>(v));
  }

  int level_budget_;
  std::vector<NodeAddr> nodes_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  std::vector<std::int64_t> parent_;
  std::vector<std::array<std::int64_t, 2>> child_;
};

// Instance generators.
SuccinctTree full_tree(int n);
SuccinctTree leftmost_path(int n);
/// Leftmost path plus the right sibling hanging off each internal path node.
SuccinctTree comb(int n);
SuccinctTree root_only(int n);
/// Node a is kept iff prf_unit(seed, heap_index(b)) < q for every non-root
/// prefix b of a, including a itself.
SuccinctTree hash_random_tree(std::uint64_t seed, int n, double q);
/// Arbitrary predicate; prefix-closure is the caller's problem.
SuccinctTree predicate_tree(int n, std::function<bool(NodeAddr)> member, std::string label);

/// |V(S)| by depth-first enumeration. Throws BudgetExceeded (carrying the
/// partial count) once more than `cap` nodes are found.
std::uint64_t exact_count(const SuccinctTree& tree, std::uint64_t cap);

ExplicitTree enumerate(const SuccinctTree& tree, std::uint64_t cap);

/// Checks member(a) => member(parent(a)). Exhaustive when the perfect tree
/// has at most `budget` nodes, otherwise `budget` addresses drawn with a
/// uniform depth in [1, n] and a uniform path at that depth.
/// Returns the first violating address.
std::optional<NodeAddr> validate_prefix_closed(const SuccinctTree& tree, std::uint64_t budget,
                                               std::uint64_t sample_seed = 0);

/// Builds an explicit tree directly from node strings (tests, shape sweeps).
/// Throws InvalidArgument unless the set contains the root and is prefix-closed.
ExplicitTree explicit_from_nodes(int level_budget, std::vector<NodeAddr> nodes);

}  // namespace treewalk
