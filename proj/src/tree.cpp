#include "treewalk/tree.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "treewalk/errors.hpp"
#include "treewalk/random.hpp"

namespace treewalk {

namespace {

class FullOracle final : public MembershipOracle {
 public:
  bool member(NodeAddr) const override { return true; }
  bool child_member(NodeAddr, int) const override { return true; }
};

class PathOracle final : public MembershipOracle {
 public:
  bool member(NodeAddr a) const override { return a.bits() == 0; }
  bool child_member(NodeAddr p, int bit) const override { return p.bits() == 0 && bit == 0; }
};

// Path nodes 0^k plus their right children 0^k 1.
class CombOracle final : public MembershipOracle {
 public:
  bool member(NodeAddr a) const override { return a.bits() <= 1; }
  bool child_member(NodeAddr p, int) const override { return p.bits() == 0; }
};

class RootOnlyOracle final : public MembershipOracle {
 public:
  bool member(NodeAddr a) const override { return a.is_root(); }
  bool child_member(NodeAddr, int) const override { return false; }
};

class HashOracle final : public MembershipOracle {
 public:
  HashOracle(std::uint64_t seed, double q) : seed_(seed), q_(q) {}

  bool member(NodeAddr a) const override {
    for (std::uint64_t k = a.heap_index(); k > 1; k >>= 1) {
      if (!(prf_unit(seed_, k) < q_)) return false;
    }
    return true;
  }
  bool child_member(NodeAddr p, int bit) const override {
    return prf_unit(seed_, (p.heap_index() << 1) | static_cast<std::uint64_t>(bit)) < q_;
  }

 private:
  std::uint64_t seed_;
  double q_;
};

class PredicateOracle final : public MembershipOracle {
 public:
  explicit PredicateOracle(std::function<bool(NodeAddr)> f) : f_(std::move(f)) {}
  bool member(NodeAddr a) const override { return f_(a); }

 private:
  std::function<bool(NodeAddr)> f_;
};

void check_budget(int n) {
  if (n < 0 || n > NodeAddr::kMaxDepth) {
    throw InvalidArgument("level budget must lie in [0, " + std::to_string(NodeAddr::kMaxDepth) + "]");
  }
}

std::uint64_t perfect_size(int n) { return (std::uint64_t{2} << n) - 1; }

}  // namespace

SuccinctTree::SuccinctTree(int level_budget, std::shared_ptr<const MembershipOracle> oracle, std::string label)
    : level_budget_(level_budget), oracle_(std::move(oracle)), label_(std::move(label)) {
  check_budget(level_budget_);
}

bool SuccinctTree::contains(NodeAddr a) const {
  if (a.depth() > level_budget_) {
    throw OutOfRangeError("address '" + a.to_string() + "' deeper than level budget " + std::to_string(level_budget_));
  }
  return oracle_->member(a);
}

std::vector<NodeAddr> SuccinctTree::children_in_tree(NodeAddr a) const {
  if (!contains(a)) throw DomainError("address '" + a.to_string() + "' is not in the tree");
  std::vector<NodeAddr> out;
  for (int b = 0; b < 2; ++b) {
    if (contains_child(a, b)) out.push_back(a.child(b));
  }
  return out;
}

SuccinctTree SuccinctTree::prune(int i) const {
  if (i < 0 || i > level_budget_) {
    throw OutOfRangeError("prune depth " + std::to_string(i) + " outside [0, " + std::to_string(level_budget_) + "]");
  }
  return SuccinctTree(i, oracle_, label_ + "|prune:" + std::to_string(i));
}

ExplicitTree::ExplicitTree(int level_budget, std::vector<NodeAddr> nodes)
    : level_budget_(level_budget), nodes_(std::move(nodes)) {
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
  if (nodes_.empty() || !nodes_.front().is_root()) throw InvalidArgument("explicit tree must contain the root");
  index_.reserve(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].depth() > level_budget_) throw InvalidArgument("node deeper than level budget");
    index_.emplace(nodes_[i].heap_index(), i);
  }
  parent_.assign(nodes_.size(), -1);
  child_.assign(nodes_.size(), {-1, -1});
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    auto it = index_.find(nodes_[i].heap_index() >> 1);
    if (it == index_.end()) throw InvalidArgument("node set is not prefix-closed at '" + nodes_[i].to_string() + "'");
    parent_[i] = static_cast<std::int64_t>(it->second);
    child_[it->second][nodes_[i].last_bit()] = static_cast<std::int64_t>(i);
  }
}

std::optional<std::size_t> ExplicitTree::index_of(NodeAddr a) const {
  auto it = index_.find(a.heap_index());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::uint64_t> ExplicitTree::level_counts() const {
  std::vector<std::uint64_t> r(static_cast<std::size_t>(level_budget_) + 1, 0);
  for (const auto& a : nodes_) ++r[a.depth()];
  return r;
}

SuccinctTree full_tree(int n) {
  return SuccinctTree(n, std::make_shared<FullOracle>(), "full:" + std::to_string(n));
}

SuccinctTree leftmost_path(int n) {
  return SuccinctTree(n, std::make_shared<PathOracle>(), "path:" + std::to_string(n));
}

SuccinctTree comb(int n) {
  return SuccinctTree(n, std::make_shared<CombOracle>(), "comb:" + std::to_string(n));
}

SuccinctTree root_only(int n) {
  return SuccinctTree(n, std::make_shared<RootOnlyOracle>(), "root:" + std::to_string(n));
}

SuccinctTree hash_random_tree(std::uint64_t seed, int n, double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw InvalidArgument("q must lie in [0, 1]");
  std::ostringstream label;
  label << "hash:" << n << ':' << q << ':' << seed;
  // q == 1 must keep every node; prf_unit < 1 always holds.
  return SuccinctTree(n, std::make_shared<HashOracle>(seed, q), label.str());
}

SuccinctTree predicate_tree(int n, std::function<bool(NodeAddr)> member, std::string label) {
  return SuccinctTree(n, std::make_shared<PredicateOracle>(std::move(member)), std::move(label));
}

namespace {

template <class Visit>
void depth_first(const SuccinctTree& tree, std::uint64_t cap, Visit&& visit) {
  std::vector<NodeAddr> stack{NodeAddr::root()};
  std::uint64_t seen = 0;
  while (!stack.empty()) {
    const NodeAddr a = stack.back();
    stack.pop_back();
    if (++seen > cap) {
      throw BudgetExceeded("tree '" + tree.label() + "' has more than " + std::to_string(cap) + " nodes", seen - 1);
    }
    visit(a);
    for (int b = 1; b >= 0; --b) {
      if (tree.contains_child(a, b)) stack.push_back(a.child(b));
    }
  }
}

}  // namespace

std::uint64_t exact_count(const SuccinctTree& tree, std::uint64_t cap) {
  if (cap < 1) throw InvalidArgument("cap must be >= 1");
  std::uint64_t count = 0;
  depth_first(tree, cap, [&](NodeAddr) { ++count; });
  return count;
}

ExplicitTree enumerate(const SuccinctTree& tree, std::uint64_t cap) {
  if (cap < 1) throw InvalidArgument("cap must be >= 1");
  std::vector<NodeAddr> nodes;
  depth_first(tree, cap, [&](NodeAddr a) { nodes.push_back(a); });
  return ExplicitTree(tree.level_budget(), std::move(nodes));
}

std::optional<NodeAddr> validate_prefix_closed(const SuccinctTree& tree, std::uint64_t budget,
                                               std::uint64_t sample_seed) {
  if (budget < 1) throw InvalidArgument("budget must be >= 1");
  const int n = tree.level_budget();
  const auto violates = [&](NodeAddr a) { return tree.contains(a) && !tree.contains(*a.parent()); };
  if (n < 63 && perfect_size(n) <= budget) {
    for (std::uint64_t k = 2; k <= perfect_size(n); ++k) {
      const NodeAddr a = NodeAddr::from_heap_index(k);
      if (violates(a)) return a;
    }
    return std::nullopt;
  }
  RandomStream rng(sample_seed, 0x70726566u);
  for (std::uint64_t i = 0; i < budget; ++i) {
    const int d = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    const NodeAddr a = NodeAddr::from_heap_index((std::uint64_t{1} << d) | rng.below(std::uint64_t{1} << d));
    if (violates(a)) return a;
  }
  return std::nullopt;
}

ExplicitTree explicit_from_nodes(int level_budget, std::vector<NodeAddr> nodes) {
  check_budget(level_budget);
  return ExplicitTree(level_budget, std::move(nodes));
}

}  // namespace treewalk
