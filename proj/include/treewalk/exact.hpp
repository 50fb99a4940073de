#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "treewalk/exec.hpp"
#include "treewalk/rational.hpp"
#include "treewalk/tree.hpp"

namespace treewalk {

/// Level-weighted stationary law: pi(u) = 2^(n - depth u) / alpha_inverse.
struct StationaryProfile {
  BigInt alpha_inverse;
  int level_budget = 0;
  std::vector<NodeAddr> nodes;
  std::vector<Rational> probs;  // aligned with nodes

  /// Zero for addresses outside the tree.
  Rational prob(NodeAddr a) const;
  Rational root_prob() const { return probs.front(); }
};

StationaryProfile stationary_exact(const ExplicitTree& tree);

/// Exact transition matrix, stored by rows as (column, probability) pairs.
struct ExplicitChain {
  using Entry = std::pair<std::size_t, Rational>;

  std::vector<NodeAddr> states;
  std::vector<std::vector<Entry>> rows;
  bool lazy = true;

  std::size_t size() const { return states.size(); }
  Rational at(std::size_t i, std::size_t j) const;
  std::optional<std::size_t> index_of(NodeAddr a) const;
};

inline constexpr std::size_t kDefaultMatrixCap = 4096;
inline constexpr std::size_t kDefaultConductanceCap = 18;

/// Throws BudgetExceeded when the tree has more than `cap` nodes.
ExplicitChain transition_matrix(const ExplicitTree& tree, bool lazy, std::size_t cap = kDefaultMatrixCap);

bool rows_sum_to_one(const ExplicitChain& chain);

/// pi P == pi in exact arithmetic. False when the state sets differ.
bool verify_stationary(const ExplicitChain& chain, const StationaryProfile& profile);

/// pi(u) p(u,v) == pi(v) p(v,u) for every pair with a nonzero entry.
bool verify_detailed_balance(const ExplicitChain& chain, const StationaryProfile& profile);

using Distribution = std::vector<Rational>;  // aligned with chain.states

Distribution point_mass(const ExplicitChain& chain, NodeAddr at);
Distribution advance(const ExplicitChain& chain, const Distribution& p);
Distribution distribution_at_time(const ExplicitChain& chain, NodeAddr start, std::uint64_t t);

/// Half the L1 distance. Throws InvalidArgument on length mismatch.
Rational tv_distance(const Distribution& p, const Distribution& q);

/// Least t with TV(p_root^(t), pi) <= eps. Throws BudgetExceeded past
/// max_steps. The Parallel policy propagates integer numerators over a
/// common denominator; the Serial policy is the plain rational recurrence.
std::uint64_t mixing_time_exact(const ExplicitChain& chain, const StationaryProfile& profile, const Rational& eps,
                                std::uint64_t max_steps = 1u << 20, Exec exec = Exec::Parallel);

/// Minimum over Y with 0 < pi(Y) <= 1/2 of sum_{i in Y, j notin Y} pi_i p_ij / pi(Y),
/// by exhaustive subset enumeration. Throws DegenerateInput below two
/// states and BudgetExceeded above `cap` states.
Rational conductance_exact(const ExplicitChain& chain, const StationaryProfile& profile,
                           std::size_t cap = kDefaultConductanceCap, Exec exec = Exec::Parallel);

/// A_n - sum_{k<n} A_k, where A_k is alpha^-1 of the tree pruned at depth k.
BigInt size_from_alpha_inverses(const std::vector<BigInt>& alpha_inverses);

struct LevelProfile {
  std::vector<BigInt> counts;  // r_0..r_n
};

/// r_0 = 1, r_k = A_k - 2 A_{k-1}.
LevelProfile level_counts_from_alphas(const std::vector<BigInt>& alpha_inverses);

/// alpha^-1 of prune(tree, k) for k = 0..n, each from its own enumeration.
std::vector<BigInt> pruned_alpha_inverses(const SuccinctTree& tree, std::uint64_t cap);

}  // namespace treewalk
