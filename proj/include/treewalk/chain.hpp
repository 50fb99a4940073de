#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "treewalk/exec.hpp"
#include "treewalk/random.hpp"
#include "treewalk/rational.hpp"
#include "treewalk/tree.hpp"

namespace treewalk {

struct Move {
  NodeAddr target;
  Rational probability;
};

/// One row of the level-weighted chain: self first, then parent, then
/// in-tree children left to right. Zero-probability self moves are kept so
/// the row always lists the source.
struct LocalKernel {
  NodeAddr source;
  std::vector<Move> moves;
};

/// Parent 1/2, each in-tree child 1/4, self the remainder; the lazy variant
/// halves those and adds 1/2 to self. Throws DomainError for non-members.
LocalKernel local_kernel(const SuccinctTree& tree, NodeAddr addr, bool lazy);

struct ChainParams {
  bool lazy = true;
  double burn_in_constant = 2.0;
  double tv_epsilon = 0.01;

  /// Throws InvalidArgument unless C > 0 and 0 < tv_epsilon < 1.
  void validate() const;
};

/// A step consumes 3 random bits (lazy) or 2 (non-lazy) and maps the slot
/// value onto a move. Lazy: slots 0-3 stay, 4-5 parent, 6 left child,
/// 7 right child. Non-lazy: 0-1 parent, 2 left, 3 right. A slot whose target
/// is missing becomes a self-loop, which reproduces the kernel exactly.
enum class MoveKind : std::uint8_t { Stay, Parent, Left, Right };

constexpr int slot_bits(bool lazy) { return lazy ? 3 : 2; }

constexpr MoveKind decode_slot(unsigned slot, bool lazy) {
  if (lazy) {
    if (slot < 4) return MoveKind::Stay;
    slot -= 4;
  }
  switch (slot) {
    case 0:
    case 1: return MoveKind::Parent;
    case 2: return MoveKind::Left;
    default: return MoveKind::Right;
  }
}

/// Walks the succinct instance directly; membership probes happen only for
/// the child a step actually selects.
class SuccinctTopology {
 public:
  using State = NodeAddr;

  explicit SuccinctTopology(const SuccinctTree& tree) : tree_(&tree) {}

  State root() const { return NodeAddr::root(); }
  bool is_root(State s) const { return s.is_root(); }
  bool parent(State s, State& out) const {
    if (s.is_root()) return false;
    out = *s.parent();
    return true;
  }
  bool child(State s, int bit, State& out) const {
    if (!tree_->contains_child(s, bit)) return false;
    out = s.child(bit);
    return true;
  }
  NodeAddr address(State s) const { return s; }

 private:
  const SuccinctTree* tree_;
};

/// Index-table form of an enumerated tree; state 0 is the root.
class CompiledTopology {
 public:
  using State = std::uint32_t;

  explicit CompiledTopology(const ExplicitTree& tree);

  State root() const { return 0; }
  bool is_root(State s) const { return s == 0; }
  bool parent(State s, State& out) const { return take(links_[s][0], out); }
  bool child(State s, int bit, State& out) const { return take(links_[s][1 + bit], out); }
  NodeAddr address(State s) const { return addrs_[s]; }
  std::size_t size() const { return addrs_.size(); }

  /// Successor of `s` for each slot value: 8 entries per state for the lazy
  /// chain, 4 for the non-lazy one.
  const std::vector<State>& slot_table(bool lazy) const { return lazy ? lazy_table_ : plain_table_; }

 private:
  static constexpr State kNone = ~State{0};
  static bool take(State v, State& out) {
    if (v == kNone) return false;
    out = v;
    return true;
  }

  std::vector<std::array<State, 3>> links_;
  std::vector<NodeAddr> addrs_;
  std::vector<State> lazy_table_;
  std::vector<State> plain_table_;
};

template <class Topology, class BitSource>
typename Topology::State step_on(const Topology& topo, typename Topology::State s, bool lazy,
                                 BitSource& bits) {
  typename Topology::State next = s;
  switch (decode_slot(bits.bits(slot_bits(lazy)), lazy)) {
    case MoveKind::Stay: break;
    case MoveKind::Parent: topo.parent(s, next); break;
    case MoveKind::Left: topo.child(s, 0, next); break;
    case MoveKind::Right: topo.child(s, 1, next); break;
  }
  return next;
}

/// One transition from `state`, which must be in the tree.
NodeAddr step(const SuccinctTree& tree, NodeAddr state, bool lazy, RandomStream& rng);

/// ceil(C * (4(n+1))^2 * (ln(n+1) + ln(1/tv_epsilon))).
std::uint64_t burn_in_steps(int n, double tv_epsilon, double C);

using TraceFn = std::function<void(NodeAddr)>;

/// `steps` transitions from the root. `trace`, when set, sees every state
/// including the start.
NodeAddr run_chain(const SuccinctTree& tree, std::uint64_t steps, RandomStream& rng, bool lazy = true,
                   const TraceFn& trace = {});

/// m independent restarts from the root, restart j driven by
/// rng.substream(j), each run for `steps` transitions.
template <class Topology>
std::vector<NodeAddr> sample_restarts(const Topology& topo, std::uint64_t m, std::uint64_t steps,
                                      const RandomStream& rng, bool lazy, Exec exec);

/// Number of the m restarts that end at the root.
template <class Topology>
std::uint64_t count_root_hits(const Topology& topo, std::uint64_t m, std::uint64_t steps,
                              const RandomStream& rng, bool lazy, Exec exec);

/// Restarts run for burn_in_steps(n, params.tv_epsilon, params.burn_in_constant).
std::vector<NodeAddr> sample_stationary(const SuccinctTree& tree, std::uint64_t m, const ChainParams& params,
                                        const RandomStream& rng, Exec exec = Exec::Parallel);

}  // namespace treewalk
