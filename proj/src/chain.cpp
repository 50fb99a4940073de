#include "treewalk/chain.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>

#include "treewalk/errors.hpp"

namespace treewalk {

LocalKernel local_kernel(const SuccinctTree& tree, NodeAddr addr, bool lazy) {
  if (!tree.contains(addr)) throw DomainError("address '" + addr.to_string() + "' is not in the tree");
  const Rational scale = lazy ? Rational(1, 2) : Rational(1);
  LocalKernel k{addr, {}};
  k.moves.push_back({addr, 0});
  Rational out = 0;
  if (auto p = addr.parent()) {
    k.moves.push_back({*p, Rational(1, 2) * scale});
    out += k.moves.back().probability;
  }
  for (const NodeAddr& c : tree.children_in_tree(addr)) {
    k.moves.push_back({c, Rational(1, 4) * scale});
    out += k.moves.back().probability;
  }
  k.moves.front().probability = 1 - out;
  return k;
}

void ChainParams::validate() const {
  if (!(burn_in_constant > 0)) throw InvalidArgument("burn-in constant must be positive");
  if (!(tv_epsilon > 0 && tv_epsilon < 1)) throw InvalidArgument("tv_epsilon must lie in (0, 1)");
}

CompiledTopology::CompiledTopology(const ExplicitTree& tree) : links_(tree.size()), addrs_(tree.nodes()) {
  const auto enc = [](std::optional<std::size_t> v) { return v ? static_cast<State>(*v) : kNone; };
  for (std::size_t i = 0; i < tree.size(); ++i) {
    links_[i] = {enc(tree.parent_index(i)), enc(tree.child_index(i, 0)), enc(tree.child_index(i, 1))};
  }
  for (bool lazy : {true, false}) {
    auto& table = lazy ? lazy_table_ : plain_table_;
    const unsigned slots = 1u << slot_bits(lazy);
    table.resize(addrs_.size() * slots);
    for (State s = 0; s < addrs_.size(); ++s) {
      for (unsigned slot = 0; slot < slots; ++slot) {
        State next = s;
        switch (decode_slot(slot, lazy)) {
          case MoveKind::Stay: break;
          case MoveKind::Parent: parent(s, next); break;
          case MoveKind::Left: child(s, 0, next); break;
          case MoveKind::Right: child(s, 1, next); break;
        }
        table[s * slots + slot] = next;
      }
    }
  }
}

NodeAddr step(const SuccinctTree& tree, NodeAddr state, bool lazy, RandomStream& rng) {
  SuccinctTopology topo(tree);
  return step_on(topo, state, lazy, rng);
}

std::uint64_t burn_in_steps(int n, double tv_epsilon, double C) {
  if (n < 0) throw InvalidArgument("n must be >= 0");
  ChainParams{true, C, tv_epsilon}.validate();
  const double inv_cond = 4.0 * (n + 1);
  const double logs = std::log(static_cast<double>(n + 1)) + std::log(1.0 / tv_epsilon);
  return static_cast<std::uint64_t>(std::ceil(C * inv_cond * inv_cond * logs));
}

NodeAddr run_chain(const SuccinctTree& tree, std::uint64_t steps, RandomStream& rng, bool lazy, const TraceFn& trace) {
  SuccinctTopology topo(tree);
  NodeAddr s = topo.root();
  if (trace) trace(s);
  for (std::uint64_t i = 0; i < steps; ++i) {
    s = step_on(topo, s, lazy, rng);
    if (trace) trace(s);
  }
  return s;
}

namespace {

template <class Topology>
typename Topology::State walk(const Topology& topo, std::uint64_t steps, RandomStream rng, bool lazy) {
  auto s = topo.root();
  for (std::uint64_t i = 0; i < steps; ++i) s = step_on(topo, s, lazy, rng);
  return s;
}

// Advances kLanes restarts in lockstep through the slot table. Each lane
// consumes its own substream exactly as walk() would, so the end states
// match the one-at-a-time walk bit for bit.
constexpr int kLanes = 8;

void walk_lanes(const CompiledTopology& topo, std::uint64_t first, int lanes, std::uint64_t steps,
                const RandomStream& rng, bool lazy, CompiledTopology::State* out) {
  const auto* table = topo.slot_table(lazy).data();
  const int width = slot_bits(lazy);
  const unsigned shift = static_cast<unsigned>(width);
  const std::uint64_t mask = (std::uint64_t{1} << width) - 1;
  const int per_word = 64 / width;

  std::vector<RandomStream> streams;
  streams.reserve(kLanes);
  CompiledTopology::State state[kLanes] = {};
  std::uint64_t word[kLanes] = {};
  for (int l = 0; l < lanes; ++l) streams.push_back(rng.substream(first + static_cast<std::uint64_t>(l)));

  std::uint64_t done = 0;
  while (done < steps) {
    const std::uint64_t chunk = std::min<std::uint64_t>(static_cast<std::uint64_t>(per_word), steps - done);
    for (int l = 0; l < lanes; ++l) word[l] = streams[l]();
    for (std::uint64_t t = 0; t < chunk; ++t) {
      for (int l = 0; l < kLanes; ++l) {
        state[l] = table[(static_cast<std::uint64_t>(state[l]) << shift) | (word[l] & mask)];
        word[l] >>= shift;
      }
    }
    done += chunk;
  }
  for (int l = 0; l < lanes; ++l) out[l] = state[l];
}

template <class Topology>
constexpr bool kHasSlotTable = std::is_same_v<Topology, CompiledTopology>;

}  // namespace

template <class Topology>
std::vector<NodeAddr> sample_restarts(const Topology& topo, std::uint64_t m, std::uint64_t steps,
                                      const RandomStream& rng, bool lazy, Exec exec) {
  std::vector<NodeAddr> out(m);
  const auto n = static_cast<std::int64_t>(m);
  if constexpr (kHasSlotTable<Topology>) {
    if (exec == Exec::Parallel) {
      const std::int64_t groups = (n + kLanes - 1) / kLanes;
#pragma omp parallel for schedule(static)
      for (std::int64_t g = 0; g < groups; ++g) {
        const std::uint64_t first = static_cast<std::uint64_t>(g) * kLanes;
        const int lanes = static_cast<int>(std::min<std::uint64_t>(kLanes, m - first));
        CompiledTopology::State end[kLanes];
        walk_lanes(topo, first, lanes, steps, rng, lazy, end);
        for (int l = 0; l < lanes; ++l) out[first + static_cast<std::uint64_t>(l)] = topo.address(end[l]);
      }
      return out;
    }
  }
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t j = 0; j < n; ++j) {
      out[static_cast<std::size_t>(j)] = topo.address(walk(topo, steps, rng.substream(static_cast<std::uint64_t>(j)), lazy));
    }
  } else {
    for (std::int64_t j = 0; j < n; ++j) {
      out[static_cast<std::size_t>(j)] = topo.address(walk(topo, steps, rng.substream(static_cast<std::uint64_t>(j)), lazy));
    }
  }
  return out;
}

template <class Topology>
std::uint64_t count_root_hits(const Topology& topo, std::uint64_t m, std::uint64_t steps, const RandomStream& rng,
                              bool lazy, Exec exec) {
  const auto n = static_cast<std::int64_t>(m);
  std::uint64_t hits = 0;
  if constexpr (kHasSlotTable<Topology>) {
    if (exec == Exec::Parallel) {
      const std::int64_t groups = (n + kLanes - 1) / kLanes;
#pragma omp parallel for schedule(static) reduction(+ : hits)
      for (std::int64_t g = 0; g < groups; ++g) {
        const std::uint64_t first = static_cast<std::uint64_t>(g) * kLanes;
        const int lanes = static_cast<int>(std::min<std::uint64_t>(kLanes, m - first));
        CompiledTopology::State end[kLanes];
        walk_lanes(topo, first, lanes, steps, rng, lazy, end);
        for (int l = 0; l < lanes; ++l) hits += topo.is_root(end[l]) ? 1 : 0;
      }
      return hits;
    }
  }
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static) reduction(+ : hits)
    for (std::int64_t j = 0; j < n; ++j) {
      hits += topo.is_root(walk(topo, steps, rng.substream(static_cast<std::uint64_t>(j)), lazy)) ? 1 : 0;
    }
  } else {
    for (std::int64_t j = 0; j < n; ++j) {
      hits += topo.is_root(walk(topo, steps, rng.substream(static_cast<std::uint64_t>(j)), lazy)) ? 1 : 0;
    }
  }
  return hits;
}

template std::vector<NodeAddr> sample_restarts(const SuccinctTopology&, std::uint64_t, std::uint64_t,
                                               const RandomStream&, bool, Exec);
template std::vector<NodeAddr> sample_restarts(const CompiledTopology&, std::uint64_t, std::uint64_t,
                                               const RandomStream&, bool, Exec);
template std::uint64_t count_root_hits(const SuccinctTopology&, std::uint64_t, std::uint64_t, const RandomStream&,
                                       bool, Exec);
template std::uint64_t count_root_hits(const CompiledTopology&, std::uint64_t, std::uint64_t, const RandomStream&,
                                       bool, Exec);

std::vector<NodeAddr> sample_stationary(const SuccinctTree& tree, std::uint64_t m, const ChainParams& params,
                                        const RandomStream& rng, Exec exec) {
  params.validate();
  if (m < 1) throw InvalidArgument("m must be >= 1");
  const std::uint64_t steps = burn_in_steps(tree.level_budget(), params.tv_epsilon, params.burn_in_constant);
  return sample_restarts(SuccinctTopology(tree), m, steps, rng, params.lazy, exec);
}

}  // namespace treewalk
