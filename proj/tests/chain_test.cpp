#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"
#include "treewalk/chain.hpp"
#include "treewalk/errors.hpp"

namespace treewalk {
namespace {

using testing::random_grown_tree;
using testing::succinct_view;

NodeAddr A(const char* s) { return NodeAddr::from_string(s); }

struct FixedBits {
  unsigned value;
  unsigned bits(int) { return value; }
};

Rational prob_of(const LocalKernel& k, NodeAddr target) {
  for (const auto& m : k.moves)
    if (m.target == target) return m.probability;
  return 0;
}

TEST(LocalKernel, InternalNodeNonLazy) {
  const LocalKernel k = local_kernel(full_tree(2), A("0"), false);
  EXPECT_EQ(prob_of(k, A("")), Rational(1, 2));
  EXPECT_EQ(prob_of(k, A("00")), Rational(1, 4));
  EXPECT_EQ(prob_of(k, A("01")), Rational(1, 4));
  EXPECT_EQ(prob_of(k, A("0")), 0);
}

TEST(LocalKernel, RootNonLazy) {
  const LocalKernel k = local_kernel(full_tree(2), A(""), false);
  EXPECT_EQ(k.moves.size(), 3u);
  EXPECT_EQ(prob_of(k, A("")), Rational(1, 2));
  EXPECT_EQ(prob_of(k, A("0")), Rational(1, 4));
  EXPECT_EQ(prob_of(k, A("1")), Rational(1, 4));
}

TEST(LocalKernel, LeafLazy) {
  const LocalKernel k = local_kernel(full_tree(2), A("10"), true);
  EXPECT_EQ(k.moves.size(), 2u);
  EXPECT_EQ(prob_of(k, A("1")), Rational(1, 4));
  EXPECT_EQ(prob_of(k, A("10")), Rational(3, 4));
}

TEST(LocalKernel, RejectsNonMember) {
  EXPECT_THROW(local_kernel(leftmost_path(3), A("1"), true), DomainError);
}

TEST(LocalKernel, RowsSumToOneAndLazySelfAtLeastHalf) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ExplicitTree e = random_grown_tree(seed, 6, 5 + seed * 3);
    const SuccinctTree t = succinct_view(e, "grown");
    for (const auto& a : e.nodes()) {
      for (bool lazy : {true, false}) {
        const LocalKernel k = local_kernel(t, a, lazy);
        Rational total = 0;
        for (const auto& m : k.moves) {
          EXPECT_GE(m.probability, 0);
          EXPECT_TRUE(m.target == a || m.target.parent() == a || a.parent() == m.target);
          EXPECT_TRUE(e.contains(m.target));
          total += m.probability;
        }
        EXPECT_EQ(total, 1);
        if (lazy) {
          EXPECT_GE(k.moves.front().probability, Rational(1, 2));
        }
      }
    }
  }
}

TEST(SlotEncoding, ReproducesKernel) {
  // Each slot has probability 1/8 (lazy) or 1/4; summing per target must
  // give the local kernel exactly.
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ExplicitTree e = random_grown_tree(seed, 5, 12);
    const SuccinctTree t = succinct_view(e, "grown");
    SuccinctTopology topo(t);
    for (const auto& a : e.nodes()) {
      for (bool lazy : {true, false}) {
        const unsigned slots = 1u << slot_bits(lazy);
        std::map<NodeAddr, Rational> law;
        for (unsigned s = 0; s < slots; ++s) {
          FixedBits bits{s};
          law[step_on(topo, a, lazy, bits)] += Rational(1, slots);
        }
        const LocalKernel k = local_kernel(t, a, lazy);
        for (const auto& m : k.moves) EXPECT_EQ(law[m.target], m.probability);
      }
    }
  }
}

TEST(Step, RootOnlyAlwaysStays) {
  RandomStream rng(1, 0);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(step(root_only(4), A(""), true, rng), A(""));
    EXPECT_EQ(step(root_only(4), A(""), false, rng), A(""));
  }
}

TEST(Step, ForcedEighthBranchGoesLeft) {
  const SuccinctTree t = full_tree(1);
  SuccinctTopology topo(t);
  FixedBits left{6};
  EXPECT_EQ(step_on(topo, A(""), true, left), A("0"));
  FixedBits right{7};
  EXPECT_EQ(step_on(topo, A(""), true, right), A("1"));
  FixedBits stay{4};  // parent slot at the root is a self-loop
  EXPECT_EQ(step_on(topo, A(""), true, stay), A(""));
}

TEST(Step, ReproducibleAndMovesAtMostOneLevel) {
  const SuccinctTree t = hash_random_tree(8, 10, 0.8);
  RandomStream a(42, 7), b(42, 7);
  NodeAddr sa = A(""), sb = A("");
  for (int i = 0; i < 5000; ++i) {
    const NodeAddr na = step(t, sa, true, a);
    EXPECT_LE(std::abs(na.depth() - sa.depth()), 1);
    EXPECT_TRUE(t.contains(na));
    sa = na;
    sb = step(t, sb, true, b);
    EXPECT_EQ(sa, sb);
  }
}

TEST(BurnIn, Examples) {
  EXPECT_EQ(burn_in_steps(4, 0.01, 1), 2486u);
  EXPECT_EQ(burn_in_steps(0, 0.5, 1), 12u);
  for (int n : {0, 3, 7, 20}) {
    const double base = 16.0 * (n + 1) * (n + 1) * (std::log(n + 1.0) + std::log(100.0));
    EXPECT_EQ(burn_in_steps(n, 0.01, 1), static_cast<std::uint64_t>(std::ceil(base)));
    EXPECT_EQ(burn_in_steps(n, 0.01, 2), static_cast<std::uint64_t>(std::ceil(2 * base)));
  }
  EXPECT_THROW(burn_in_steps(3, 0.0, 1), InvalidArgument);
  EXPECT_THROW(burn_in_steps(3, 1.0, 1), InvalidArgument);
  EXPECT_THROW(burn_in_steps(3, 0.1, 0), InvalidArgument);
  EXPECT_THROW(burn_in_steps(-1, 0.1, 1), InvalidArgument);
}

TEST(ChainParams, Validate) {
  EXPECT_NO_THROW(ChainParams{}.validate());
  EXPECT_THROW((ChainParams{true, -1.0, 0.1}.validate()), InvalidArgument);
  EXPECT_THROW((ChainParams{true, 2.0, 1.5}.validate()), InvalidArgument);
}

TEST(RunChain, ZeroStepsIsRoot) {
  RandomStream rng(3, 0);
  EXPECT_EQ(run_chain(full_tree(5), 0, rng), A(""));
  EXPECT_EQ(run_chain(root_only(5), 1000, rng), A(""));
}

TEST(RunChain, TraceSeesEveryState) {
  RandomStream rng(3, 0), replay(3, 0);
  std::vector<NodeAddr> trace;
  const NodeAddr end = run_chain(full_tree(4), 50, rng, true, [&](NodeAddr a) { trace.push_back(a); });
  ASSERT_EQ(trace.size(), 51u);
  EXPECT_EQ(trace.front(), A(""));
  EXPECT_EQ(trace.back(), end);
  NodeAddr s = A("");
  for (std::size_t i = 1; i < trace.size(); ++i) {
    s = step(full_tree(4), s, true, replay);
    EXPECT_EQ(trace[i], s);
  }
}

TEST(SampleStationary, OneSampleIsRunChain) {
  const SuccinctTree t = hash_random_tree(2, 6, 0.8);
  const RandomStream rng(11, 4);
  const ChainParams params{true, 2.0, 0.05};
  const auto s = sample_stationary(t, 1, params, rng, Exec::Serial);
  RandomStream restart = rng.substream(0);
  EXPECT_EQ(s.at(0), run_chain(t, burn_in_steps(6, 0.05, 2.0), restart));
}

TEST(SampleStationary, RootOnly) {
  const auto s = sample_stationary(root_only(3), 25, ChainParams{}, RandomStream(1, 1));
  EXPECT_EQ(s, std::vector<NodeAddr>(25, A("")));
}

TEST(Restarts, SerialParallelAndTopologiesAgree) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const SuccinctTree t = hash_random_tree(seed + 20, 7, 0.8);
    const ExplicitTree e = enumerate(t, 1000);
    const SuccinctTopology st(t);
    const CompiledTopology ct(e);
    const RandomStream rng(seed, 9);
    for (bool lazy : {true, false}) {
      for (std::uint64_t m : {1u, 7u, 8u, 19u}) {
        const auto ref = sample_restarts(st, m, 333, rng, lazy, Exec::Serial);
        EXPECT_EQ(sample_restarts(st, m, 333, rng, lazy, Exec::Parallel), ref);
        EXPECT_EQ(sample_restarts(ct, m, 333, rng, lazy, Exec::Serial), ref);
        EXPECT_EQ(sample_restarts(ct, m, 333, rng, lazy, Exec::Parallel), ref);
        std::uint64_t hits = 0;
        for (const auto& a : ref) hits += a.is_root();
        EXPECT_EQ(count_root_hits(st, m, 333, rng, lazy, Exec::Serial), hits);
        EXPECT_EQ(count_root_hits(ct, m, 333, rng, lazy, Exec::Parallel), hits);
      }
    }
  }
}

TEST(Restarts, EachRestartUsesItsOwnSubstream) {
  const SuccinctTree t = full_tree(5);
  const SuccinctTopology topo(t);
  const RandomStream rng(77, 2);
  const auto all = sample_restarts(topo, 10, 200, rng, true, Exec::Parallel);
  for (std::uint64_t j = 0; j < 10; ++j) {
    RandomStream r = rng.substream(j);
    EXPECT_EQ(all[j], run_chain(t, 200, r));
  }
}

TEST(SampleStationary, FullTreeRootFrequency) {
  const int n = 6;
  const ExplicitTree e = enumerate(full_tree(n), 1000);
  const CompiledTopology topo(e);
  const std::uint64_t m = 100000;
  const std::uint64_t hits = count_root_hits(topo, m, burn_in_steps(n, 0.01, 2), RandomStream(5, 0), true,
                                             Exec::Parallel);
  EXPECT_NEAR(static_cast<double>(hits) / m, 1.0 / (n + 1), 0.02);
}

TEST(SampleStationary, FullTreeDepthHistogramIsFlat) {
  const int n = 4;
  const ExplicitTree e = enumerate(full_tree(n), 1000);
  const CompiledTopology topo(e);
  const std::uint64_t m = 100000;
  const auto samples = sample_restarts(topo, m, burn_in_steps(n, 0.01, 2), RandomStream(6, 0), true, Exec::Parallel);
  std::vector<double> hist(n + 1);
  for (const auto& a : samples) hist[static_cast<std::size_t>(a.depth())] += 1.0 / m;
  for (double h : hist) EXPECT_NEAR(h, 1.0 / (n + 1), 0.02);
}

TEST(RandomStream, Reproducible) {
  RandomStream a(9, 1), b(9, 1), c(9, 2);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    EXPECT_EQ(x, b());
    differs |= x != c();
  }
  EXPECT_TRUE(differs);
  RandomStream s1 = RandomStream(9, 1).substream(3), s2 = RandomStream(9, 1).substream(3);
  EXPECT_EQ(s1(), s2());
  for (int i = 0; i < 1000; ++i) EXPECT_LT(a.below(7), 7u);
}

TEST(RandomStream, SubstreamsLookIndependent) {
  // Correlation of uniforms across neighbouring substreams.
  const RandomStream base(123, 0);
  const int k = 20000;
  RandomStream x = base.substream(0), y = base.substream(1);
  double sx = 0, sy = 0, sxy = 0, sxx = 0, syy = 0;
  for (int i = 0; i < k; ++i) {
    const double u = x.uniform01(), v = y.uniform01();
    sx += u; sy += v; sxy += u * v; sxx += u * u; syy += v * v;
  }
  const double cov = sxy / k - (sx / k) * (sy / k);
  const double corr = cov / std::sqrt((sxx / k - sx * sx / k / k) * (syy / k - sy * sy / k / k));
  EXPECT_LT(std::abs(corr), 0.04);
  EXPECT_NEAR(sx / k, 0.5, 0.01);
}

}  // namespace
}  // namespace treewalk
